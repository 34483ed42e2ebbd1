#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "riesz/error.hpp"
#include "riesz/verify.hpp"

namespace riesz {

namespace {

// Phase d * scale * x mod 1 for d = 0, 1, 2, ...; exact in the rational part.
class PhaseSequence {
 public:
  PhaseSequence(const Endpoint& x, const mpq_class& scale) {
    const mpq_class r = x.rational_part() * scale;
    num_ = r.get_num();
    den_ = r.get_den();
    if (x.irrational_part()) {
      irrational_ = *x.irrational_part() * scale;
      mpfr_set_prec(work_.get(), irrational_->precision());
    }
  }

  double at(std::int64_t d) {
    mpz_mul_si(tmp_.get_mpz_t(), num_.get_mpz_t(), static_cast<long>(d));
    mpz_fdiv_r(tmp_.get_mpz_t(), tmp_.get_mpz_t(), den_.get_mpz_t());
    double phase = mpq_class(tmp_, den_).get_d();
    if (irrational_) {
      mpfr_mul_si(work_.get(), irrational_->get(), static_cast<long>(d), MPFR_RNDN);
      mpfr_frac(work_.get(), work_.get(), MPFR_RNDN);
      phase += mpfr_get_d(work_.get(), MPFR_RNDN);
    }
    return frac(phase);
  }

 private:
  mpz_class num_;
  mpz_class den_;
  mpz_class tmp_;
  std::optional<BigFloat> irrational_;
  BigFloat work_{64};
};

template <class Scalar>
std::complex<Scalar> unit_phasor(double phase) {
  const Scalar angle = 2 * std::numbers::pi_v<Scalar> * static_cast<Scalar>(phase);
  return {std::cos(angle), std::sin(angle)};
}

template <class Scalar>
void apply_table(const std::vector<std::int64_t>& k, const std::vector<std::complex<Scalar>>& g,
                 const Eigen::VectorXcd& v, Eigen::VectorXcd& out) {
  const auto n = static_cast<Eigen::Index>(k.size());
  out.setZero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const std::int64_t d = k[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(j)];
      const std::complex<double> gij = d >= 0 ? g[static_cast<std::size_t>(d)] : std::conj(g[static_cast<std::size_t>(-d)]);
      acc += gij * v(j);
    }
    out(i) = acc;
  }
}

}  // namespace

template <class Scalar>
std::vector<std::complex<Scalar>> indicator_transform_table(const IntervalSet& S, const mpq_class& scale,
                                                            std::int64_t D) {
  std::vector<std::complex<Scalar>> table(static_cast<std::size_t>(D + 1));
  table[0] = static_cast<Scalar>(S.measure().to_double());
  std::vector<PhaseSequence> left;
  std::vector<PhaseSequence> right;
  for (const auto& iv : S) {
    left.emplace_back(iv.left, scale);
    right.emplace_back(iv.right, scale);
  }
  const Scalar step = 2 * std::numbers::pi_v<Scalar> * static_cast<Scalar>(scale.get_d());
  for (std::int64_t d = 1; d <= D; ++d) {
    std::complex<Scalar> acc = 0;
    for (std::size_t l = 0; l < left.size(); ++l) {
      acc += unit_phasor<Scalar>(right[l].at(d)) - unit_phasor<Scalar>(left[l].at(d));
    }
    // Divide by 2 pi i x with x = scale * d.
    table[static_cast<std::size_t>(d)] = acc / std::complex<Scalar>(0, step * static_cast<Scalar>(d));
  }
  return table;
}

template <class Scalar>
ComplexMatrix<Scalar> gram_matrix(const FrequencyList& freqs, const IntervalSet& S) {
  const auto& k = freqs.indices;
  if (k.empty()) throw Error(ErrorKind::EmptyWindow, "no frequencies in the window");
  const std::int64_t D = k.back() - k.front();
  const auto g = indicator_transform_table<Scalar>(S, freqs.scale, D);
  const auto n = static_cast<Eigen::Index>(k.size());
  ComplexMatrix<Scalar> G(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) {
      const auto d = static_cast<std::size_t>(k[static_cast<std::size_t>(i)] - k[static_cast<std::size_t>(j)]);
      G(i, j) = g[d];
      G(j, i) = std::conj(g[d]);
    }
  }
  return G;
}

template <class Scalar>
ComplexMatrix<Scalar> gram_matrix(const Spectrum& spectrum, const IntervalSet& S, const mpq_class& T) {
  return gram_matrix<Scalar>(spectrum.enumerate(T), S);
}

template std::vector<std::complex<double>> indicator_transform_table<double>(const IntervalSet&, const mpq_class&,
                                                                             std::int64_t);
template std::vector<std::complex<long double>> indicator_transform_table<long double>(const IntervalSet&,
                                                                                       const mpq_class&, std::int64_t);
template ComplexMatrix<double> gram_matrix<double>(const FrequencyList&, const IntervalSet&);
template ComplexMatrix<long double> gram_matrix<long double>(const FrequencyList&, const IntervalSet&);
template ComplexMatrix<double> gram_matrix<double>(const Spectrum&, const IntervalSet&, const mpq_class&);
template ComplexMatrix<long double> gram_matrix<long double>(const Spectrum&, const IntervalSet&, const mpq_class&);

Extremes gram_extremes(const FrequencyList& freqs, const IntervalSet& S, Eigen::Index dense_limit) {
  const auto n = static_cast<Eigen::Index>(freqs.size());
  if (n == 0) throw Error(ErrorKind::EmptyWindow, "no frequencies in the window");
  if (n <= dense_limit) {
    const Eigen::MatrixXcd G = gram_matrix<double>(freqs, S);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(G, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::ResourceLimit, "dense eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev(0), ev(n - 1), "dense"};
  }
  const auto g = indicator_transform_table<double>(S, freqs.scale, freqs.indices.back() - freqs.indices.front());
  return lanczos_extremes(n, [&](const Eigen::VectorXcd& v, Eigen::VectorXcd& out) {
    apply_table(freqs.indices, g, v, out);
  });
}

Extremes lanczos_extremes(Eigen::Index n, const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
                          double tol, Eigen::Index max_iter) {
  if (max_iter <= 0) max_iter = n;
  max_iter = std::min(max_iter, n);
  Eigen::MatrixXcd V(n, max_iter + 1);
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 1.0 + 0.5 * std::sin(static_cast<double>(i) + 1.0);
  V.col(0) = v.normalized();
  Eigen::VectorXcd w(n);
  Extremes result{0.0, 0.0, "lanczos"};
  for (Eigen::Index m = 0; m < max_iter; ++m) {
    apply(V.col(m), w);
    alpha.push_back(V.col(m).dot(w).real());
    // Full reorthogonalisation (twice is enough).
    for (int pass = 0; pass < 2; ++pass) {
      const Eigen::VectorXcd coeff = V.leftCols(m + 1).adjoint() * w;
      w -= V.leftCols(m + 1) * coeff;
    }
    const double b = w.norm();
    const Eigen::Index size = m + 1;
    const bool check = size % 10 == 0 || size == max_iter || b < 1e-300;
    if (check) {
      Eigen::MatrixXd T = Eigen::MatrixXd::Zero(size, size);
      for (Eigen::Index i = 0; i < size; ++i) {
        T(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < size) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T);
      const auto& theta = solver.eigenvalues();
      const auto& S = solver.eigenvectors();
      result.lower = theta(0);
      result.upper = theta(size - 1);
      const double r_low = std::fabs(b * S(size - 1, 0));
      const double r_high = std::fabs(b * S(size - 1, size - 1));
      const double scale = std::max(std::fabs(result.upper), 1e-300);
      if ((r_low <= tol * scale && r_high <= tol * scale) || b < 1e-300 || size == max_iter) return result;
    }
    beta.push_back(b);
    V.col(m + 1) = w / b;
  }
  return result;
}

}  // namespace riesz
