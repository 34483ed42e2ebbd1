#include "riesz/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "riesz/error.hpp"

namespace riesz {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t checked_int64(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::ResourceLimit, std::string(what) + " exceeds 64-bit range");
  return z.get_si();
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(ErrorKind::ResourceLimit, "spectrum modulus overflow");
  return out;
}

// round(n / beta + 1/2) floor, evaluated exactly for rational beta and with a
// high-precision fallback near ties otherwise.
class AvdoninRounder {
 public:
  explicit AvdoninRounder(const Endpoint& beta) : beta_(beta) {
    if (beta.is_rational()) {
      p_ = beta.rational_part().get_num();
      q_ = beta.rational_part().get_den();
    } else {
      BigFloat one(1, beta.precision() + 64);
      inverse_ = (one / beta.value()).to_double();
    }
  }

  std::int64_t operator()(std::int64_t n) const {
    if (beta_.is_rational()) {
      mpz_class numerator = 2 * mpz_class(static_cast<long>(n)) * q_ + p_;
      mpz_class denominator = 2 * p_;
      mpz_class r;
      mpz_fdiv_q(r.get_mpz_t(), numerator.get_mpz_t(), denominator.get_mpz_t());
      return checked_int64(r, "Avdonin point");
    }
    const double y = static_cast<double>(n) * inverse_ + 0.5;
    const double r = std::floor(y);
    const double slack = 1e-9 * (1.0 + std::fabs(y));
    if (y - r > slack && r + 1.0 - y > slack) return static_cast<std::int64_t>(r);
    BigFloat exact(static_cast<long>(n), beta_.precision() + 64);
    exact /= beta_.value();
    exact += mpq_class(1, 2);
    return checked_int64(floor(Endpoint(mpq_class(0), exact)), "Avdonin point");
  }

 private:
  Endpoint beta_;
  mpz_class p_;
  mpz_class q_;
  double inverse_ = 0.0;
};

void check_beta(const Endpoint& beta) {
  if (!(Endpoint(0) < beta) || !(beta < Endpoint(1))) {
    throw Error(ErrorKind::InvalidInput, "beta must lie in (0,1), got " + beta.to_string());
  }
}

std::vector<CosetTerm> rescale_terms(const std::vector<CosetTerm>& terms, std::int64_t factor) {
  std::vector<CosetTerm> out = terms;
  for (auto& t : out) {
    t.modulus = checked_mul(t.modulus, factor);
    t.offset = checked_mul(t.offset, factor);
  }
  return out;
}

void append_term_indices(const CosetTerm& t, std::int64_t lo, std::int64_t hi, std::vector<std::int64_t>& out) {
  const std::int64_t first = ceil_div(lo - t.offset, t.modulus);
  const std::int64_t last = floor_div(hi - t.offset, t.modulus);
  if (first > last) return;
  if (std::holds_alternative<AllFilter>(t.filter)) {
    for (std::int64_t r = first; r <= last; ++r) out.push_back(t.modulus * r + t.offset);
    return;
  }
  const auto& f = std::get<AvdoninFilter>(t.filter);
  const AvdoninRounder round(f.beta);
  const std::int64_t r_lo = first - f.phase;
  const std::int64_t r_hi = last - f.phase;
  const double beta = f.beta.to_double();
  // round(n/beta) is strictly increasing in n, and within 1/2 of n/beta.
  auto n = static_cast<std::int64_t>(std::floor(beta * static_cast<double>(r_lo - 1))) - 1;
  while (round(n) >= r_lo) n -= 1 + static_cast<std::int64_t>(beta * 4);
  for (;; ++n) {
    const std::int64_t r = round(n);
    if (r > r_hi) break;
    if (r >= r_lo) out.push_back(t.modulus * (r + f.phase) + t.offset);
  }
}

}  // namespace

Spectrum::Spectrum(mpq_class scale, std::vector<CosetTerm> terms) : scale_(std::move(scale)), terms_(std::move(terms)) {
  scale_.canonicalize();
  if (sgn(scale_) <= 0) throw Error(ErrorKind::InvalidInput, "spectrum scale must be positive");
  for (auto& t : terms_) {
    if (t.modulus < 1) throw Error(ErrorKind::InvalidInput, "coset modulus must be positive");
    const std::int64_t carry = floor_div(t.offset, t.modulus);
    t.offset -= carry * t.modulus;
    if (auto* f = std::get_if<AvdoninFilter>(&t.filter)) {
      check_beta(f->beta);
      f->phase += carry;
    }
  }
  if (scale_.get_num() != 1) {
    const std::int64_t p = checked_int64(scale_.get_num(), "scale numerator");
    terms_ = rescale_terms(terms_, p);
    scale_ = mpq_class(1) / mpq_class(scale_.get_den());
  }
}

Spectrum Spectrum::coset(std::int64_t modulus, std::int64_t offset) {
  return Spectrum(mpq_class(1), {CosetTerm{modulus, offset, AllFilter{}}});
}

std::vector<std::int64_t> Spectrum::indices_between(std::int64_t lo, std::int64_t hi) const {
  std::vector<std::int64_t> out;
  if (lo > hi) return out;
  for (const auto& t : terms_) append_term_indices(t, lo, hi, out);
  std::sort(out.begin(), out.end());
  const auto dup = std::adjacent_find(out.begin(), out.end());
  if (dup != out.end()) {
    throw Error(ErrorKind::OverlappingTerms, "two coset terms share the index " + std::to_string(*dup));
  }
  return out;
}

FrequencyList Spectrum::enumerate(const mpq_class& T) const {
  if (sgn(T) < 0) throw Error(ErrorKind::InvalidInput, "window must be nonnegative");
  const mpq_class bound = T / scale_;
  mpz_class k;
  mpz_fdiv_q(k.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  const std::int64_t K = checked_int64(k, "window");
  return FrequencyList{scale_, indices_between(-K, K)};
}

Endpoint Spectrum::density() const {
  Endpoint total(0);
  const mpq_class inverse_scale = 1 / scale_;
  for (const auto& t : terms_) {
    const mpq_class weight = inverse_scale / mpq_class(t.modulus);
    if (const auto* f = std::get_if<AvdoninFilter>(&t.filter)) {
      total = total + f->beta.scaled(weight);
    } else {
      total = total + Endpoint(weight);
    }
  }
  return total;
}

Spectrum shift(const Spectrum& s, const mpq_class& a) {
  const mpq_class steps = a / s.scale();
  if (steps.get_den() != 1) {
    throw Error(ErrorKind::IncompatibleShift, "shift " + a.get_str() + " is not a multiple of scale " + s.scale().get_str());
  }
  const std::int64_t d = checked_int64(steps.get_num(), "shift");
  std::vector<CosetTerm> terms = s.terms();
  for (auto& t : terms) {
    if (__builtin_add_overflow(t.offset, d, &t.offset)) throw Error(ErrorKind::ResourceLimit, "shift overflow");
  }
  return Spectrum(s.scale(), std::move(terms));
}

Spectrum dilate(const Spectrum& s, const mpq_class& c) {
  if (sgn(c) <= 0) throw Error(ErrorKind::InvalidInput, "dilation factor must be positive");
  return Spectrum(s.scale() * c, s.terms());
}

Spectrum unite(const Spectrum& x, const Spectrum& y) {
  if (x.is_empty()) return y;
  if (y.is_empty()) return x;
  mpz_class common;
  mpz_lcm(common.get_mpz_t(), x.scale().get_den_mpz_t(), y.scale().get_den_mpz_t());
  const auto fx = checked_int64(common / x.scale().get_den(), "scale");
  const auto fy = checked_int64(common / y.scale().get_den(), "scale");
  std::vector<CosetTerm> terms = rescale_terms(x.terms(), fx);
  const auto more = rescale_terms(y.terms(), fy);
  terms.insert(terms.end(), more.begin(), more.end());
  return Spectrum(mpq_class(1) / mpq_class(common), std::move(terms));
}

bool subset_of_multiples(const Spectrum& s, std::int64_t N) {
  if (s.is_empty()) return true;
  if (s.scale() != 1) return false;
  return std::all_of(s.terms().begin(), s.terms().end(),
                     [N](const CosetTerm& t) { return t.modulus % N == 0 && t.offset % N == 0; });
}

std::int64_t avdonin_point(std::int64_t n, const Endpoint& beta) {
  check_beta(beta);
  return AvdoninRounder(beta)(n);
}

Spectrum avdonin_interval_spectrum(const Endpoint& beta, const mpq_class& beta_floor) {
  check_beta(beta);
  if (beta < Endpoint(beta_floor)) {
    throw Error(ErrorKind::DegenerateBeta, "beta " + beta.to_string() + " is below the floor " + beta_floor.get_str());
  }
  return Spectrum(mpq_class(1), {CosetTerm{1, 0, AvdoninFilter{beta, 0}}});
}

Spectrum rational_grid_spectrum(std::int64_t q, const std::vector<std::int64_t>& cells) {
  if (q < 1) throw Error(ErrorKind::InvalidInput, "grid denominator must be positive");
  if (cells.empty()) throw Error(ErrorKind::InvalidInput, "at least one grid cell is required");
  std::set<std::int64_t> seen;
  for (std::int64_t k : cells) {
    if (k < 0 || k >= q || !seen.insert(k).second) {
      throw Error(ErrorKind::InvalidInput, "grid cells must be distinct indices in 0..q-1");
    }
  }
  std::vector<CosetTerm> terms;
  for (std::int64_t n = 1; n <= static_cast<std::int64_t>(cells.size()); ++n) terms.push_back({q, n, AllFilter{}});
  return Spectrum(mpq_class(1), std::move(terms));
}

IntervalGenerator default_interval_generator() {
  return [](const Endpoint& beta) { return avdonin_interval_spectrum(beta); };
}

}  // namespace riesz
