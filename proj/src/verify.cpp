#include "riesz/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include <Eigen/Eigenvalues>

#include "riesz/error.hpp"

namespace riesz {

std::string to_string(TrendStatus status) {
  switch (status) {
    case TrendStatus::Pass: return "PASS";
    case TrendStatus::FailTrend: return "FAIL_TREND";
    case TrendStatus::Inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

TrendStatus classify_trend(const std::vector<BoundsSample>& history, const TrendOptions& options,
                           std::optional<double>& last_drop, std::optional<double>& slope) {
  last_drop.reset();
  slope.reset();
  if (history.empty()) return TrendStatus::Inconclusive;
  const double last = history.back().lower;
  if (history.size() >= 2) {
    const double previous = history[history.size() - 2].lower;
    if (previous > 0.0) last_drop = (previous - last) / previous;
  }
  if (last >= options.pass_floor && last_drop && *last_drop < options.max_drop) return TrendStatus::Pass;
  if (last < options.fail_floor) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& s : history) {
      if (s.lower <= 0.0) continue;
      const double x = std::log(s.T.get_d());
      const double y = std::log(s.lower);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    const double denom = m * sxx - sx * sx;
    if (m >= 2 && denom != 0.0) slope = (m * sxy - sx * sy) / denom;
    return TrendStatus::FailTrend;
  }
  return TrendStatus::Inconclusive;
}

GramReport riesz_bounds_estimate(const Spectrum& spectrum, const IntervalSet& S, const std::vector<mpq_class>& schedule,
                                 const TrendOptions& options) {
  if (schedule.empty()) throw Error(ErrorKind::InvalidInput, "schedule must be nonempty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (sgn(schedule[i]) <= 0 || (i > 0 && schedule[i] <= schedule[i - 1])) {
      throw Error(ErrorKind::InvalidInput, "schedule must be positive and strictly increasing");
    }
  }
  GramReport report;
  for (const auto& T : schedule) {
    const FrequencyList freqs = spectrum.enumerate(T);
    if (freqs.indices.empty()) throw Error(ErrorKind::EmptyWindow, "no frequencies within T=" + T.get_str());
    const Extremes e = gram_extremes(freqs, S, options.dense_limit);
    report.history.push_back({T, static_cast<std::int64_t>(freqs.size()), e.lower, e.upper, e.method});
  }
  const auto& last = report.history.back();
  report.window = last.T;
  report.count = last.count;
  report.lower_est = last.lower;
  report.upper_est = last.upper;
  report.status = classify_trend(report.history, options, report.last_drop, report.decay_slope);
  return report;
}

DensityReport density_check(const Spectrum& spectrum, const IntervalSet& S, const std::vector<mpq_class>& windows,
                            double tolerance) {
  DensityReport report;
  report.tolerance = tolerance;
  report.pass = true;
  const double measure = S.measure().to_double();
  for (const auto& T : windows) {
    DensityRow row;
    row.T = T;
    row.count = static_cast<std::int64_t>(spectrum.enumerate(T).size());
    row.expected = 2.0 * T.get_d() * measure;
    row.residual = static_cast<double>(row.count) - row.expected;
    if (!(std::fabs(row.residual) <= tolerance)) report.pass = false;
    report.rows.push_back(row);
  }
  return report;
}

Eigen::MatrixXcd unitary_dft(std::int64_t N) {
  if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
  Eigen::MatrixXcd F(N, N);
  const double norm = 1.0 / std::sqrt(static_cast<double>(N));
  for (std::int64_t k = 0; k < N; ++k) {
    for (std::int64_t n = 0; n < N; ++n) F(k, n) = norm * std::conj(root_of_unity<double>(n * k % N, N));
  }
  return F;
}

namespace {

std::vector<std::int64_t> checked_subset(const std::vector<std::int64_t>& v, std::int64_t N, const char* name) {
  std::set<std::int64_t> s;
  for (std::int64_t x : v) {
    if (x < 0 || x >= N || !s.insert(x).second) {
      throw Error(ErrorKind::InvalidSubset, std::string(name) + " must hold distinct indices in 0..N-1");
    }
  }
  return {s.begin(), s.end()};
}

std::vector<std::int64_t> complement(const std::vector<std::int64_t>& v, std::int64_t N) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0; i < N; ++i) {
    if (!std::binary_search(v.begin(), v.end(), i)) out.push_back(i);
  }
  return out;
}

Eigen::MatrixXcd submatrix(const Eigen::MatrixXcd& F, const std::vector<std::int64_t>& rows,
                           const std::vector<std::int64_t>& cols) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = F(rows[i], cols[j]);
  }
  return out;
}

double min_eigenvalue(const Eigen::MatrixXcd& H) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

}  // namespace

DualityResult duality_finite_test(std::int64_t N, const std::vector<std::int64_t>& J,
                                  const std::vector<std::int64_t>& M_dim) {
  if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
  const auto j = checked_subset(J, N, "J");
  const auto m = checked_subset(M_dim, N, "M_dim");
  if (m.empty() || static_cast<std::int64_t>(m.size()) == N) {
    throw Error(ErrorKind::InvalidSubset, "M_dim must be a nonempty proper subset");
  }
  const Eigen::MatrixXcd F = unitary_dft(N);
  DualityResult out;
  if (!j.empty()) {
    const Eigen::MatrixXcd A = submatrix(F, m, j);
    out.alpha_frame = min_eigenvalue(A * A.adjoint());
  }
  const auto jc = complement(j, N);
  if (jc.empty()) {
    out.alpha_riesz = 1.0;
  } else {
    const Eigen::MatrixXcd D = submatrix(F, complement(m, N), jc);
    out.alpha_riesz = min_eigenvalue(D.adjoint() * D);
  }
  return out;
}

}  // namespace riesz
