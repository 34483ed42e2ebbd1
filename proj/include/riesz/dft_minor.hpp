#pragma once

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace riesz {

/// Square minor of the N x N character matrix [exp(-2 pi i j k / N)].
struct MinorSpec {
  std::int64_t N = 1;
  std::vector<std::int64_t> rows;
  std::vector<std::int64_t> cols;

  friend bool operator==(const MinorSpec&, const MinorSpec&) = default;
};

/// Throws InvalidInput unless rows/cols are strictly increasing in 0..N-1 with equal length >= 1.
void validate(const MinorSpec& spec);

template <class Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// exp(-2 pi i m / N) with m reduced mod N before evaluation.
template <class Scalar>
std::complex<Scalar> root_of_unity(std::int64_t m, std::int64_t N) {
  std::int64_t r = m % N;
  if (r < 0) r += N;
  const Scalar angle = -2 * std::numbers::pi_v<Scalar> * static_cast<Scalar>(r) / static_cast<Scalar>(N);
  return std::polar(Scalar(1), angle);
}

template <class Scalar = double>
ComplexMatrix<Scalar> minor_matrix(const MinorSpec& spec) {
  validate(spec);
  const auto n = static_cast<Eigen::Index>(spec.rows.size());
  ComplexMatrix<Scalar> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      // j*k mod N is formed exactly in integers.
      const std::int64_t jk = (spec.rows[static_cast<std::size_t>(i)] % spec.N) *
                              (spec.cols[static_cast<std::size_t>(j)] % spec.N) % spec.N;
      m(i, j) = root_of_unity<Scalar>(jk, spec.N);
    }
  }
  return m;
}

double min_singular(const MinorSpec& spec);

struct ChebotarevReport {
  MinorSpec worst_spec;
  double worst_sigma = 0.0;
  std::int64_t specs_checked = 0;
};

inline constexpr std::int64_t kDefaultMinorBudget = 1'000'000;

/// Minimal singular value over every square minor of size <= max_size.
/// Ties keep the first spec in (size, rows, cols) lexicographic order.
ChebotarevReport chebotarev_check(std::int64_t N, std::int64_t max_size,
                                  std::int64_t budget = kDefaultMinorBudget);

/// min over fiber sets F of sigma_min(rows = first |F| shifts, cols = F)^2.
double c_prime_bound(std::int64_t N, const std::vector<std::int64_t>& shifts,
                     const std::vector<std::vector<std::int64_t>>& fiber_sets);

}  // namespace riesz
