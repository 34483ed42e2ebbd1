#include "riesz/dft_minor.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <Eigen/SVD>

#include "riesz/arith.hpp"
#include "riesz/error.hpp"

namespace riesz {

namespace {

bool strictly_increasing_in_range(const std::vector<std::int64_t>& v, std::int64_t N) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 0 || v[i] >= N) return false;
    if (i > 0 && v[i - 1] >= v[i]) return false;
  }
  return true;
}

double binomial(std::int64_t n, std::int64_t k) {
  double out = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return out;
}

// Calls f on each k-subset of {0..N-1} in lexicographic order.
template <class F>
void for_each_subset(std::int64_t N, std::int64_t k, F&& f) {
  std::vector<std::int64_t> idx(static_cast<std::size_t>(k));
  for (std::int64_t i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    f(idx);
    std::int64_t i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == N - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (std::int64_t j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

void validate(const MinorSpec& spec) {
  if (spec.N < 1) throw Error(ErrorKind::InvalidInput, "minor dimension N must be positive");
  if (spec.rows.empty() || spec.rows.size() != spec.cols.size()) {
    throw Error(ErrorKind::InvalidInput, "minor needs equally many rows and cols (at least one)");
  }
  if (!strictly_increasing_in_range(spec.rows, spec.N) || !strictly_increasing_in_range(spec.cols, spec.N)) {
    throw Error(ErrorKind::InvalidInput, "minor rows/cols must be strictly increasing in 0..N-1");
  }
}

double min_singular(const MinorSpec& spec) {
  const auto m = minor_matrix<double>(spec);
  Eigen::JacobiSVD<ComplexMatrix<double>> svd(m);
  return svd.singularValues().minCoeff();
}

ChebotarevReport chebotarev_check(std::int64_t N, std::int64_t max_size, std::int64_t budget) {
  if (!is_prime(N)) throw Error(ErrorKind::NotPrime, std::to_string(N) + " is not prime");
  if (max_size < 1 || max_size > N) throw Error(ErrorKind::InvalidInput, "max_size must lie in 1..N");
  double count = 0.0;
  for (std::int64_t n = 1; n <= max_size; ++n) count += binomial(N, n) * binomial(N, n);
  if (count > static_cast<double>(budget)) {
    throw Error(ErrorKind::ResourceLimit, "minor enumeration of " + std::to_string(static_cast<long long>(count)) +
                                              " specs exceeds budget " + std::to_string(budget));
  }
  ChebotarevReport report;
  report.worst_sigma = std::numeric_limits<double>::infinity();
  MinorSpec spec{N, {}, {}};
  for (std::int64_t n = 1; n <= max_size; ++n) {
    for_each_subset(N, n, [&](const std::vector<std::int64_t>& rows) {
      for_each_subset(N, n, [&](const std::vector<std::int64_t>& cols) {
        spec.rows = rows;
        spec.cols = cols;
        const double sigma = min_singular(spec);
        ++report.specs_checked;
        if (sigma < report.worst_sigma) {
          report.worst_sigma = sigma;
          report.worst_spec = spec;
        }
      });
    });
  }
  return report;
}

double c_prime_bound(std::int64_t N, const std::vector<std::int64_t>& shifts,
                     const std::vector<std::vector<std::int64_t>>& fiber_sets) {
  if (!is_prime(N)) throw Error(ErrorKind::NotPrime, std::to_string(N) + " is not prime");
  std::set<std::int64_t> distinct;
  for (std::int64_t s : shifts) distinct.insert(((s % N) + N) % N);
  if (distinct.size() != shifts.size()) throw Error(ErrorKind::InvalidInput, "shifts must be distinct mod N");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& fiber : fiber_sets) {
    if (fiber.empty()) continue;
    if (fiber.size() > shifts.size()) {
      throw Error(ErrorKind::InvalidInput, "fiber set larger than the shift list");
    }
    MinorSpec spec{N, {}, {}};
    for (std::size_t i = 0; i < fiber.size(); ++i) spec.rows.push_back(((shifts[i] % N) + N) % N);
    std::sort(spec.rows.begin(), spec.rows.end());
    for (std::int64_t k : fiber) spec.cols.push_back(((k % N) + N) % N);
    std::sort(spec.cols.begin(), spec.cols.end());
    const double sigma = min_singular(spec);
    best = std::min(best, sigma * sigma);
  }
  if (!std::isfinite(best)) throw Error(ErrorKind::InvalidInput, "no nonempty fiber set supplied");
  return best;
}

}  // namespace riesz
