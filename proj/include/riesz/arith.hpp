#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "riesz/endpoint.hpp"

namespace riesz {

inline constexpr std::int64_t kDefaultSieveBudget = 200'000'000;
inline constexpr std::int64_t kDefaultRelationBudget = 20'000'000;

/// Primes <= limit in ascending order. Throws ResourceLimit above `budget`.
std::vector<std::int64_t> primes_up_to(std::int64_t limit, std::int64_t budget = kDefaultSieveBudget);

bool is_prime(std::int64_t n);

struct PrimeSearchResult {
  std::int64_t N = 0;
  /// Number of primes examined, including N itself.
  std::int64_t candidates_scanned = 0;
  /// {N a_1}, ..., {N a_L}, {N b_L}, ..., {N b_1}; strictly increasing.
  std::vector<Endpoint> ordering_witness;
};

/// Options controlling the prime scan.
struct PrimeSearchOptions {
  /// Return the k-th passing prime (1 = smallest).
  int occurrence = 1;
  /// Coefficient bound of the relation probe run before scanning; 0 disables it.
  long relation_max_coeff = 10;
};

/// Smallest prime N <= prime_limit with the strict chain
///   0 < {N a_1} < ... < {N a_L} < {N b_L} < ... < {N b_1} < 1,
/// grid separation of the endpoints at N, and 2L+1 <= N.
PrimeSearchResult find_ordering_prime(const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                      std::int64_t prime_limit, const PrimeSearchOptions& options = {});

/// Checks the chain and separation at a given N; returns the witness when they hold.
std::optional<std::vector<Endpoint>> ordering_witness(std::int64_t N, const std::vector<Endpoint>& a,
                                                      const std::vector<Endpoint>& b);

/// Validates 0 < a_1 < b_1 < ... < a_L < b_L < 1 (InvalidInput otherwise).
void check_interval_endpoints(const std::vector<Endpoint>& a, const std::vector<Endpoint>& b);

/// Search for integers (q, q_1, ..., q_m), not all zero, |q_i| <= max_coeff, with
/// q + sum q_i v_i = 0 at working precision. The returned relation minimises the
/// max-norm, then is lexicographically smallest over (q_1..q_m); its first nonzero
/// q_i is positive.
std::optional<std::vector<long>> rational_relation_probe(const std::vector<BigFloat>& values, long max_coeff,
                                                         std::int64_t budget = kDefaultRelationBudget);

/// Largest coefficient bound <= cap whose search box fits the budget for m values.
long relation_coeff_within_budget(std::size_t m, long cap, std::int64_t budget = kDefaultRelationBudget);

/// Box-counting star discrepancy of ({p a_1}, ..., {p a_d}) over primes p <= prime_limit,
/// taken over anchored boxes [0, i_1/B) x ... x [0, i_d/B), 1 <= i_k <= B.
double weyl_discrepancy(const std::vector<Endpoint>& a, std::int64_t prime_limit, int boxes);

/// Fraction of primes p <= prime_limit with lo <= {p a} < hi.
double prime_fraction_in(const Endpoint& a, std::int64_t prime_limit, double lo, double hi);

}  // namespace riesz
