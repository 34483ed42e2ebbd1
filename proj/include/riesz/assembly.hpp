#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "riesz/arith.hpp"
#include "riesz/interval_set.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

/// union over n = 1..N of (levels[n-1] + n - 1 + base_shift). Every level must lie in N*Z.
Spectrum lemma2_combine(std::int64_t N, const std::vector<Spectrum>& levels, int base_shift);

/// union over n = 1..N of (levels[n-1] + j[n-1]) for a permutation j of 1..N, N prime.
Spectrum prime_permuted_combine(std::int64_t N, const std::vector<Spectrum>& levels,
                                const std::vector<std::int64_t>& j);

struct PlanLevel {
  std::int64_t n = 0;
  IntervalSet a_geq;
  /// Level spectrum inside N*Z (unshifted).
  Spectrum lambda;
  /// 1-based interval index this level belongs to.
  std::optional<std::size_t> interval;
};

struct Theorem1Plan {
  std::int64_t N = 0;
  std::vector<Endpoint> a;
  std::vector<Endpoint> b;
  IntervalSet S;
  /// Levels 1..K+L; every higher level is empty.
  std::vector<PlanLevel> levels;
  std::vector<std::int64_t> K_ell;
  std::int64_t K = 0;
  /// beta_l = {N b_l} - {N a_l}.
  std::vector<Endpoint> beta;
  std::vector<Spectrum> lambda_ell;
  std::optional<PrimeSearchResult> search;

  std::size_t L() const { return a.size(); }
  /// Level spectra for n = 1..N, empty beyond K+L.
  std::vector<Spectrum> all_levels() const;
};

struct Theorem1Options {
  PrimeSearchOptions search;
  IntervalGenerator generator = default_interval_generator();
};

/// Hierarchical construction with N chosen by find_ordering_prime.
Theorem1Plan theorem1_construct(const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                std::int64_t prime_limit, const Theorem1Options& options = {});

/// Same construction at a caller-chosen prime N. The level pattern is checked
/// directly; no independence probe is run.
Theorem1Plan theorem1_construct_at(std::int64_t N, const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                   const IntervalGenerator& generator = default_interval_generator());

struct SubsetPlan {
  std::vector<std::size_t> J;
  std::int64_t K_J = 0;
  IntervalSet S_J;
  /// Omega_1..Omega_{K_J+|J|}, unshifted level spectra.
  std::vector<Spectrum> omega;
  /// Shift attached to each Omega_n.
  std::vector<std::int64_t> shifts;
  /// a_geq(N, S_J, n) recomputed for n = 1..K_J+|J|.
  std::vector<IntervalSet> a_sets;
  Spectrum lambda_J;
};

/// Step-2 bookkeeping for a subset J of 1..L, validated against recomputed A-sets.
SubsetPlan subset_spectrum(const Theorem1Plan& plan, const std::vector<std::size_t>& J);

struct ComplementLevel {
  std::int64_t n = 0;
  IntervalSet a_geq;
  /// "full", "arc", "grid" or "hierarchy".
  std::string kind;
  Spectrum lambda;
};

struct ComplementResult {
  std::int64_t N = 0;
  IntervalSet S;
  std::int64_t M = 0;
  std::vector<ComplementLevel> levels;
  Spectrum lambda_prime;
};

/// Extends Z to a spectrum of [0,1) united with [a_l, b_l), 1 <= a_1 < ... < b_L <= N,
/// by frequencies in (1/N)Z \ Z.
ComplementResult theorem2_complement(std::int64_t N, const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                     std::int64_t prime_limit = 1'000'000);

}  // namespace riesz
