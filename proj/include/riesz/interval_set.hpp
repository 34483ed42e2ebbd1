#pragma once

#include <cstdint>
#include <vector>

#include "riesz/endpoint.hpp"

namespace riesz {

/// Half-open interval [left, right).
struct Interval {
  Endpoint left;
  Endpoint right;

  Endpoint length() const { return right - left; }
};

/// Finite disjoint union of half-open intervals, kept sorted with adjacent
/// pieces merged. Empty intervals ([x, x)) are dropped on construction.
class IntervalSet {
 public:
  IntervalSet() = default;
  /// Accepts overlapping or unsorted input; throws InvalidInput if left > right.
  explicit IntervalSet(std::vector<Interval> intervals);
  static IntervalSet single(Endpoint left, Endpoint right);

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }
  auto begin() const { return intervals_.begin(); }
  auto end() const { return intervals_.end(); }

  Endpoint measure() const;
  bool contains(const Endpoint& x) const;
  bool subset_of(const IntervalSet& other) const;

  IntervalSet translated(const mpq_class& shift) const;
  /// Multiplies every endpoint by a positive rational.
  IntervalSet scaled(const mpq_class& factor) const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b);

 private:
  std::vector<Interval> intervals_;
};

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b);
IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b);

/// One piece of a step function on [0, 1/N).
struct CountPiece {
  Interval piece;
  int count = 0;
};

/// Same, but also records the hit offsets k with t + k/N in S.
struct FiberPiece {
  Interval piece;
  std::vector<std::int64_t> offsets;
};

/// t -> #{k in 0..N-1 : t + k/N in S} as an ordered partition of [0, 1/N).
std::vector<CountPiece> fold_counts(std::int64_t N, const IntervalSet& S);
std::vector<FiberPiece> fold_fibers(std::int64_t N, const IntervalSet& S);

/// {t in [0,1/N) : count >= n}, n in 1..N.
IntervalSet a_geq(std::int64_t N, const IntervalSet& S, std::int64_t n);
/// {t in [0,1/N) : count == n}, n in 0..N.
IntervalSet a_exact(std::int64_t N, const IntervalSet& S, std::int64_t n);
/// Points of S whose fiber has exactly n hits, n in 1..N.
IntervalSet b_exact(std::int64_t N, const IntervalSet& S, std::int64_t n);

/// True iff every open gap between consecutive members of {0, endpoints..., 1}
/// contains some k/N (k = 1..N-1) as an interior point.
bool grid_separation_ok(std::int64_t N, const std::vector<Endpoint>& endpoints);

}  // namespace riesz
