#include "riesz/interval_set.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "riesz/error.hpp"

namespace riesz {

namespace {

std::int64_t to_int64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw Error(ErrorKind::ResourceLimit, "integer out of 64-bit range");
  return z.get_si();
}

template <class Op>
IntervalSet combine(const IntervalSet& a, const IntervalSet& b, Op op) {
  struct Event {
    const Endpoint* at;
    int delta_a;
    int delta_b;
  };
  std::vector<Event> events;
  events.reserve(2 * (a.size() + b.size()));
  for (const auto& iv : a) {
    events.push_back({&iv.left, 1, 0});
    events.push_back({&iv.right, -1, 0});
  }
  for (const auto& iv : b) {
    events.push_back({&iv.left, 0, 1});
    events.push_back({&iv.right, 0, -1});
  }
  std::stable_sort(events.begin(), events.end(), [](const Event& x, const Event& y) { return *x.at < *y.at; });

  std::vector<Interval> out;
  std::optional<Endpoint> open;
  int in_a = 0;
  int in_b = 0;
  for (std::size_t i = 0; i < events.size();) {
    const Endpoint& at = *events[i].at;
    std::size_t j = i;
    while (j < events.size() && *events[j].at == at) {
      in_a += events[j].delta_a;
      in_b += events[j].delta_b;
      ++j;
    }
    const bool inside = op(in_a > 0, in_b > 0);
    if (inside && !open) {
      open = at;
    } else if (!inside && open) {
      out.push_back({std::move(*open), at});
      open.reset();
    }
    i = j;
  }
  return IntervalSet(std::move(out));
}

struct FoldEvent {
  Endpoint at;
  std::int64_t offset;
  int delta;
};

// Events on [0,1/N) produced by folding S, plus offsets of cells fully inside S.
void collect_fold_events(std::int64_t N, const IntervalSet& S, std::vector<FoldEvent>& events,
                         std::vector<std::int64_t>& full_cells) {
  if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
  if (!S.empty() && (S.intervals().front().left < Endpoint(0) || S.intervals().back().right > Endpoint(1))) {
    throw Error(ErrorKind::InvalidInput, "set must lie in [0,1)");
  }
  const mpq_class cell(1, N);
  const Endpoint cell_end(cell);
  for (const auto& iv : S) {
    const std::int64_t kl = to_int64(floor(iv.left.scaled(mpq_class(N))));
    const std::int64_t kr = to_int64(floor(iv.right.scaled(mpq_class(N))));
    const mpq_class left_origin(kl, N);
    if (kl == kr) {
      events.push_back({iv.left - left_origin, kl, +1});
      events.push_back({iv.right - left_origin, kl, -1});
      continue;
    }
    events.push_back({iv.left - left_origin, kl, +1});
    events.push_back({cell_end, kl, -1});
    for (std::int64_t k = kl + 1; k < kr; ++k) full_cells.push_back(k);
    if (kr < N) {
      Endpoint tail = iv.right - mpq_class(kr, N);
      if (tail > Endpoint(0)) {
        events.push_back({Endpoint(0), kr, +1});
        events.push_back({std::move(tail), kr, -1});
      }
    }
  }
  std::stable_sort(events.begin(), events.end(), [](const FoldEvent& x, const FoldEvent& y) { return x.at < y.at; });
}

}  // namespace

IntervalSet::IntervalSet(std::vector<Interval> intervals) {
  std::vector<Interval> kept;
  kept.reserve(intervals.size());
  for (auto& iv : intervals) {
    const auto c = iv.left <=> iv.right;
    if (c > 0) throw Error(ErrorKind::InvalidInput, "interval with left > right: " + iv.left.to_string());
    if (c < 0) kept.push_back(std::move(iv));
  }
  std::stable_sort(kept.begin(), kept.end(), [](const Interval& x, const Interval& y) { return x.left < y.left; });
  for (auto& iv : kept) {
    if (!intervals_.empty() && iv.left <= intervals_.back().right) {
      if (iv.right > intervals_.back().right) intervals_.back().right = std::move(iv.right);
    } else {
      intervals_.push_back(std::move(iv));
    }
  }
}

IntervalSet IntervalSet::single(Endpoint left, Endpoint right) {
  std::vector<Interval> v;
  v.push_back({std::move(left), std::move(right)});
  return IntervalSet(std::move(v));
}

Endpoint IntervalSet::measure() const {
  Endpoint total;
  for (const auto& iv : intervals_) total = total + iv.length();
  return total;
}

bool IntervalSet::contains(const Endpoint& x) const {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return iv.left <= x && x < iv.right; });
}

bool IntervalSet::subset_of(const IntervalSet& other) const { return set_difference(*this, other).empty(); }

IntervalSet IntervalSet::translated(const mpq_class& shift) const {
  IntervalSet out;
  out.intervals_.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.intervals_.push_back({iv.left + shift, iv.right + shift});
  return out;
}

IntervalSet IntervalSet::scaled(const mpq_class& factor) const {
  if (sgn(factor) <= 0) throw Error(ErrorKind::InvalidInput, "scale factor must be positive");
  IntervalSet out;
  out.intervals_.reserve(intervals_.size());
  for (const auto& iv : intervals_) out.intervals_.push_back({iv.left.scaled(factor), iv.right.scaled(factor)});
  return out;
}

bool operator==(const IntervalSet& a, const IntervalSet& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.intervals_[i].left != b.intervals_[i].left || a.intervals_[i].right != b.intervals_[i].right) return false;
  }
  return true;
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}
IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}
IntervalSet set_difference(const IntervalSet& a, const IntervalSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}
IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b) {
  return combine(a, b, [](bool x, bool y) { return x != y; });
}

std::vector<FiberPiece> fold_fibers(std::int64_t N, const IntervalSet& S) {
  std::vector<FoldEvent> events;
  std::vector<std::int64_t> full_cells;
  collect_fold_events(N, S, events, full_cells);

  std::set<std::int64_t> active(full_cells.begin(), full_cells.end());
  const Endpoint cell_end(mpq_class(1, N));
  std::vector<FiberPiece> pieces;
  Endpoint cursor(0);
  std::size_t i = 0;
  while (cursor < cell_end) {
    while (i < events.size() && events[i].at == cursor) {
      if (events[i].delta > 0) {
        active.insert(events[i].offset);
      } else {
        active.erase(events[i].offset);
      }
      ++i;
    }
    Endpoint next = i < events.size() ? events[i].at : cell_end;
    std::vector<std::int64_t> offsets(active.begin(), active.end());
    if (!pieces.empty() && pieces.back().offsets == offsets) {
      pieces.back().piece.right = next;
    } else {
      pieces.push_back({{cursor, next}, std::move(offsets)});
    }
    cursor = std::move(next);
  }
  return pieces;
}

std::vector<CountPiece> fold_counts(std::int64_t N, const IntervalSet& S) {
  std::vector<FoldEvent> events;
  std::vector<std::int64_t> full_cells;
  collect_fold_events(N, S, events, full_cells);

  int count = static_cast<int>(full_cells.size());
  const Endpoint cell_end(mpq_class(1, N));
  std::vector<CountPiece> pieces;
  Endpoint cursor(0);
  std::size_t i = 0;
  while (cursor < cell_end) {
    while (i < events.size() && events[i].at == cursor) {
      count += events[i].delta;
      ++i;
    }
    Endpoint next = i < events.size() ? events[i].at : cell_end;
    if (!pieces.empty() && pieces.back().count == count) {
      pieces.back().piece.right = next;
    } else {
      pieces.push_back({{cursor, next}, count});
    }
    cursor = std::move(next);
  }
  return pieces;
}

IntervalSet a_geq(std::int64_t N, const IntervalSet& S, std::int64_t n) {
  if (n < 1 || n > N) throw Error(ErrorKind::InvalidInput, "level n must lie in 1..N");
  std::vector<Interval> out;
  for (auto& p : fold_counts(N, S)) {
    if (p.count >= n) out.push_back(std::move(p.piece));
  }
  return IntervalSet(std::move(out));
}

IntervalSet a_exact(std::int64_t N, const IntervalSet& S, std::int64_t n) {
  if (n < 0 || n > N) throw Error(ErrorKind::InvalidInput, "level n must lie in 0..N");
  std::vector<Interval> out;
  for (auto& p : fold_counts(N, S)) {
    if (p.count == n) out.push_back(std::move(p.piece));
  }
  return IntervalSet(std::move(out));
}

IntervalSet b_exact(std::int64_t N, const IntervalSet& S, std::int64_t n) {
  if (n < 1 || n > N) throw Error(ErrorKind::InvalidInput, "level n must lie in 1..N");
  const IntervalSet base = a_exact(N, S, n);
  std::vector<Interval> lifted;
  lifted.reserve(base.size() * static_cast<std::size_t>(N));
  for (std::int64_t k = 0; k < N; ++k) {
    const mpq_class shift(k, N);
    for (const auto& iv : base) lifted.push_back({iv.left + shift, iv.right + shift});
  }
  return set_intersection(IntervalSet(std::move(lifted)), S);
}

bool grid_separation_ok(std::int64_t N, const std::vector<Endpoint>& endpoints) {
  if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
  std::vector<Endpoint> points;
  points.reserve(endpoints.size() + 2);
  points.emplace_back(0);
  points.insert(points.end(), endpoints.begin(), endpoints.end());
  points.emplace_back(1);
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) throw Error(ErrorKind::InvalidInput, "endpoints must be strictly increasing in (0,1)");
    // Smallest k with k/N > points[i].
    const std::int64_t k = to_int64(floor(points[i].scaled(mpq_class(N)))) + 1;
    if (k > N - 1) return false;
    if (!(Endpoint(mpq_class(k, N)) < points[i + 1])) return false;
  }
  return true;
}

}  // namespace riesz
