#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "riesz/endpoint.hpp"

namespace riesz {

struct AllFilter {
  friend bool operator==(const AllFilter&, const AllFilter&) = default;
};

/// Keeps the points m * (round(n / beta) + phase) + j, n in Z, round half up.
struct AvdoninFilter {
  Endpoint beta;
  std::int64_t phase = 0;

  friend bool operator==(const AvdoninFilter& x, const AvdoninFilter& y) {
    return x.phase == y.phase && same_irrational(x.beta, y.beta) && x.beta.rational_part() == y.beta.rational_part();
  }
};

using CosetFilter = std::variant<AllFilter, AvdoninFilter>;

/// Subset of the coset modulus * Z + offset, offset in 0..modulus-1.
struct CosetTerm {
  std::int64_t modulus = 1;
  std::int64_t offset = 0;
  CosetFilter filter = AllFilter{};

  friend bool operator==(const CosetTerm&, const CosetTerm&) = default;
};

/// Window enumeration result: the frequencies are scale * indices.
struct FrequencyList {
  mpq_class scale{1};
  std::vector<std::int64_t> indices;

  double value(std::size_t i) const { return scale.get_d() * static_cast<double>(indices[i]); }
  std::size_t size() const { return indices.size(); }
};

/// Frequency set scale * (union of coset terms). Scale is kept in the form 1/q.
class Spectrum {
 public:
  Spectrum() = default;
  Spectrum(mpq_class scale, std::vector<CosetTerm> terms);

  static Spectrum coset(std::int64_t modulus, std::int64_t offset);
  static Spectrum empty() { return Spectrum(); }

  const mpq_class& scale() const { return scale_; }
  const std::vector<CosetTerm>& terms() const { return terms_; }
  bool is_empty() const { return terms_.empty(); }

  /// Integer indices k with lo <= k <= hi (frequencies scale * k), ascending.
  /// Throws OverlappingTerms if two terms share an index.
  std::vector<std::int64_t> indices_between(std::int64_t lo, std::int64_t hi) const;
  /// Elements in [-T, T].
  FrequencyList enumerate(const mpq_class& T) const;

  /// Density as an exact rational plus beta contributions.
  Endpoint density() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  mpq_class scale_{1};
  std::vector<CosetTerm> terms_;
};

/// Translate by a, which must be a multiple of the spectrum's scale.
Spectrum shift(const Spectrum& s, const mpq_class& a);
Spectrum dilate(const Spectrum& s, const mpq_class& c);
/// Union of term lists, brought to a common scale; overlaps surface on enumeration.
Spectrum unite(const Spectrum& x, const Spectrum& y);
/// True when every term lies in N*Z (structural check on scale, moduli and offsets).
bool subset_of_multiples(const Spectrum& s, std::int64_t N);

/// round(x) with ties going up, for x = n / beta.
std::int64_t avdonin_point(std::int64_t n, const Endpoint& beta);

inline const mpq_class kDefaultBetaFloor{1, 64};

/// {round(n / beta) : n in Z}, 0 < beta < 1.
Spectrum avdonin_interval_spectrum(const Endpoint& beta, const mpq_class& beta_floor = kDefaultBetaFloor);

/// Union over n = 1..|cells| of qZ + n.
Spectrum rational_grid_spectrum(std::int64_t q, const std::vector<std::int64_t>& cells);

/// Produces an integer spectrum for an interval of length beta in [0, 1).
using IntervalGenerator = std::function<Spectrum(const Endpoint& beta)>;
IntervalGenerator default_interval_generator();

}  // namespace riesz
