#include "riesz/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "riesz/error.hpp"

namespace riesz {

namespace {

std::int64_t floor_int64(const Endpoint& x) {
  const mpz_class z = floor(x);
  if (!z.fits_slong_p()) throw Error(ErrorKind::ResourceLimit, "integer out of 64-bit range");
  return z.get_si();
}

IntervalSet union_of(const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                     const std::vector<std::size_t>& which) {
  std::vector<Interval> pieces;
  for (std::size_t l : which) pieces.push_back({a[l], b[l]});
  return IntervalSet(std::move(pieces));
}

IntervalSet cell(std::int64_t N) { return IntervalSet::single(Endpoint(0), Endpoint(mpq_class(1, N))); }

void check_levels(std::int64_t N, const std::vector<Spectrum>& levels) {
  if (static_cast<std::int64_t>(levels.size()) != N) {
    throw Error(ErrorKind::InvalidInput, "expected " + std::to_string(N) + " level spectra, got " +
                                             std::to_string(levels.size()));
  }
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (!subset_of_multiples(levels[n], N)) {
      throw Error(ErrorKind::LevelNotInNZ, "level " + std::to_string(n + 1) + " is not contained in " +
                                               std::to_string(N) + "Z");
    }
  }
}

// A dyadic rational strictly between x and y (x < y).
mpq_class rational_between(const Endpoint& x, const Endpoint& y) {
  const double mid = 0.5 * (x.to_double() + y.to_double());
  for (int bits = 1; bits <= 52; ++bits) {
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), 2, static_cast<unsigned long>(bits));
    const mpq_class candidate(mpz_class(static_cast<long>(std::llround(std::ldexp(mid, bits)))), denominator);
    const Endpoint c{mpq_class(candidate)};
    if (x < c && c < y) return candidate;
  }
  throw Error(ErrorKind::AmbiguousEndpoint, "gap between " + x.to_string() + " and " + y.to_string() + " too narrow");
}

}  // namespace

Spectrum lemma2_combine(std::int64_t N, const std::vector<Spectrum>& levels, int base_shift) {
  if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
  if (base_shift != 0 && base_shift != 1) throw Error(ErrorKind::InvalidInput, "base_shift must be 0 or 1");
  check_levels(N, levels);
  Spectrum out;
  for (std::int64_t n = 1; n <= N; ++n) {
    const auto& level = levels[static_cast<std::size_t>(n - 1)];
    if (!level.is_empty()) out = unite(out, shift(level, mpq_class(n - 1 + base_shift)));
  }
  return out;
}

Spectrum prime_permuted_combine(std::int64_t N, const std::vector<Spectrum>& levels,
                                const std::vector<std::int64_t>& j) {
  if (!is_prime(N)) throw Error(ErrorKind::NotPrime, std::to_string(N) + " is not prime");
  std::vector<std::int64_t> sorted = j;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::int64_t> identity(static_cast<std::size_t>(N));
  std::iota(identity.begin(), identity.end(), 1);
  if (sorted != identity) throw Error(ErrorKind::NotPermutation, "shifts must be a permutation of 1..N");
  check_levels(N, levels);
  Spectrum out;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    if (!levels[n].is_empty()) out = unite(out, shift(levels[n], mpq_class(j[n])));
  }
  return out;
}

std::vector<Spectrum> Theorem1Plan::all_levels() const {
  std::vector<Spectrum> out(static_cast<std::size_t>(N));
  for (const auto& level : levels) out[static_cast<std::size_t>(level.n - 1)] = level.lambda;
  return out;
}

Theorem1Plan theorem1_construct_at(std::int64_t N, const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                   const IntervalGenerator& generator) {
  check_interval_endpoints(a, b);
  if (!is_prime(N)) throw Error(ErrorKind::NotPrime, std::to_string(N) + " is not prime");
  const std::size_t L = a.size();
  const mpq_class scale(N);

  Theorem1Plan plan;
  plan.N = N;
  plan.a = a;
  plan.b = b;
  std::vector<std::size_t> all(L);
  std::iota(all.begin(), all.end(), 0);
  plan.S = union_of(a, b, all);

  std::vector<std::int64_t> floor_a(L);
  std::vector<std::int64_t> floor_b(L);
  for (std::size_t l = 0; l < L; ++l) {
    floor_a[l] = floor_int64(a[l].scaled(scale));
    floor_b[l] = floor_int64(b[l].scaled(scale));
    const std::int64_t k = floor_b[l] - floor_a[l];
    if (k < 1) {
      throw Error(ErrorKind::DegenerateCoverage, "interval " + std::to_string(l + 1) + " contains no full cell at N=" +
                                                     std::to_string(N));
    }
    plan.K_ell.push_back(k);
    plan.K += k;
  }
  if (plan.K + static_cast<std::int64_t>(L) > N) {
    throw Error(ErrorKind::PatternMismatch, "K + L exceeds N");
  }

  // Expected pattern: K full cells, then the L fractional pieces, then nothing.
  for (std::int64_t n = 1; n <= plan.K; ++n) {
    if (!(a_geq(N, plan.S, n) == cell(N))) {
      throw Error(ErrorKind::PatternMismatch, "level " + std::to_string(n) + " is not the full cell");
    }
  }
  for (std::size_t l = 0; l < L; ++l) {
    const Endpoint left = a[l] - mpq_class(floor_a[l], N);
    const Endpoint right = b[l] - mpq_class(floor_b[l], N);
    const std::int64_t n = plan.K + static_cast<std::int64_t>(l) + 1;
    if (!(left < right) || !(a_geq(N, plan.S, n) == IntervalSet::single(left, right))) {
      throw Error(ErrorKind::PatternMismatch, "level " + std::to_string(n) + " does not match [{N a_l}/N, {N b_l}/N)");
    }
    plan.beta.push_back((right - left).scaled(scale));
  }
  const std::int64_t top = plan.K + static_cast<std::int64_t>(L) + 1;
  if (top <= N && !a_geq(N, plan.S, top).empty()) {
    throw Error(ErrorKind::PatternMismatch, "level " + std::to_string(top) + " is not empty");
  }

  std::int64_t n = 1;
  for (std::size_t l = 0; l < L; ++l) {
    for (std::int64_t i = 0; i < plan.K_ell[l]; ++i, ++n) {
      plan.levels.push_back({n, cell(N), Spectrum::coset(N, 0), l + 1});
    }
  }
  for (std::size_t l = 0; l < L; ++l, ++n) {
    Spectrum level = dilate(generator(plan.beta[l]), scale);
    if (!subset_of_multiples(level, N)) {
      throw Error(ErrorKind::LevelNotInNZ, "generator output for interval " + std::to_string(l + 1) + " is not integral");
    }
    plan.levels.push_back({n, a_geq(N, plan.S, n), std::move(level), l + 1});
  }

  for (std::size_t l = 0; l < L; ++l) {
    Spectrum lambda;
    for (const auto& level : plan.levels) {
      if (level.interval == l + 1) lambda = unite(lambda, shift(level.lambda, mpq_class(level.n)));
    }
    plan.lambda_ell.push_back(std::move(lambda));
  }
  return plan;
}

Theorem1Plan theorem1_construct(const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                std::int64_t prime_limit, const Theorem1Options& options) {
  PrimeSearchOptions search = options.search;
  while (true) {
    PrimeSearchResult found = find_ordering_prime(a, b, prime_limit, search);
    try {
      Theorem1Plan plan = theorem1_construct_at(found.N, a, b, options.generator);
      plan.search = std::move(found);
      return plan;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DegenerateCoverage) throw;
    }
    ++search.occurrence;
    search.relation_max_coeff = 0;
  }
}

SubsetPlan subset_spectrum(const Theorem1Plan& plan, const std::vector<std::size_t>& J) {
  if (J.empty()) throw Error(ErrorKind::EmptySubset, "subset J must be nonempty");
  const std::size_t L = plan.L();
  std::vector<std::size_t> sorted = J;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 1 || sorted.back() > L) {
    throw Error(ErrorKind::InvalidSubset, "J must hold distinct indices in 1..L");
  }
  const std::int64_t N = plan.N;
  SubsetPlan out;
  out.J = sorted;
  std::vector<std::size_t> zero_based;
  for (std::size_t l : sorted) zero_based.push_back(l - 1);
  out.S_J = union_of(plan.a, plan.b, zero_based);

  for (std::size_t l : sorted) {
    for (const auto& level : plan.levels) {
      if (level.interval == l && level.n <= plan.K) {
        out.omega.push_back(level.lambda);
        out.shifts.push_back(level.n);
        ++out.K_J;
      }
    }
  }
  for (std::size_t l : sorted) {
    const auto& level = plan.levels[static_cast<std::size_t>(plan.K) + l - 1];
    out.omega.push_back(level.lambda);
    out.shifts.push_back(level.n);
  }

  const auto count = static_cast<std::int64_t>(out.omega.size());
  for (std::int64_t n = 1; n <= count; ++n) {
    IntervalSet recomputed = a_geq(N, out.S_J, n);
    const IntervalSet& expected =
        n <= out.K_J ? cell(N)
                     : plan.levels[static_cast<std::size_t>(plan.K) + sorted[static_cast<std::size_t>(n - out.K_J - 1)] - 1]
                           .a_geq;
    if (!(recomputed == expected)) {
      throw Error(ErrorKind::PatternMismatch, "Omega_" + std::to_string(n) + " does not match A_{>=" +
                                                  std::to_string(n) + "}(N, S^J)");
    }
    out.a_sets.push_back(std::move(recomputed));
  }
  if (count + 1 <= N && !a_geq(N, out.S_J, count + 1).empty()) {
    throw Error(ErrorKind::PatternMismatch, "A-set above the Omega list is not empty");
  }

  // Complete the shifts to a permutation of 1..N and assemble.
  std::vector<Spectrum> levels(out.omega);
  std::vector<std::int64_t> perm(out.shifts);
  const std::set<std::int64_t> used(perm.begin(), perm.end());
  for (std::int64_t s = 1; s <= N; ++s) {
    if (!used.count(s)) {
      perm.push_back(s);
      levels.emplace_back();
    }
  }
  out.lambda_J = prime_permuted_combine(N, levels, perm);
  return out;
}

ComplementResult theorem2_complement(std::int64_t N, const std::vector<Endpoint>& a, const std::vector<Endpoint>& b,
                                     std::int64_t prime_limit) {
  if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
  if (a.empty() || a.size() != b.size()) throw Error(ErrorKind::InvalidInput, "need matching interval endpoint lists");
  Endpoint previous(1);
  for (std::size_t l = 0; l < a.size(); ++l) {
    const bool first_ok = l == 0 ? !(a[l] < previous) : previous < a[l];
    if (!first_ok || !(a[l] < b[l])) {
      throw Error(ErrorKind::InvalidInput, "endpoints must satisfy 1 <= a_1 < b_1 < ... < a_L < b_L <= N");
    }
    previous = b[l];
  }
  if (Endpoint(N) < previous) throw Error(ErrorKind::InvalidInput, "b_L must be <= N");

  ComplementResult out;
  out.N = N;
  std::vector<Interval> pieces{{Endpoint(0), Endpoint(1)}};
  for (std::size_t l = 0; l < a.size(); ++l) pieces.push_back({a[l], b[l]});
  out.S = IntervalSet(std::move(pieces)).scaled(mpq_class(1, N));

  const mpq_class scale(N);
  const IntervalSet full_cell = cell(N);
  std::vector<Spectrum> levels(static_cast<std::size_t>(N));
  for (std::int64_t n = 1; n <= N; ++n) {
    IntervalSet A = a_geq(N, out.S, n);
    if (A.empty()) break;
    ComplementLevel level;
    level.n = n;
    const IntervalSet U = A.scaled(scale);
    const auto& iv = U.intervals();
    Spectrum gamma;
    if (A == full_cell) {
      level.kind = "full";
      gamma = Spectrum::coset(1, 0);
      ++out.M;
    } else if (iv.size() == 1) {
      level.kind = "arc";
      gamma = avdonin_interval_spectrum(iv[0].length());
    } else if (iv.size() == 2 && iv[0].left == Endpoint(0) && iv[1].right == Endpoint(1)) {
      // An arc through 0 on the circle; integer spectra do not see the rotation.
      level.kind = "arc";
      gamma = avdonin_interval_spectrum(iv[0].length() + iv[1].length());
    } else if (std::all_of(iv.begin(), iv.end(),
                           [](const Interval& x) { return x.left.is_rational() && x.right.is_rational(); })) {
      level.kind = "grid";
      mpz_class q = 1;
      for (const auto& x : iv) {
        mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), x.left.rational_part().get_den_mpz_t());
        mpz_lcm(q.get_mpz_t(), q.get_mpz_t(), x.right.rational_part().get_den_mpz_t());
      }
      if (!q.fits_slong_p()) throw Error(ErrorKind::ResourceLimit, "grid denominator too large");
      std::vector<std::int64_t> cells;
      for (const auto& x : iv) {
        const mpq_class lo = x.left.rational_part() * q;
        const mpq_class hi = x.right.rational_part() * q;
        for (mpz_class k = lo.get_num(); k < hi.get_num(); ++k) cells.push_back(k.get_si());
      }
      gamma = rational_grid_spectrum(q.get_si(), cells);
    } else {
      level.kind = "hierarchy";
      // Rotate by a rational in the gap after the first arc so that no arc wraps.
      const mpq_class rho = rational_between(iv[0].right, iv[1].left);
      std::vector<Interval> rotated;
      for (const auto& x : iv) {
        const mpq_class lift = x.left < Endpoint(rho) ? mpq_class(1) - rho : mpq_class(-rho);
        rotated.push_back({x.left + lift, x.right + lift});
      }
      const IntervalSet V(std::move(rotated));
      std::vector<Endpoint> ra;
      std::vector<Endpoint> rb;
      for (const auto& x : V) {
        ra.push_back(x.left);
        rb.push_back(x.right);
      }
      try {
        const Theorem1Plan sub = theorem1_construct(ra, rb, prime_limit);
        for (const auto& piece : sub.lambda_ell) gamma = unite(gamma, piece);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::ResourceLimit) throw;
        throw Error(ErrorKind::UnsupportedASet,
                    "level " + std::to_string(n) + " is neither grid-aligned nor constructible: " + e.what());
      }
    }
    level.a_geq = std::move(A);
    level.lambda = dilate(gamma, scale);
    levels[static_cast<std::size_t>(n - 1)] = level.lambda;
    out.levels.push_back(std::move(level));
  }

  levels[0] = Spectrum();
  out.lambda_prime = dilate(lemma2_combine(N, levels, 0), mpq_class(1, N));
  return out;
}

}  // namespace riesz
