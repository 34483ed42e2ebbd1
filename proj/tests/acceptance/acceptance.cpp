// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include "../common/fixtures.hpp"
#include "riesz/arith.hpp"
#include "riesz/assembly.hpp"
#include "riesz/dft_minor.hpp"
#include "riesz/error.hpp"
#include "riesz/verify.hpp"

using namespace riesz;
using fixtures::q;
using fixtures::rat;
using fixtures::windows;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x, int digits = 6) {
  std::ostringstream s;
  s << std::setprecision(digits) << x;
  return s.str();
}

// -------------------------------------------------------------------- 1

Outcome chebotarev_suite() {
  double worst = INFINITY;
  std::int64_t specs = 0;
  for (std::int64_t N : {2, 3, 5, 7, 11, 13}) {
    const auto r = chebotarev_check(N, N <= 7 ? N : 3);
    worst = std::min(worst, r.worst_sigma);
    specs += r.specs_checked;
  }
  const double composite = min_singular(MinorSpec{4, {0, 2}, {0, 2}});
  return {worst > 1e-8 && composite < 1e-12,
          "worst prime sigma " + fmt(worst) + " over " + std::to_string(specs) + " minors; N=4 sigma " + fmt(composite, 3)};
}

// -------------------------------------------------------------------- 2

double sq_singular(const Eigen::MatrixXcd& A, bool rows_side) {
  if (A.rows() == 0 || A.cols() == 0) return rows_side ? 0.0 : 1.0;
  if (rows_side ? A.cols() < A.rows() : A.rows() < A.cols()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
  const double s = svd.singularValues().minCoeff();
  return s * s;
}

Eigen::MatrixXcd dft_block(std::int64_t N, const std::vector<std::int64_t>& rows, const std::vector<std::int64_t>& cols) {
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      const double angle = 2 * std::numbers::pi * static_cast<double>(rows[i] * cols[j] % N) / static_cast<double>(N);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          std::polar(1.0 / std::sqrt(static_cast<double>(N)), angle);
    }
  }
  return out;
}

Outcome duality_suite() {
  std::mt19937_64 rng(17);
  double worst = 0.0;
  double worst_oracle = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t N = 2 + static_cast<std::int64_t>(rng() % 31);
    std::vector<std::int64_t> J, Jc, M, Mc;
    for (std::int64_t k = 0; k < N; ++k) (rng() % 2 ? J : Jc).push_back(k);
    for (std::int64_t k = 0; k < N; ++k) (rng() % 2 ? M : Mc).push_back(k);
    if (M.empty()) {
      M.push_back(Mc.front());
      Mc.erase(Mc.begin());
    }
    if (Mc.empty()) {
      Mc.push_back(M.back());
      M.pop_back();
    }
    const auto r = duality_finite_test(N, J, M);
    const double frame = J.empty() ? 0.0 : sq_singular(dft_block(N, M, J), true);
    const double riesz = sq_singular(dft_block(N, Mc, Jc), false);
    worst = std::max(worst, std::abs(r.alpha_frame - r.alpha_riesz));
    worst_oracle = std::max({worst_oracle, std::abs(r.alpha_frame - frame), std::abs(r.alpha_riesz - riesz)});
  }
  return {worst < 1e-9 && worst_oracle < 1e-9,
          "max |frame - riesz| " + fmt(worst, 3) + ", max deviation from SVD oracle " + fmt(worst_oracle, 3)};
}

// -------------------------------------------------------------------- 3

FrequencyList listing(const Spectrum& s, const mpq_class& lo, const mpq_class& hi) {
  const mpq_class a = lo / s.scale();
  const mpq_class b = hi / s.scale();
  mpz_class ca, fb;
  mpz_cdiv_q(ca.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  mpz_fdiv_q(fb.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
  return {s.scale(), s.indices_between(ca.get_si(), fb.get_si())};
}

Outcome covariance_suite() {
  std::mt19937_64 rng(99);
  const mpq_class T(256);
  const std::vector<mpq_class> dilations = {q("1/3"), q("1/2"), q("2"), q("3"), q("5/2")};
  double shift_err = 0.0;
  double set_err = 0.0;
  double dilate_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Spectrum lambda;
    switch (trial % 3) {
      case 0: {
        const auto m = 1 + static_cast<std::int64_t>(rng() % 4);
        lambda = Spectrum::coset(m, static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(m)));
        break;
      }
      case 1:
        lambda = dilate(avdonin_interval_spectrum(mpq_class(1 + static_cast<long>(rng() % 6), 7)),
                        mpq_class(1 + static_cast<long>(rng() % 3)));
        break;
      default:
        lambda = shift(avdonin_interval_spectrum(frac(fixtures::single_a().scaled(mpq_class(1 + trial)))),
                       mpq_class(static_cast<long>(rng() % 5)));
    }
    std::vector<Interval> pieces;
    long cursor = 0;
    for (int i = 0; i < 1 + static_cast<int>(rng() % 3) && cursor < 45; ++i) {
      const long lo = cursor + static_cast<long>(rng() % 5);
      const long hi = lo + 1 + static_cast<long>(rng() % 8);
      if (hi > 50) break;
      pieces.push_back({Endpoint(mpq_class(lo, 50)), Endpoint(mpq_class(hi, 50))});
      cursor = hi + 1;
    }
    if (trial % 4 == 0) pieces.push_back({fixtures::single_b(), Endpoint(mpq_class(49, 50))});
    const IntervalSet S{pieces};

    const FrequencyList base = listing(lambda, -T, T);
    const auto G = gram_matrix(base, S);

    // Lambda + a with a in the scale lattice.
    const mpq_class a = lambda.scale() * static_cast<long>(static_cast<long>(rng() % 11) - 5);
    const FrequencyList moved = listing(shift(lambda, a), -T + a, T + a);
    if (moved.size() != base.size()) return {false, "shift changed the window count"};
    shift_err = std::max(shift_err, (gram_matrix(moved, S) - G).cwiseAbs().maxCoeff());

    // S + b: unitary diagonal conjugation.
    const mpq_class b(static_cast<long>(rng() % 41) - 20, 10);
    const auto Gb = gram_matrix(base, S.translated(b));
    Eigen::VectorXcd phase(G.rows());
    for (Eigen::Index i = 0; i < G.rows(); ++i) {
      const mpq_class x = base.scale * base.indices[static_cast<std::size_t>(i)] * b;
      const mpq_class r = x - mpq_class(mpz_class(x.get_num() / x.get_den()));
      phase(i) = std::polar(1.0, 2 * std::numbers::pi * r.get_d());
    }
    const Eigen::MatrixXcd conj = phase.asDiagonal() * G * phase.conjugate().asDiagonal();
    set_err = std::max(set_err, (Gb - conj).cwiseAbs().maxCoeff());

    // (c Lambda, S / c) against G / c.
    const mpq_class c = dilations[rng() % dilations.size()];
    const FrequencyList scaled = listing(dilate(lambda, c), -c * T, c * T);
    if (scaled.size() != base.size()) return {false, "dilation changed the window count"};
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      if (scaled.scale * scaled.indices[i] != c * base.scale * base.indices[i]) return {false, "dilation moved a point"};
    }
    dilate_err = std::max(dilate_err, (gram_matrix(scaled, S.scaled(1 / c)) - G / c.get_d()).cwiseAbs().maxCoeff());
  }
  return {shift_err < 1e-12 && set_err < 1e-12 && dilate_err < 1e-12,
          "max entry error: spectrum shift " + fmt(shift_err, 3) + ", set shift " + fmt(set_err, 3) + ", dilation " +
              fmt(dilate_err, 3)};
}

// -------------------------------------------------------------------- 4

bool below_2_100(const Endpoint& x) { return abs(x.value()) < ldexp_one(-100, 256); }

Outcome folding_identities_suite() {
  std::mt19937_64 rng(4);
  const Endpoint wiggle = fixtures::single_a().scaled(q("1/100"));
  int checks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 11);
    std::vector<int> grid;
    for (int i = 1; i < 40; ++i) grid.push_back(i);
    std::shuffle(grid.begin(), grid.end(), rng);
    const int count = 1 + static_cast<int>(rng() % 4);
    std::vector<int> cuts(grid.begin(), grid.begin() + 2 * count);
    std::sort(cuts.begin(), cuts.end());
    std::vector<Interval> pieces;
    auto point = [&](int i) {
      Endpoint p(mpq_class(i, 40));
      return rng() % 3 == 0 ? p + wiggle : p;
    };
    for (int i = 0; i < count; ++i) pieces.push_back({point(cuts[2 * i]), point(cuts[2 * i + 1])});
    const IntervalSet S{pieces};
    const IntervalSet cell = IntervalSet::single(0, Endpoint(mpq_class(1, N)));

    IntervalSet a_union, b_union;
    Endpoint weighted(0);
    for (std::int64_t n = 0; n <= N; ++n) {
      const IntervalSet An = a_exact(N, S, n);
      a_union = set_union(a_union, An);
      weighted = weighted + An.measure().scaled(mpq_class(n));
      if (n >= 1) {
        const IntervalSet Bn = b_exact(N, S, n);
        b_union = set_union(b_union, Bn);
        if (!below_2_100(Bn.measure() - An.measure().scaled(mpq_class(n)))) return {false, "|B_n| != n |A_n|"};
      }
      if (n >= 1 && n < N && !below_2_100(set_difference(a_geq(N, S, n + 1), a_geq(N, S, n)).measure())) {
        return {false, "nesting violated at N=" + std::to_string(N)};
      }
    }
    if (!below_2_100(symmetric_difference(a_union, cell).measure())) return {false, "A_n do not partition the cell"};
    if (!below_2_100(symmetric_difference(b_union, S).measure())) return {false, "B_n do not partition S"};
    if (!below_2_100(weighted - S.measure())) return {false, "measure bookkeeping"};
    const IntervalSet complement = set_difference(IntervalSet::single(0, 1), S);
    for (std::int64_t n = 1; n <= N; ++n) {
      const auto lhs = a_geq(N, complement, n);
      const auto rhs = set_difference(cell, a_geq(N, S, N + 1 - n));
      if (!below_2_100(symmetric_difference(lhs, rhs).measure())) return {false, "complement rule"};
    }
    checks += 1;
  }
  return {true, std::to_string(checks) + " random instances, all identities below 2^-100"};
}

// -------------------------------------------------------------------- 5

Outcome equidistribution_suite() {
  const Endpoint s2 = fixtures::ep("0", fixtures::kSqrt2);
  const Endpoint s3 = fixtures::ep("0", fixtures::kSqrt3);
  const double fraction = prime_fraction_in(s2, 100000, 0.0, 0.5);
  const double d2 = weyl_discrepancy({s2, s3}, 100000, 32);
  const double rational = weyl_discrepancy({rat("1/2")}, 100000, 32);
  return {std::abs(fraction - 0.5) <= 0.02 && d2 < 0.05 && rational > 0.4,
          "fraction " + fmt(fraction) + ", 2-D discrepancy " + fmt(d2) + ", rational control " + fmt(rational)};
}

// -------------------------------------------------------------------- 6

Outcome theorem1_single() {
  const Theorem1Plan plan = theorem1_construct({fixtures::single_a()}, {fixtures::single_b()}, 1'000'000);
  if (plan.N != 5) return {false, "expected N=5, got " + std::to_string(plan.N)};
  const auto density = density_check(plan.lambda_ell[0], plan.S, windows({512, 1024, 2048}));
  const auto bounds = riesz_bounds_estimate(plan.lambda_ell[0], plan.S, windows({512, 1024, 2048}));
  double worst_r = 0.0;
  for (const auto& row : density.rows) worst_r = std::max(worst_r, std::abs(row.residual));
  const bool oracle = std::abs(bounds.lower_est - 0.014913) < 2e-5;
  const bool pass = density.pass && bounds.lower_est >= 1e-3 && bounds.last_drop && *bounds.last_drop < 0.10 && oracle;
  return {pass, "N=5, max |r(T)| " + fmt(worst_r, 3) + ", A(2048) " + fmt(bounds.lower_est) + " (reference 0.014913), B " +
                    fmt(bounds.upper_est) + ", last drop " + fmt(bounds.last_drop.value_or(NAN), 3) + ", " +
                    std::to_string(bounds.count) + " points"};
}

// -------------------------------------------------------------------- 7

Outcome theorem1_pair() {
  const auto a = fixtures::pair_a();
  const auto b = fixtures::pair_b();
  std::vector<BigFloat> values;
  for (const auto& e : a) values.push_back(e.value());
  for (const auto& e : b) values.push_back(e.value());
  if (rational_relation_probe(values, 10)) return {false, "integer relation found among the endpoints"};

  const Theorem1Plan plan = theorem1_construct(a, b, 1'000'000);
  const auto joint = unite(plan.lambda_ell[0], plan.lambda_ell[1]).enumerate(mpq_class(10000)).indices;
  if (std::adjacent_find(joint.begin(), joint.end()) != joint.end()) return {false, "Lambda_1 and Lambda_2 overlap"};

  std::ostringstream detail;
  detail << "N=" << plan.N << ", K=(" << plan.K_ell[0] << "," << plan.K_ell[1] << "), probe |q|<=10 clean;";
  bool pass = true;
  for (const std::vector<std::size_t>& J : {std::vector<std::size_t>{1}, {2}, {1, 2}}) {
    const SubsetPlan sp = subset_spectrum(plan, J);
    // Omega bookkeeping against an independent recomputation of the folded sets.
    for (std::size_t n = 0; n < sp.omega.size(); ++n) {
      const IntervalSet level = a_geq(plan.N, sp.S_J, static_cast<std::int64_t>(n + 1));
      if (!(level == sp.a_sets[n])) return {false, "a_geq mismatch in subset bookkeeping"};
      const Endpoint expected_density = level.measure();
      const Endpoint got = sp.omega[n].density();
      if (std::abs(got.to_double() - expected_density.to_double()) > 1e-14) {
        return {false, "Omega level density does not match its folded set"};
      }
    }
    if (!a_geq(plan.N, sp.S_J, static_cast<std::int64_t>(sp.omega.size() + 1)).empty()) {
      return {false, "folded set beyond the Omega list is nonempty"};
    }
    const auto density = density_check(sp.lambda_J, sp.S_J, windows({512, 1024, 2048}));
    const auto bounds = riesz_bounds_estimate(sp.lambda_J, sp.S_J, windows({512, 1024, 2048}));
    const bool ok = density.pass && bounds.status == TrendStatus::Pass;
    pass = pass && ok;
    detail << " J=" << (J.size() == 2 ? "{1,2}" : "{" + std::to_string(J[0]) + "}") << " A=" << fmt(bounds.lower_est, 4)
           << (ok ? " ok" : " FAIL") << ";";
  }
  return {pass, detail.str()};
}

// -------------------------------------------------------------------- 8

Outcome theorem2_grid() {
  const ComplementResult r = theorem2_complement(2, {rat("1")}, {rat("2")});
  const auto got = r.lambda_prime.enumerate(mpq_class(4096));
  const auto want = listing(dilate(Spectrum::coset(2, 1), q("1/2")), mpq_class(-4096), mpq_class(4096));
  const bool same = got.scale == want.scale && got.indices == want.indices;
  const Spectrum full = unite(Spectrum::coset(1, 0), r.lambda_prime);
  const IntervalSet S = IntervalSet::single(0, 2);
  const auto bounds = riesz_bounds_estimate(full, S, windows({32, 64, 128, 256}));
  double spread = 0.0;
  for (const auto& h : bounds.history) spread = std::max(spread, std::abs(h.upper - h.lower));
  const double measure = S.measure().to_double();
  const double normalized = bounds.lower_est / measure;
  const bool tight = spread < 1e-10;
  const bool target = std::abs(normalized - 0.5) < 1e-10 && std::abs(bounds.upper_est / measure - 0.5) < 1e-10;
  std::ostringstream detail;
  detail << "Lambda' = Z+1/2 " << (same ? "exact" : "MISMATCH") << ", M=" << r.M << "; A=B at every window "
         << (tight ? "(spread " + fmt(spread, 2) + ")" : "NOT tight") << "; raw A=" << fmt(bounds.lower_est, 12)
         << ", per unit measure " << fmt(normalized, 12) << ", required 1/2";
  return {same && tight && target, detail.str()};
}

// -------------------------------------------------------------------- 9

Outcome theorem2_irrational() {
  const Endpoint end = fixtures::ep("0", fixtures::kSqrt2).scaled(q("1/2")) + mpq_class(1);
  const ComplementResult r = theorem2_complement(2, {rat("1")}, {end});
  const auto f = r.lambda_prime.enumerate(mpq_class(1024));
  if (f.scale != q("1/2")) return {false, "Lambda' is not on the half-integer lattice"};
  for (std::int64_t k : f.indices) {
    if (k % 2 == 0) return {false, "Lambda' meets Z"};
  }
  const auto schedule = windows({256, 512, 1024});
  const IntervalSet piece = IntervalSet::single(1, end);
  const IntervalSet joined = set_union(IntervalSet::single(0, 1), piece);
  const Spectrum with_z = unite(Spectrum::coset(1, 0), r.lambda_prime);
  const auto d1 = density_check(r.lambda_prime, piece, schedule);
  const auto b1 = riesz_bounds_estimate(r.lambda_prime, piece, schedule);
  const auto d2 = density_check(with_z, joined, schedule);
  const auto b2 = riesz_bounds_estimate(with_z, joined, schedule);
  const bool pass = d1.pass && d2.pass && b1.status == TrendStatus::Pass && b2.status == TrendStatus::Pass;
  return {pass, "M=" + std::to_string(r.M) + "; E(Lambda') on [a,b): A=" + fmt(b1.lower_est) + " " +
                    to_string(b1.status) + "; E(Z u Lambda'): A=" + fmt(b2.lower_est) + ", B=" + fmt(b2.upper_est) + " " +
                    to_string(b2.status)};
}

// -------------------------------------------------------------------- 10

Outcome folding_probe_suite() {
  const Theorem1Plan plan = theorem1_construct({fixtures::single_a()}, {fixtures::single_b()}, 1'000'000);
  std::ostringstream detail;
  bool pass = true;
  for (const std::vector<std::int64_t>& j : {std::vector<std::int64_t>{1, 2, 3, 4, 5}, {3, 1, 2, 4, 5}}) {
    const auto r = folding_probe(plan.N, plan.S, plan.all_levels(), j);
    const bool ok = r.trials == 200 && r.empirical_c > 0.0 && r.max_tail_fraction < 0.01;
    pass = pass && ok;
    detail << "j=(" << j[0] << j[1] << j[2] << j[3] << j[4] << ") c=" << fmt(r.empirical_c, 4)
           << " tail=" << fmt(r.max_tail_fraction, 3) << "; ";
  }
  const std::vector<Spectrum> full_levels(5, Spectrum::coset(5, 0));
  const auto sanity = folding_probe(5, IntervalSet::single(0, 1), full_levels, {3, 1, 2, 4, 5}, FoldingOptions{50, 42, 4096, 0.01});
  const bool parseval = std::abs(sanity.empirical_c - 1.0) < 1e-2 && std::abs(sanity.max_ratio - 1.0) < 1e-2;
  detail << "full-fiber ratio in [" << fmt(sanity.empirical_c, 6) << ", " << fmt(sanity.max_ratio, 6) << "]";
  return {pass && parseval, detail.str()};
}

// -------------------------------------------------------------------- 11

Outcome negative_control() {
  const auto r = riesz_bounds_estimate(Spectrum::coset(1, 0), IntervalSet::single(0, Endpoint(q("1/2"))),
                                       windows({8, 16, 32, 64}));
  std::ostringstream detail;
  detail << to_string(r.status) << ", A history:";
  for (const auto& h : r.history) detail << " " << fmt(h.lower, 3);
  return {r.status == TrendStatus::FailTrend, detail.str()};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "chebotarev minors", 30, chebotarev_suite},
      {2, "finite duality", 20, duality_suite},
      {3, "shift/dilation covariance", 30, covariance_suite},
      {4, "cell-folding identities", 10, folding_identities_suite},
      {5, "equidistribution along primes", 60, equidistribution_suite},
      {6, "hierarchy, one interval", 300, theorem1_single},
      {7, "hierarchy, two intervals", 900, theorem1_pair},
      {8, "complement, grid case", 10, theorem2_grid},
      {9, "complement, irrational case", 300, theorem2_irrational},
      {10, "folding probe", 300, folding_probe_suite},
      {11, "negative control", 30, negative_control},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << "  " << c.name << ": " << o.detail << " ["
              << fmt(seconds, 3) << " s of " << c.budget_seconds << " s" << (in_time ? "" : ", over budget") << "]"
              << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
