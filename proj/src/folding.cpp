#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "riesz/assembly.hpp"
#include "riesz/error.hpp"
#include "riesz/verify.hpp"

namespace riesz {

namespace {

struct RefinedPiece {
  Interval piece;
  std::size_t base = 0;      // index into the fiber pieces
  std::int64_t offset = 0;   // k with piece = base + k/N
  std::size_t hits = 0;      // fiber size of the base piece
  double length = 0.0;
};

struct Refinement {
  std::vector<FiberPiece> fibers;
  std::vector<double> base_length;
  std::vector<RefinedPiece> pieces;
};

Refinement refine(std::int64_t N, const IntervalSet& S) {
  Refinement r;
  r.fibers = fold_fibers(N, S);
  for (std::size_t b = 0; b < r.fibers.size(); ++b) {
    const auto& fp = r.fibers[b];
    r.base_length.push_back(fp.piece.length().to_double());
    for (std::int64_t k : fp.offsets) {
      const mpq_class shift(k, N);
      r.pieces.push_back({{fp.piece.left + shift, fp.piece.right + shift}, b, k, fp.offsets.size(), r.base_length.back()});
    }
  }
  std::sort(r.pieces.begin(), r.pieces.end(),
            [](const RefinedPiece& x, const RefinedPiece& y) { return x.piece.left < y.piece.left; });
  return r;
}

std::complex<double> gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

std::vector<std::complex<double>> values_on_refinement(const Refinement& r, const IntervalSet& S,
                                                       const TestFunction& f) {
  if (f.pieces.size() != f.values.size()) throw Error(ErrorKind::InvalidInput, "test function pieces/values mismatch");
  for (const auto& p : f.pieces) {
    if (!IntervalSet::single(p.left, p.right).subset_of(S)) {
      throw Error(ErrorKind::InvalidInput, "test function is not supported in S");
    }
  }
  std::vector<std::complex<double>> out(r.pieces.size(), 0.0);
  for (std::size_t i = 0; i < r.pieces.size(); ++i) {
    const auto& q = r.pieces[i].piece;
    for (std::size_t j = 0; j < f.pieces.size(); ++j) {
      const auto& p = f.pieces[j];
      if (!(q.left < p.right) || !(p.left < q.right)) continue;
      if (q.left < p.left || p.right < q.right) {
        throw Error(ErrorKind::InvalidInput, "test function is not constant on the fiber refinement");
      }
      out[i] += f.values[j];
    }
  }
  return out;
}

}  // namespace

double TestFunction::norm_squared() const {
  double total = 0.0;
  for (std::size_t i = 0; i < pieces.size(); ++i) total += std::norm(values[i]) * pieces[i].length().to_double();
  return total;
}

std::vector<Interval> folding_refinement(std::int64_t N, const IntervalSet& S) {
  std::vector<Interval> out;
  for (auto& p : refine(N, S).pieces) out.push_back(std::move(p.piece));
  return out;
}

TestFunction random_test_function(std::int64_t N, const IntervalSet& S, std::uint64_t seed, std::int64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(static_cast<std::uint64_t>(trial) >> 32)};
  std::mt19937_64 rng(seq);
  TestFunction f;
  f.pieces = folding_refinement(N, S);
  for (std::size_t i = 0; i < f.pieces.size(); ++i) f.values.push_back(gaussian(rng));
  return f;
}

FoldingReport folding_probe(std::int64_t N, const IntervalSet& S, const std::vector<Spectrum>& levels,
                            const std::vector<std::int64_t>& j, const FoldingOptions& options) {
  if (options.trials < 1) throw Error(ErrorKind::InvalidInput, "trials must be >= 1");
  std::vector<TestFunction> functions;
  functions.reserve(static_cast<std::size_t>(options.trials));
  for (std::int64_t t = 0; t < options.trials; ++t) functions.push_back(random_test_function(N, S, options.seed, t));
  return folding_probe(N, S, levels, j, functions, options);
}

FoldingReport folding_probe(std::int64_t N, const IntervalSet& S, const std::vector<Spectrum>& levels,
                            const std::vector<std::int64_t>& j, const std::vector<TestFunction>& functions,
                            const FoldingOptions& options) {
  if (options.window < 1) throw Error(ErrorKind::InvalidInput, "coefficient window must be >= 1");
  const Spectrum lambda = prime_permuted_combine(N, levels, j);
  const std::int64_t W = options.window;
  const Refinement r = refine(N, S);

  // Coefficients of each refined piece's indicator at k = -W..W.
  const std::size_t width = static_cast<std::size_t>(2 * W + 1);
  std::vector<std::vector<std::complex<double>>> phi(r.pieces.size());
  for (std::size_t i = 0; i < r.pieces.size(); ++i) {
    const auto g = indicator_transform_table<double>(IntervalSet::single(r.pieces[i].piece.left, r.pieces[i].piece.right),
                                                     mpq_class(1), W);
    phi[i].resize(width);
    for (std::int64_t k = -W; k <= W; ++k) {
      phi[i][static_cast<std::size_t>(k + W)] = k >= 0 ? std::conj(g[static_cast<std::size_t>(k)]) : g[static_cast<std::size_t>(-k)];
    }
  }
  const auto lambda_idx = lambda.indices_between(-W, W);
  std::vector<std::vector<std::int64_t>> level_idx(static_cast<std::size_t>(N));
  for (std::size_t l = 0; l < levels.size(); ++l) {
    if (!levels[l].is_empty()) level_idx[l] = shift(levels[l], mpq_class(j[l])).indices_between(-W, W);
  }

  FoldingReport report;
  report.empirical_c = std::numeric_limits<double>::infinity();
  report.per_level_alpha.assign(static_cast<std::size_t>(N), std::numeric_limits<double>::quiet_NaN());
  std::size_t max_hits = 0;
  for (const auto& p : r.pieces) max_hits = std::max(max_hits, p.hits);

  std::vector<std::complex<double>> c(width);
  for (const auto& f : functions) {
    const auto v = values_on_refinement(r, S, f);
    double total = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) total += std::norm(v[i]) * r.pieces[i].length;
    if (total == 0.0) {
      ++report.skipped;
      continue;
    }
    ++report.trials;
    for (std::size_t n = 1; n <= max_hits; ++n) {
      double norm_n = 0.0;
      double norm_geq = 0.0;
      std::fill(c.begin(), c.end(), 0.0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& p = r.pieces[i];
        if (p.hits < n) continue;
        const double e = std::norm(v[i]) * p.length;
        norm_geq += e;
        if (p.hits == n) norm_n += e;
        if (v[i] == 0.0) continue;
        const auto& ph = phi[i];
        for (std::size_t k = 0; k < width; ++k) c[k] += v[i] * ph[k];
      }
      if (norm_n == 0.0) continue;
      double captured = 0.0;
      for (const auto& x : c) captured += std::norm(x);
      double energy = 0.0;
      for (std::int64_t k : lambda_idx) energy += std::norm(c[static_cast<std::size_t>(k + W)]);
      const double ratio = energy / norm_n;
      report.empirical_c = std::min(report.empirical_c, ratio);
      report.max_ratio = std::max(report.max_ratio, ratio);
      const double tail = std::max(0.0, norm_geq - captured);
      report.max_tail_fraction = std::max(report.max_tail_fraction, energy > 0.0 ? tail / energy : INFINITY);

      // Folded functions h_{n,l} for levels l <= n.
      for (std::size_t l = 0; l < n && l < levels.size(); ++l) {
        if (levels[l].is_empty()) continue;
        std::vector<std::complex<double>> h(r.fibers.size(), 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
          const auto& p = r.pieces[i];
          if (p.hits < n) continue;
          h[p.base] += v[i] * root_of_unity<double>(j[l] * p.offset, N);
        }
        double h_norm = 0.0;
        for (std::size_t b = 0; b < h.size(); ++b) h_norm += std::norm(h[b]) * r.base_length[b];
        if (h_norm == 0.0) continue;
        double level_energy = 0.0;
        for (std::int64_t k : level_idx[l]) level_energy += std::norm(c[static_cast<std::size_t>(k + W)]);
        const double alpha = static_cast<double>(N) * level_energy / h_norm;
        double& slot = report.per_level_alpha[l];
        slot = std::isnan(slot) ? alpha : std::min(slot, alpha);
      }
    }
  }
  if (report.trials == 0) report.empirical_c = 0.0;
  report.truncation_warning = report.max_tail_fraction > options.tail_limit;

  std::set<std::vector<std::int64_t>> fiber_sets;
  for (const auto& fp : r.fibers) {
    if (!fp.offsets.empty()) fiber_sets.insert(fp.offsets);
  }
  report.c_prime = c_prime_bound(N, j, {fiber_sets.begin(), fiber_sets.end()});
  report.sigma_min_used = std::sqrt(report.c_prime);
  return report;
}

}  // namespace riesz
