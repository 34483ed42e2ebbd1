#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "riesz/dft_minor.hpp"
#include "riesz/interval_set.hpp"
#include "riesz/spectrum.hpp"

namespace riesz {

// ---------------------------------------------------------------- Gram

/// Values g(scale * d), d = 0..D, of the Fourier transform of the indicator
///   g(x) = sum_l (exp(2 pi i x b_l) - exp(2 pi i x a_l)) / (2 pi i x),  g(0) = |S|.
/// Phases are reduced mod 1 exactly in the rational parts before evaluation.
template <class Scalar>
std::vector<std::complex<Scalar>> indicator_transform_table(const IntervalSet& S, const mpq_class& scale,
                                                            std::int64_t D);

/// Gram matrix <e_lambda, e_mu>_{L^2(S)} over the frequencies of `freqs`.
template <class Scalar = double>
ComplexMatrix<Scalar> gram_matrix(const FrequencyList& freqs, const IntervalSet& S);

/// Gram matrix of the elements of spectrum in [-T, T]. Throws EmptyWindow if none.
template <class Scalar = double>
ComplexMatrix<Scalar> gram_matrix(const Spectrum& spectrum, const IntervalSet& S, const mpq_class& T);

struct Extremes {
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
};

inline constexpr Eigen::Index kDenseEigenLimit = 4096;

/// Extreme eigenvalues of the Gram matrix; dense solver up to kDenseEigenLimit, Lanczos above.
Extremes gram_extremes(const FrequencyList& freqs, const IntervalSet& S, Eigen::Index dense_limit = kDenseEigenLimit);

/// Extreme eigenvalues of a Hermitian operator given by a matvec, via Lanczos with
/// full reorthogonalisation; stops once both Ritz residuals are below tol * |upper|.
Extremes lanczos_extremes(Eigen::Index n, const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
                          double tol = 1e-10, Eigen::Index max_iter = 0);

// ---------------------------------------------------------------- bounds

enum class TrendStatus { Pass, FailTrend, Inconclusive };
std::string to_string(TrendStatus status);

struct BoundsSample {
  mpq_class T;
  std::int64_t count = 0;
  double lower = 0.0;
  double upper = 0.0;
  std::string method;
};

struct GramReport {
  mpq_class window;
  std::int64_t count = 0;
  double lower_est = 0.0;
  double upper_est = 0.0;
  std::vector<BoundsSample> history;
  TrendStatus status = TrendStatus::Inconclusive;
  /// Relative drop of the lower estimate over the last step of the schedule.
  std::optional<double> last_drop;
  /// Least-squares slope of log(lower) against log(T), reported on FailTrend.
  std::optional<double> decay_slope;
};

struct TrendOptions {
  double pass_floor = 1e-3;
  double fail_floor = 1e-4;
  double max_drop = 0.10;
  Eigen::Index dense_limit = kDenseEigenLimit;
};

GramReport riesz_bounds_estimate(const Spectrum& spectrum, const IntervalSet& S, const std::vector<mpq_class>& schedule,
                                 const TrendOptions& options = {});

/// Status from a finished history (exposed for testing).
TrendStatus classify_trend(const std::vector<BoundsSample>& history, const TrendOptions& options,
                           std::optional<double>& last_drop, std::optional<double>& slope);

// ---------------------------------------------------------------- density

struct DensityRow {
  mpq_class T;
  std::int64_t count = 0;
  double expected = 0.0;
  double residual = 0.0;
};

struct DensityReport {
  std::vector<DensityRow> rows;
  double tolerance = 4.0;
  bool pass = false;
};

/// r(T) = #(spectrum in [-T, T]) - 2 T |S|; passes iff |r(T)| <= tolerance for all T.
DensityReport density_check(const Spectrum& spectrum, const IntervalSet& S, const std::vector<mpq_class>& windows,
                            double tolerance = 4.0);

// ---------------------------------------------------------------- duality

struct DualityResult {
  double alpha_frame = 0.0;
  double alpha_riesz = 0.0;
};

/// Unitary DFT basis e_n(k) = exp(2 pi i n k / N) / sqrt(N) of C^N, P the coordinate
/// projection onto M_dim. alpha_frame: optimal lower frame bound of {P e_n}_{n in J}
/// in range(P); alpha_riesz: optimal lower Riesz bound of {(I - P) e_n}_{n not in J}.
/// An empty complement of J gives alpha_riesz = 1.
DualityResult duality_finite_test(std::int64_t N, const std::vector<std::int64_t>& J,
                                  const std::vector<std::int64_t>& M_dim);

/// The unitary DFT matrix used above, F(k, n) = e_n(k).
Eigen::MatrixXcd unitary_dft(std::int64_t N);

// ---------------------------------------------------------------- folding

/// Piecewise-constant function: value[i] on pieces[i].
struct TestFunction {
  std::vector<Interval> pieces;
  std::vector<std::complex<double>> values;

  double norm_squared() const;
};

struct FoldingOptions {
  std::int64_t trials = 200;
  std::uint64_t seed = 42;
  /// Fourier coefficients are summed over integers |k| <= window.
  std::int64_t window = 4096;
  /// Tail threshold relative to the captured energy.
  double tail_limit = 0.01;
};

struct FoldingReport {
  double empirical_c = 0.0;
  double max_ratio = 0.0;
  /// Per level n = 1..N (NaN when the level never applies), min over trials of
  /// N * E_n / |h_{m,n}|^2 for m >= n.
  std::vector<double> per_level_alpha;
  double c_prime = 0.0;
  double sigma_min_used = 0.0;
  std::int64_t trials = 0;
  std::int64_t skipped = 0;
  double max_tail_fraction = 0.0;
  bool truncation_warning = false;
};

/// Fiber-aligned refinement of S: pieces P + k/N with P from fold_fibers.
std::vector<Interval> folding_refinement(std::int64_t N, const IntervalSet& S);

/// Seeded complex-Gaussian piecewise-constant function on the refinement.
TestFunction random_test_function(std::int64_t N, const IntervalSet& S, std::uint64_t seed, std::int64_t trial);

/// Probe over `trials` random functions.
FoldingReport folding_probe(std::int64_t N, const IntervalSet& S, const std::vector<Spectrum>& levels,
                            const std::vector<std::int64_t>& j, const FoldingOptions& options = {});

/// Probe for explicit functions (each must be piecewise constant on the refinement).
FoldingReport folding_probe(std::int64_t N, const IntervalSet& S, const std::vector<Spectrum>& levels,
                            const std::vector<std::int64_t>& j, const std::vector<TestFunction>& functions,
                            const FoldingOptions& options = {});

}  // namespace riesz
