#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mahler/execution.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/result.hpp"

namespace mahler {

inline constexpr std::uint64_t kDefaultSublevelSamples = 1'000'000;
inline constexpr std::uint64_t kDefaultSublevelSeed = 42;

/// Monte Carlo estimate of μ_n(S_n(P, y)), the un-normalized Lebesgue measure
/// (total mass (2π)^n) of {z ∈ T^n : |P(z)| < y}.
struct SublevelEstimate {
    double y = 0.0;
    double measure_est = 0.0;
    /// 95% binomial half-width, in the same units as measure_est.
    double ci_halfwidth = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t hits = 0;
    std::size_t nvars = 1;
};

/// Log–log fit μ ≈ c_hat · y^delta_hat over a grid of y values.
struct SublevelFit {
    double c_hat = 0.0;
    double delta_hat = 0.0;
    /// Grid values that entered the fit (those with a nonzero estimate).
    std::vector<double> y_grid;
    /// Weighted RMS residual of log μ about the fitted line.
    double residual = 0.0;
    std::vector<SublevelEstimate> points;
};

enum class SetMode { union_of, intersection };
enum class Combine { product, max };

/// Sampling uses per-block substreams of `seed`, so the same seed reuses the
/// same points for every y (nested sets give nested hit sets).
SublevelEstimate sublevel_measure(const Polynomial& p, double y,
                                  std::uint64_t samples = kDefaultSublevelSamples,
                                  std::uint64_t seed = kDefaultSublevelSeed,
                                  Execution exec = Execution::parallel);

/// Serial reference for sublevel_measure (one loop over all points).
SublevelEstimate sublevel_measure_reference(const Polynomial& p, double y, std::uint64_t samples,
                                            std::uint64_t seed);

/// Weighted least squares of log μ against log y, weights from the binomial
/// variance of each estimate. Grid points with no hits are dropped; fewer than
/// three remaining throws std::invalid_argument.
SublevelFit fit_sublevel_exponent(const Polynomial& p, std::span<const double> y_grid,
                                  std::uint64_t samples = kDefaultSublevelSamples,
                                  std::uint64_t seed = kDefaultSublevelSeed);

/// ∫ over (∪ or ∩ of S(P_i, y)) of (Π log|P_i| or max log|P_i|), against
/// un-normalized measure, by Monte Carlo. Requires nonzero polys with every
/// coefficient of modulus >= 1 and 0 < y <= 1. error_estimate is one
/// standard error.
MeasureResult singular_log_integral(std::span<const Polynomial> polys, double y, SetMode mode, Combine kind,
                                    std::uint64_t samples = kDefaultSublevelSamples,
                                    std::uint64_t seed = kDefaultSublevelSeed,
                                    Execution exec = Execution::parallel);

struct VanishingRow {
    double y = 0.0;
    MeasureResult estimate;
};

struct VanishingReport {
    std::vector<VanishingRow> rows;
    /// Every |estimate| is at most the previous one plus 3 combined standard errors.
    bool decreasing = true;
};

/// singular_log_integral over a decreasing y grid.
VanishingReport vanishing_report(std::span<const Polynomial> polys, std::span<const double> y_grid, SetMode mode,
                                 Combine kind, std::uint64_t samples = kDefaultSublevelSamples,
                                 std::uint64_t seed = kDefaultSublevelSeed);

/// y = 10^{-1}, 10^{-1.5}, …, 10^{-4}.
std::vector<double> default_y_grid();

}  // namespace mahler
