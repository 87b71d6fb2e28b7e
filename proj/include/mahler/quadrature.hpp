#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mahler/execution.hpp"
#include "mahler/result.hpp"

namespace mahler {

struct QuadConfig {
    /// Absolute error target for adaptive quadrature (normalized measure).
    double tol = 1e-9;
    /// Bisection depth limit per panel.
    int max_depth = 60;
    /// Points per randomized QMC point set; must be a power of two.
    std::uint64_t qmc_samples = std::uint64_t{1} << 16;
    /// Independent randomizations; at least 2 so an error estimate exists.
    int randomizations = 16;
    std::uint64_t seed = 42;

    /// Throws std::invalid_argument when an invariant above is violated.
    void validate() const;
};

using CircleIntegrand = std::function<double(double)>;
using TorusIntegrand = std::function<double(std::span<const double>)>;

/// Globally adaptive Gauss–Kronrod (7/15) integration of f over [a, b].
///
/// The interval is pre-split at `breakpoints` (integrable singularities go
/// here). The panel with the largest error estimate is bisected until the
/// summed estimate is at most `abs_tol`; bisection toward a breakpoint is the
/// geometric ratio-1/2 refinement that resolves log-type singularities. Panels
/// at `max_depth` are never split again, and if the target is then out of
/// reach the result comes back with converged = false.
MeasureResult integrate_interval(const CircleIntegrand& f, double a, double b,
                                 std::span<const double> breakpoints, double abs_tol, int max_depth);

/// (1/2π) ∫_0^{2π} f(θ) dθ, split at `singular_angles` (in [0, 2π)).
MeasureResult integrate_circle(const CircleIntegrand& f, std::span<const double> singular_angles,
                               const QuadConfig& cfg);

/// ∫ f over the n-torus against normalized Haar measure.
///
/// Averages `cfg.randomizations` digitally shifted Sobol point sets of size
/// `cfg.qmc_samples` (angles 2π·u). The error estimate is the sample standard
/// deviation of the per-randomization means. Identical (f, n, cfg) give
/// identical results in either execution mode. `f` must be reentrant.
MeasureResult integrate_torus_qmc(const TorusIntegrand& f, std::size_t n, const QuadConfig& cfg,
                                  Execution exec = Execution::parallel);

/// Serial reference for integrate_torus_qmc: straightforward loops with the
/// same blocked summation, used to check the OpenMP kernel bit for bit.
MeasureResult integrate_torus_qmc_reference(const TorusIntegrand& f, std::size_t n, const QuadConfig& cfg);

struct JParams {
    int ell = 1;
    double delta = 1.0;
    double y = 1.0;
};

/// J_{ℓ,δ}(y) = (−1)^ℓ ∫_0^y log^ℓ z d(z^δ)
///            = y^δ Σ_{j=0}^{ℓ} ℓ!/(j! δ^{ℓ−j}) (−log y)^j, for 0 < y ≤ 1.
double j_closed_form(const JParams& p);

/// I_{ℓ,k}(y) = J_{ℓ,1/(k−1)}(y); requires k >= 2.
double i_closed_form(int ell, int k, double y);

}  // namespace mahler
