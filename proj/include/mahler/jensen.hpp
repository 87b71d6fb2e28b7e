#pragma once

#include "mahler/polynomial.hpp"
#include "mahler/result.hpp"
#include "mahler/roots.hpp"

namespace mahler {

/// Roots this close to the unit circle (in modulus) contribute exactly 0.
inline constexpr double kOnCircleBand = 1e-12;

/// Mahler measure of a univariate polynomial from its roots:
/// log|a| + Σ max(0, log|ρ|), a the leading coefficient.
///
/// `tol` is handed to the root finder. The error estimate propagates each
/// root's error radius through max(0, log|·|). Constants give log|c| exactly.
/// Throws ZeroPolynomial or NonConvergence.
MeasureResult mahler_univariate(const Polynomial& p, double tol = kDefaultRootTol);

}  // namespace mahler
