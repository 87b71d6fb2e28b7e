#pragma once

#include <vector>

#include "mahler/polynomial.hpp"

namespace mahler {

struct Root {
    Complex value;
    int multiplicity = 1;
    /// Estimated distance to the exact root (first-order for simple roots,
    /// conditioning-based for multiple ones).
    double error_radius = 0.0;
};

/// All complex roots of a univariate polynomial, with multiplicity.
struct RootSet {
    std::vector<Root> roots;
    /// Largest componentwise backward error |P(ρ)| / Σ|a_k||ρ|^k over the roots.
    double residual_bound = 0.0;
    int iterations = 0;

    int total_multiplicity() const;
};

inline constexpr double kDefaultRootTol = 1e-12;
inline constexpr int kRootIterationCap = 200;
/// Roots closer than this (relative to max(1, |ρ|)) are always merged.
inline constexpr double kClusterDistance = 1e-6;

/// Aberth–Ehrlich simultaneous iteration from Newton-polygon initial guesses.
///
/// Iterates until every root's backward error is at rounding level (or the
/// iteration cap is hit), then requires the largest backward error to be at
/// most `tol`. Close roots are merged into multiple roots: pairs within
/// kClusterDistance unconditionally, and wider groups when the Taylor
/// coefficients at the group centroid confirm a multiple root.
///
/// Throws ZeroPolynomial, std::invalid_argument (degree 0 or not univariate),
/// or NonConvergence.
RootSet roots(const Polynomial& p, double tol = kDefaultRootTol);

/// Angles arg(ρ) in [0, 2π) of the roots with | |ρ| − 1 | < band, ascending.
std::vector<double> roots_near_circle(const RootSet& rs, double band);

}  // namespace mahler
