#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace mahler {

/// Which engine produced a value. `exact` marks closed forms (constants,
/// monomials) that bypass numerics; `monte_carlo` marks plain random sampling.
enum class Method { jensen, circle_quadrature, torus_qmc, monte_carlo, exact };

constexpr std::string_view method_name(Method m) {
    switch (m) {
        case Method::jensen: return "jensen";
        case Method::circle_quadrature: return "circle-quadrature";
        case Method::torus_qmc: return "torus-qmc";
        case Method::monte_carlo: return "monte-carlo";
        case Method::exact: return "exact";
    }
    return "unknown";
}

/// A measure value with its numerical uncertainty and reproducibility data.
struct MeasureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    Method method = Method::exact;
    /// Nodes (quadrature), samples (QMC/MC) or root-finder iterations (Jensen).
    std::uint64_t effort = 0;
    std::optional<std::uint64_t> seed;
    /// False when the requested tolerance was not met; value is the best available.
    bool converged = true;
};

}  // namespace mahler
