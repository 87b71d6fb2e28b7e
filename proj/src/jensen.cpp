#include "mahler/jensen.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

#include "mahler/errors.hpp"

namespace mahler {

MeasureResult mahler_univariate(const Polynomial& p, double tol) {
    if (p.nvars() != 1) throw std::invalid_argument("mahler_univariate needs a univariate polynomial");
    if (p.is_zero()) throw ZeroPolynomial();

    MeasureResult result;
    result.method = Method::jensen;
    const double lead = std::log(std::abs(p.leading_coefficient()));
    if (p.is_constant()) {
        result.value = lead;
        return result;
    }

    const RootSet rs = roots(p, tol);
    double sum = 0.0;
    double err = 0.0;
    for (const Root& r : rs.roots) {
        const double modulus = std::abs(r.value);
        const double m = r.multiplicity;
        if (std::abs(modulus - 1.0) >= kOnCircleBand && modulus > 1.0) sum += m * std::log(modulus);
        // Largest change of max(0, log|ρ|) over the disc |ρ' - ρ| <= radius.
        if (modulus + r.error_radius > 1.0) {
            const double inner = modulus - r.error_radius;
            err += m * (inner > 1.0 ? std::log1p(r.error_radius / inner) : std::log(modulus + r.error_radius));
        }
    }
    result.value = lead + sum;
    result.error_estimate = err + 4.0 * DBL_EPSILON * (std::abs(lead) + sum);
    result.effort = static_cast<std::uint64_t>(rs.iterations);
    return result;
}

}  // namespace mahler
