#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mahler/polynomial.hpp"

namespace testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(20240611);
    return engine;
}

inline int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline double uniform_real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng());
}

// Dense univariate polynomial with integer coefficients in [lo, hi] and a
// nonzero leading coefficient.
inline mahler::Polynomial random_univariate(int degree, int lo, int hi) {
    std::vector<mahler::Complex> c(static_cast<std::size_t>(degree) + 1);
    for (auto& v : c) v = uniform_int(lo, hi);
    while (c.back() == mahler::Complex(0.0)) c.back() = uniform_int(lo, hi);
    return mahler::Polynomial::from_dense(c);
}

// Sparse polynomial in `nvars` variables with up to `terms` terms.
inline mahler::Polynomial random_sparse(std::size_t nvars, int terms, int max_exp, int coeff_range) {
    mahler::Polynomial::TermMap map;
    for (int t = 0; t < terms; ++t) {
        mahler::Polynomial::Exponent e(nvars);
        for (auto& x : e) x = static_cast<std::uint32_t>(uniform_int(0, max_exp));
        int c = 0;
        while (c == 0) c = uniform_int(-coeff_range, coeff_range);
        map[e] += static_cast<double>(c);
    }
    return mahler::Polynomial(nvars, map);
}

}  // namespace testing
