#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mahler/errors.hpp"
#include "mahler/parse.hpp"
#include "mahler/roots.hpp"
#include "support.hpp"

using namespace mahler;

namespace {

constexpr double kPi = std::numbers::pi;

// a * prod (x - rho)^mult, expanded densely.
std::vector<Complex> expand(Complex lead, const RootSet& rs) {
    std::vector<Complex> c{lead};
    for (const Root& root : rs.roots)
        for (int k = 0; k < root.multiplicity; ++k) {
            std::vector<Complex> next(c.size() + 1, 0.0);
            for (std::size_t i = 0; i < c.size(); ++i) {
                next[i + 1] += c[i];
                next[i] -= root.value * c[i];
            }
            c = std::move(next);
        }
    return c;
}

}  // namespace

TEST_SUITE("rootfind") {

TEST_CASE("small examples") {
    const RootSet a = roots(parse_poly("x^2 + 1"));
    REQUIRE(a.roots.size() == 2);
    for (const Root& r : a.roots) {
        CHECK(std::abs(std::abs(r.value.imag()) - 1.0) < 1e-12);
        CHECK(std::abs(r.value.real()) < 1e-12);
    }

    const RootSet b = roots(parse_poly("x^3 - 6*x^2 + 12*x - 8"));
    REQUIRE(b.roots.size() == 1);
    CHECK(b.roots[0].multiplicity == 3);
    CHECK(std::abs(b.roots[0].value - 2.0) < 1e-8);

    const RootSet zero = roots(parse_poly("x^3 + x^2"));
    CHECK(zero.total_multiplicity() == 3);
    CHECK(std::any_of(zero.roots.begin(), zero.roots.end(),
                      [](const Root& r) { return r.value == Complex(0.0) && r.multiplicity == 2; }));
}

TEST_CASE("Lehmer polynomial has its Salem root") {
    const RootSet rs = roots(parse_poly("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1"));
    CHECK(rs.total_multiplicity() == 10);
    const bool found = std::any_of(rs.roots.begin(), rs.roots.end(), [](const Root& r) {
        return std::abs(r.value - 1.17628081825991750654) < 1e-12;
    });
    CHECK(found);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(roots(Polynomial(1)), ZeroPolynomial);
    CHECK_THROWS_AS(roots(parse_poly("5")), std::invalid_argument);
    CHECK_THROWS_AS(roots(parse_poly("x + y")), DimensionMismatch);
}

TEST_CASE("roots near the circle") {
    const auto one = roots_near_circle(roots(parse_poly("1 + x")), 0.1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(roots_near_circle(roots(parse_poly("x - 2")), 0.1).empty());
    const auto cyc = roots_near_circle(roots(parse_poly("x^2 + x + 1")), 0.1);
    REQUIRE(cyc.size() == 2);
    CHECK(cyc[0] == doctest::Approx(2 * kPi / 3).epsilon(1e-12));
    CHECK(cyc[1] == doctest::Approx(4 * kPi / 3).epsilon(1e-12));
}

TEST_CASE("reconstruction and root count") {
    for (int trial = 0; trial < 200; ++trial) {
        const int degree = testing::uniform_int(1, 12);
        const Polynomial p = testing::random_univariate(degree, -10, 10);
        const RootSet rs = roots(p);
        CHECK(rs.total_multiplicity() == degree);
        const auto coeffs = p.dense_coefficients();
        const auto rebuilt = expand(p.leading_coefficient(), rs);
        REQUIRE(rebuilt.size() == coeffs.size());
        double scale = 0.0;
        for (const Complex& c : coeffs) scale = std::max(scale, std::abs(c));
        double worst = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) worst = std::max(worst, std::abs(rebuilt[i] - coeffs[i]));
        CAPTURE(degree);
        CHECK(worst <= 1e-8 * scale);
    }
}

TEST_CASE("repeated cyclotomic factors cluster") {
    const RootSet rs = roots(parse_poly("(x^2 + x + 1)^2 * (x - 1)^3"));
    CHECK(rs.total_multiplicity() == 7);
    CHECK(rs.roots.size() == 3);
    for (const Root& r : rs.roots) CHECK(std::abs(std::abs(r.value) - 1.0) < 1e-8);
}

TEST_CASE("deterministic") {
    const Polynomial p = testing::random_univariate(9, -5, 5);
    const RootSet a = roots(p), b = roots(p);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i) CHECK(a.roots[i].value == b.roots[i].value);
}

}
