#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mahler/errors.hpp"
#include "mahler/jensen.hpp"
#include "mahler/parse.hpp"
#include "mahler/quadrature.hpp"
#include "mahler/roots.hpp"
#include "support.hpp"

using namespace mahler;

namespace {

MeasureResult by_quadrature(const Polynomial& p) {
    const TorusEvaluator eval(p);
    const auto singular = roots_near_circle(roots(p), 1e-2);
    return integrate_circle([&](double t) { return eval.log_abs(std::span<const double>(&t, 1)); }, singular, {});
}

}  // namespace

TEST_SUITE("jensen") {

TEST_CASE("examples") {
    CHECK(mahler_univariate(parse_poly("x - 2")).value == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(mahler_univariate(parse_poly("x^2 - x - 1")).value ==
          doctest::Approx(std::log((1 + std::sqrt(5.0)) / 2)).epsilon(1e-14));
    const MeasureResult lehmer = mahler_univariate(parse_poly("x^10 + x^9 - x^7 - x^6 - x^5 - x^4 - x^3 + x + 1"));
    CHECK(std::abs(lehmer.value - 0.162357612007738139) < 1e-12);
    CHECK(lehmer.method == Method::jensen);
    for (int n = 1; n <= 10; ++n) {
        const MeasureResult r = mahler_univariate(parse_poly(("x^" + std::to_string(n) + " - 1").c_str()));
        CHECK(r.value == 0.0);
    }
    CHECK(mahler_univariate(parse_poly("-3")).value == doctest::Approx(std::log(3.0)));
    CHECK_THROWS_AS(mahler_univariate(Polynomial(1)), ZeroPolynomial);
}

TEST_CASE("multiplicativity") {
    for (int trial = 0; trial < 50; ++trial) {
        const Polynomial p = testing::random_univariate(testing::uniform_int(1, 6), -5, 5);
        const Polynomial q = testing::random_univariate(testing::uniform_int(1, 6), -5, 5);
        const MeasureResult mp = mahler_univariate(p), mq = mahler_univariate(q), mpq = mahler_univariate(p * q);
        const double err = mp.error_estimate + mq.error_estimate + mpq.error_estimate;
        CHECK(std::abs(mpq.value - mp.value - mq.value) <= err);
    }
}

TEST_CASE("scaling") {
    for (int trial = 0; trial < 50; ++trial) {
        const Polynomial p = testing::random_univariate(testing::uniform_int(1, 8), -5, 5);
        const Complex c(testing::uniform_real(-4, 4), testing::uniform_real(-4, 4));
        const double diff = mahler_univariate(scale(p, c)).value - mahler_univariate(p).value;
        CHECK(std::abs(diff - std::log(std::abs(c))) <= 1e-10);
    }
}

TEST_CASE("agreement with circle quadrature") {
    std::vector<Polynomial> polys;
    for (const char* s : {"x^3 - 1", "(x + 1)^2 * (x - 3)", "x^4 + x^3 + x^2 + x + 1", "(x - 1) * (2*x + 5)",
                          "x^6 - x^3 + 1 + 0*x"})
        polys.push_back(parse_poly(s));
    while (polys.size() < 20) polys.push_back(testing::random_univariate(testing::uniform_int(1, 8), -5, 5));
    for (const Polynomial& p : polys) {
        const MeasureResult j = mahler_univariate(p);
        const MeasureResult q = by_quadrature(p);
        CAPTURE(j.value);
        CAPTURE(q.value);
        CHECK(std::abs(j.value - q.value) <= j.error_estimate + q.error_estimate);
    }
}

}
