#include <cmath>

#include "doctest.h"
#include "mahler/convergence.hpp"
#include "mahler/parse.hpp"
#include "mahler/quadrature.hpp"

using namespace mahler;

namespace {

std::vector<Polynomial> polys(std::initializer_list<const char*> exprs) {
    std::vector<Polynomial> out;
    for (const char* e : exprs) out.push_back(parse_poly(e));
    return out;
}

std::vector<std::int64_t> range(std::int64_t from, std::int64_t to, std::int64_t step) {
    std::vector<std::int64_t> v;
    for (std::int64_t m = from; m <= to; m += step) v.push_back(m);
    return v;
}

QuadConfig light() {
    QuadConfig cfg;
    cfg.qmc_samples = 1 << 14;
    return cfg;
}

// Tensor 1-D quadrature of the inner Jensen integral in y: for fixed x,
// (1/2pi) int log|a(x) + b(x) y| dy = log max(|a|, |b|).
double tensor_target(Complex c0, Complex cx, Complex cy) {
    return integrate_circle(
               [&](double t) {
                   const Complex a = c0 + cx * std::polar(1.0, t);
                   return std::log(std::max(std::abs(a), std::abs(cy)));
               },
               {}, QuadConfig{})
        .value;
}

}  // namespace

TEST_SUITE("convergence") {

TEST_CASE("Boyd-Lawton table for 1 + x + y") {
    const auto ms = range(5, 50, 5);
    const ConvergenceTable t = boyd_lawton_table(parse_poly("1 + x + y"), ms);
    CHECK(std::abs(t.target.value - 0.323065947219450514) < 1e-3);
    REQUIRE(t.rows.size() == ms.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        CHECK(t.rows[i].q == ms[i]);
        CHECK(t.rows[i].value->method == Method::jensen);
        if (i > 0) CHECK(t.rows[i].q > t.rows[i - 1].q);
    }
    CHECK(std::abs(t.rows.back().deviation(t.target)) < std::abs(t.rows.front().deviation(t.target)));
}

TEST_CASE("cyclotomic products and cancellation") {
    const ConvergenceTable t = boyd_lawton_table(parse_poly("(1 + x)*(1 + y)"), range(1, 6, 1));
    CHECK(std::abs(t.target.value) <= 3.0 * t.target.error_estimate + 1e-3);
    for (const auto& row : t.rows) CHECK(std::abs(row.value->value) < 1e-9);

    const ConvergenceTable cancel = boyd_lawton_table(parse_poly("x - y"), range(1, 3, 1));
    REQUIRE(cancel.rows.size() == 3);
    CHECK(cancel.rows[0].flagged);
    CHECK_FALSE(cancel.rows[0].value.has_value());
    CHECK(std::isnan(cancel.rows[0].deviation(cancel.target)));
    CHECK_FALSE(cancel.rows[1].flagged);
}

TEST_CASE("generalized tables") {
    const auto ms = range(3, 15, 3);
    const Polynomial p = parse_poly("1 + x + y");
    const ConvergenceTable single = boyd_lawton_table(p, ms, light());
    const ConvergenceTable twice = generalized_table(std::vector<Polynomial>{p, p}, ms, light());
    REQUIRE(single.rows.size() == twice.rows.size());
    for (std::size_t i = 0; i < single.rows.size(); ++i)
        CHECK(single.rows[i].value->value == twice.rows[i].value->value);
    CHECK(single.target.value == twice.target.value);

    const ConvergenceTable shifted = generalized_table(polys({"x - 2", "y + 2"}), ms, light());
    for (const auto& row : shifted.rows) CHECK(row.value->value >= std::log(2.0) - row.value->error_estimate);
}

TEST_CASE("higher and multiple tables") {
    const auto ms = range(2, 8, 2);
    const ConvergenceTable constant = higher_table(parse_poly("3"), 2, ms);
    for (const auto& row : constant.rows) CHECK(row.value->value == doctest::Approx(std::pow(std::log(3.0), 2)));
    const ConvergenceTable mult = multiple_table(polys({"x", "1 + x + y"}), ms, light());
    CHECK(mult.target.value == 0.0);
    for (const auto& row : mult.rows) CHECK(row.value->value == 0.0);
    CHECK_THROWS_AS(higher_table(parse_poly("1 + x + y"), 0, ms), std::invalid_argument);
}

TEST_CASE("tail summaries") {
    ConvergenceTable flat = boyd_lawton_table(parse_poly("(1 + x)*(1 + y)"), range(1, 6, 1), light());
    for (auto& row : flat.rows) row.value->value = 1.0;
    const TailSummary s = tail_summary(flat, 4);
    CHECK(s.tail_spread == 0.0);
    CHECK(s.tail_mean == doctest::Approx(1.0 - flat.target.value));
    CHECK_THROWS_AS(tail_summary(flat, 10), std::invalid_argument);
    CHECK_THROWS_AS(tail_summary(flat, 0), std::invalid_argument);

    const ConvergenceTable improving = boyd_lawton_table(parse_poly("1 + x + y"), range(2, 40, 2), light());
    const TailSummary t = tail_summary(improving, 5);
    CHECK(std::abs(t.tail_mean) < std::abs(improving.rows.front().deviation(improving.target)));
}

TEST_CASE("deviations shrink along doubling m") {
    const std::vector<std::int64_t> ms{25, 50, 100, 200};
    const ConvergenceTable t = boyd_lawton_table(parse_poly("1 + x + y"), ms);
    const double err = t.target.error_estimate;
    CHECK(std::abs(t.rows.back().deviation(t.target)) <= err + 1e-3);
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        CHECK(std::abs(t.rows[i].deviation(t.target)) <= 1.5 * std::abs(t.rows[i - 1].deviation(t.target)) + 3 * err);
}

TEST_CASE("zero-free polynomials converge to tensor quadrature targets") {
    const Polynomial p = parse_poly("3 + x + y");
    const double exact = tensor_target(3.0, 1.0, 1.0);
    CHECK(std::abs(exact - std::log(3.0)) < 1e-9);
    const std::vector<std::int64_t> ms{40};
    for (MeasureKind kind : {MeasureKind::classic(), MeasureKind::max(), MeasureKind::multiple()}) {
        const ConvergenceTable t = convergence_table(kind, std::vector<Polynomial>{p}, ms);
        CHECK(std::abs(t.rows.back().value->value - exact) < 1e-6);
    }
}

TEST_CASE("parallel rows match serial rows") {
    const auto ms = range(2, 20, 3);
    const auto ps = polys({"1 + x + y", "3 + x - y"});
    const ConvergenceTable a = multiple_table(ps, ms, light());
    const ConvergenceTable b = multiple_table(ps, ms, light(), Execution::serial);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].value->value == b.rows[i].value->value);
}

}
