#include "mahler/measures.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mahler/errors.hpp"
#include "mahler/jensen.hpp"
#include "mahler/roots.hpp"

namespace mahler {
namespace {

// Inputs lifted to a common variable count, then stripped of variables that
// no input uses (all-constant inputs end up univariate).
struct Prepared {
    std::vector<Polynomial> polys;
};

bool canonical_less(const Polynomial& a, const Polynomial& b) {
    return std::lexicographical_compare(
        a.terms().begin(), a.terms().end(), b.terms().begin(), b.terms().end(),
        [](const auto& x, const auto& y) {
            if (x.first != y.first) return x.first < y.first;
            if (x.second.real() != y.second.real()) return x.second.real() < y.second.real();
            return x.second.imag() < y.second.imag();
        });
}

Prepared prepare(std::span<const Polynomial> polys) {
    if (polys.empty()) throw std::invalid_argument("at least one polynomial is required");
    std::size_t nvars = 1;
    for (const Polynomial& p : polys) {
        if (p.is_zero()) throw ZeroPolynomial();
        nvars = std::max(nvars, p.nvars());
    }
    std::vector<bool> keep(nvars, false);
    Prepared out;
    out.polys.reserve(polys.size());
    for (const Polynomial& p : polys) {
        out.polys.push_back(p.lifted(nvars));
        const auto used = out.polys.back().used_variables();
        for (std::size_t j = 0; j < nvars; ++j) keep[j] = keep[j] || used[j];
    }
    if (std::none_of(keep.begin(), keep.end(), [](bool b) { return b; })) keep[0] = true;
    for (Polynomial& p : out.polys) p = p.compressed(keep);
    // Canonical order makes products and maxima bitwise permutation-invariant.
    std::sort(out.polys.begin(), out.polys.end(), canonical_less);
    return out;
}

// log|a x^k| on the torus is log|a|.
double monomial_log(const Polynomial& p) {
    return std::log(std::abs(p.terms().begin()->second));
}

MeasureResult exact(double value) {
    MeasureResult r;
    r.value = value;
    r.method = Method::exact;
    r.error_estimate = 4.0 * DBL_EPSILON * std::abs(value);
    return r;
}

std::vector<double> split_angles(const Polynomial& p) {
    if (p.is_constant()) return {};
    return roots_near_circle(roots(p), kSplitBand);
}

// Angles where every polynomial has an on-circle root (within clustering distance).
std::vector<double> common_singular_angles(const std::vector<Polynomial>& polys) {
    std::vector<std::vector<double>> per_poly;
    for (const Polynomial& p : polys) {
        if (p.is_monomial()) return {};
        per_poly.push_back(roots_near_circle(roots(p), kClusterDistance));
    }
    std::vector<double> common;
    for (double a : per_poly.front()) {
        const bool shared = std::all_of(per_poly.begin() + 1, per_poly.end(), [a](const auto& angles) {
            return std::any_of(angles.begin(), angles.end(), [a](double b) {
                const double gap = std::abs(a - b);
                return std::min(gap, 2.0 * std::numbers::pi - gap) <= kClusterDistance;
            });
        });
        if (shared) common.push_back(a);
    }
    return common;
}

double log_abs_univariate(const TorusEvaluator& eval, double theta) {
    return eval.log_abs(std::span<const double>(&theta, 1));
}

}  // namespace

std::string MeasureKind::name() const {
    switch (tag) {
        case Tag::classic: return "classic";
        case Tag::higher: return "higher";
        case Tag::multiple: return "multiple";
        case Tag::max: return "max";
    }
    return "unknown";
}

MeasureResult mahler(const Polynomial& p, const QuadConfig& cfg) {
    const Prepared prep = prepare(std::span(&p, 1));
    const Polynomial& q = prep.polys.front();
    if (q.is_monomial()) return exact(monomial_log(q));
    if (q.nvars() == 1) return mahler_univariate(q);
    const TorusEvaluator eval(q);
    return integrate_torus_qmc([&eval](std::span<const double> t) { return eval.log_abs(t); }, q.nvars(), cfg);
}

MeasureResult higher_mahler(const Polynomial& p, int s, const QuadConfig& cfg) {
    if (s < 1) throw std::invalid_argument("higher Mahler measure needs s >= 1");
    const Prepared prep = prepare(std::span(&p, 1));
    const Polynomial& q = prep.polys.front();
    if (q.is_monomial()) return exact(std::pow(monomial_log(q), s));
    const TorusEvaluator eval(q);
    if (q.nvars() == 1) {
        const std::vector<double> angles = split_angles(q);
        return integrate_circle([&](double t) { return std::pow(log_abs_univariate(eval, t), s); }, angles, cfg);
    }
    return integrate_torus_qmc([&](std::span<const double> t) { return std::pow(eval.log_abs(t), s); },
                               q.nvars(), cfg);
}

MeasureResult multiple_mahler(std::span<const Polynomial> polys, const QuadConfig& cfg) {
    const Prepared prep = prepare(polys);
    double constant_factor = 1.0;
    std::vector<Polynomial> varying;
    for (const Polynomial& p : prep.polys) {
        if (p.is_monomial())
            constant_factor *= monomial_log(p);
        else
            varying.push_back(p);
    }
    if (varying.empty() || constant_factor == 0.0) return exact(varying.empty() ? constant_factor : 0.0);

    std::vector<TorusEvaluator> evals(varying.begin(), varying.end());
    MeasureResult r;
    if (varying.front().nvars() == 1) {
        std::vector<double> angles;
        for (const Polynomial& p : varying) {
            const auto a = split_angles(p);
            angles.insert(angles.end(), a.begin(), a.end());
        }
        r = integrate_circle(
            [&](double t) {
                double prod = 1.0;
                for (const auto& e : evals) prod *= log_abs_univariate(e, t);
                return prod;
            },
            angles, cfg);
    } else {
        r = integrate_torus_qmc(
            [&](std::span<const double> t) {
                double prod = 1.0;
                for (const auto& e : evals) prod *= e.log_abs(t);
                return prod;
            },
            varying.front().nvars(), cfg);
    }
    r.value *= constant_factor;
    r.error_estimate *= std::abs(constant_factor);
    return r;
}

MeasureResult generalized_mahler(std::span<const Polynomial> polys, const QuadConfig& cfg) {
    Prepared prep = prepare(polys);
    std::vector<Polynomial> distinct;
    for (Polynomial& p : prep.polys)
        if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) distinct.push_back(std::move(p));
    if (distinct.size() == 1) return mahler(distinct.front(), cfg);
    if (std::all_of(distinct.begin(), distinct.end(), [](const Polynomial& p) { return p.is_monomial(); })) {
        double best = -INFINITY;
        for (const Polynomial& p : distinct) best = std::max(best, monomial_log(p));
        return exact(best);
    }

    std::vector<TorusEvaluator> evals(distinct.begin(), distinct.end());
    if (distinct.front().nvars() == 1) {
        const std::vector<double> angles = common_singular_angles(distinct);
        return integrate_circle(
            [&](double t) {
                double best = -INFINITY;
                for (const auto& e : evals) best = std::max(best, log_abs_univariate(e, t));
                return best;
            },
            angles, cfg);
    }
    return integrate_torus_qmc(
        [&](std::span<const double> t) {
            double best = -INFINITY;
            for (const auto& e : evals) best = std::max(best, e.log_abs(t));
            return best;
        },
        distinct.front().nvars(), cfg);
}

MeasureResult measure(const MeasureRequest& request) {
    const auto& polys = request.polys;
    if (polys.empty()) throw std::invalid_argument("measure request needs at least one polynomial");
    std::size_t nvars = 0;
    for (const Polynomial& p : polys)
        if (!p.is_constant()) nvars = nvars == 0 ? p.nvars() : nvars;
    for (const Polynomial& p : polys)
        if (p.nvars() != nvars && !p.is_constant())
            throw DimensionMismatch("all polynomials in a request must share nvars");
    switch (request.kind.tag) {
        case MeasureKind::Tag::classic:
            if (polys.size() != 1) throw std::invalid_argument("classic measure takes exactly one polynomial");
            return mahler(polys.front(), request.cfg);
        case MeasureKind::Tag::higher:
            if (polys.size() != 1) throw std::invalid_argument("higher measure takes exactly one polynomial");
            return higher_mahler(polys.front(), request.kind.s, request.cfg);
        case MeasureKind::Tag::multiple:
            return multiple_mahler(polys, request.cfg);
        case MeasureKind::Tag::max:
            return generalized_mahler(polys, request.cfg);
    }
    throw std::invalid_argument("unknown measure kind");
}

}  // namespace mahler
