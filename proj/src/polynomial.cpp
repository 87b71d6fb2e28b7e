#include "mahler/polynomial.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "mahler/errors.hpp"

namespace mahler {

Polynomial::Polynomial(std::size_t nvars) : nvars_(nvars) {
    if (nvars == 0) throw std::invalid_argument("polynomial needs at least one variable");
}

Polynomial::Polynomial(std::size_t nvars, TermMap terms) : nvars_(nvars), terms_(std::move(terms)) {
    if (nvars == 0) throw std::invalid_argument("polynomial needs at least one variable");
    for (const auto& [exp, c] : terms_) {
        if (exp.size() != nvars_)
            throw DimensionMismatch("exponent vector length does not match nvars");
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw std::invalid_argument("non-finite coefficient");
    }
    canonicalize();
}

Polynomial Polynomial::constant(std::size_t nvars, Complex c) {
    return Polynomial(nvars, {{Exponent(nvars, 0), c}});
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DimensionMismatch("variable index out of range");
    Exponent e(nvars, 0);
    e[index] = 1;
    return Polynomial(nvars, {{std::move(e), Complex(1.0)}});
}

Polynomial Polynomial::from_dense(std::span<const Complex> coeffs) {
    TermMap terms;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        terms.emplace(Exponent{static_cast<std::uint32_t>(k)}, coeffs[k]);
    return Polynomial(1, std::move(terms));
}

void Polynomial::canonicalize() {
    double largest = 0.0;
    for (const auto& [exp, c] : terms_) largest = std::max(largest, std::abs(c));
    const double cutoff = kDropThreshold * largest;
    std::erase_if(terms_, [cutoff](const auto& term) {
        const double mag = std::abs(term.second);
        return mag == 0.0 || mag < cutoff;
    });
}

bool Polynomial::is_constant() const noexcept {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint32_t v) { return v == 0; });
}

std::uint32_t Polynomial::degree_in(std::size_t var) const {
    if (var >= nvars_) throw DimensionMismatch("variable index out of range");
    std::uint32_t d = 0;
    for (const auto& [exp, c] : terms_) d = std::max(d, exp[var]);
    return d;
}

std::vector<bool> Polynomial::used_variables() const {
    std::vector<bool> used(nvars_, false);
    for (const auto& [exp, c] : terms_)
        for (std::size_t j = 0; j < nvars_; ++j)
            if (exp[j] > 0) used[j] = true;
    return used;
}

Complex Polynomial::leading_coefficient() const {
    if (nvars_ != 1) throw DimensionMismatch("leading coefficient needs a univariate polynomial");
    if (terms_.empty()) throw ZeroPolynomial();
    return terms_.rbegin()->second;
}

std::vector<Complex> Polynomial::dense_coefficients() const {
    if (nvars_ != 1) throw DimensionMismatch("dense coefficients need a univariate polynomial");
    if (terms_.empty()) return {};
    std::vector<Complex> out(terms_.rbegin()->first[0] + std::size_t{1}, Complex(0.0));
    for (const auto& [exp, c] : terms_) out[exp[0]] = c;
    return out;
}

Polynomial Polynomial::lifted(std::size_t nvars) const {
    if (nvars < nvars_) throw DimensionMismatch("cannot lift to fewer variables");
    if (nvars == nvars_) return *this;
    TermMap terms;
    for (const auto& [exp, c] : terms_) {
        Exponent e = exp;
        e.resize(nvars, 0);
        terms.emplace(std::move(e), c);
    }
    return Polynomial(nvars, std::move(terms));
}

Polynomial Polynomial::compressed(const std::vector<bool>& keep) const {
    if (keep.size() != nvars_) throw DimensionMismatch("keep mask length does not match nvars");
    const auto kept = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), true));
    TermMap terms;
    for (const auto& [exp, c] : terms_) {
        Exponent e;
        e.reserve(kept);
        for (std::size_t j = 0; j < nvars_; ++j) {
            if (keep[j])
                e.push_back(exp[j]);
            else if (exp[j] != 0)
                throw std::invalid_argument("compressed() would drop a used variable");
        }
        if (e.empty()) e.push_back(0);
        terms[std::move(e)] += c;
    }
    return Polynomial(std::max<std::size_t>(kept, 1), std::move(terms));
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto& [exp, c] : out.terms_) c = -c;
    return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.nvars_ != nvars_) throw DimensionMismatch("adding polynomials with different nvars");
    for (const auto& [exp, c] : rhs.terms_) terms_[exp] += c;
    canonicalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    return *this += -rhs;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    if (rhs.nvars_ != nvars_) throw DimensionMismatch("multiplying polynomials with different nvars");
    TermMap product;
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : rhs.terms_) {
            Exponent e(nvars_);
            for (std::size_t j = 0; j < nvars_; ++j) e[j] = ea[j] + eb[j];
            product[std::move(e)] += ca * cb;
        }
    }
    terms_ = std::move(product);
    canonicalize();
    return *this;
}

TorusPoint::TorusPoint(std::vector<double> angles) : angles_(std::move(angles)) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    for (double& a : angles_) {
        if (!std::isfinite(a)) throw std::invalid_argument("non-finite torus angle");
        a = std::fmod(a, two_pi);
        if (a < 0.0) a += two_pi;
        if (a >= two_pi) a = 0.0;
    }
}

Complex TorusPoint::coordinate(std::size_t j) const {
    return std::polar(1.0, angles_.at(j));
}

Complex evaluate(const Polynomial& p, std::span<const double> angles) {
    if (angles.size() != p.nvars())
        throw DimensionMismatch("torus point dimension does not match polynomial");
    Complex sum(0.0);
    for (const auto& [exp, c] : p.terms()) {
        double phase = 0.0;
        for (std::size_t j = 0; j < exp.size(); ++j) phase += static_cast<double>(exp[j]) * angles[j];
        sum += c * std::polar(1.0, phase);
    }
    return sum;
}

Complex evaluate(const Polynomial& p, const TorusPoint& point) {
    return evaluate(p, point.angles());
}

TorusEvaluator::TorusEvaluator(const Polynomial& p) : nvars_(p.nvars()) {
    exponents_.reserve(p.term_count() * nvars_);
    coeffs_.reserve(p.term_count());
    for (const auto& [exp, c] : p.terms()) {
        for (std::uint32_t e : exp) exponents_.push_back(static_cast<double>(e));
        coeffs_.push_back(c);
    }
}

Complex TorusEvaluator::operator()(std::span<const double> angles) const {
    Complex sum(0.0);
    const double* e = exponents_.data();
    for (const Complex& c : coeffs_) {
        double phase = 0.0;
        for (std::size_t j = 0; j < nvars_; ++j) phase += e[j] * angles[j];
        e += nvars_;
        sum += c * Complex(std::cos(phase), std::sin(phase));
    }
    return sum;
}

double TorusEvaluator::log_abs(std::span<const double> angles) const {
    return std::log(std::max(std::abs((*this)(angles)), DBL_MIN));
}

Polynomial specialize(const Polynomial& p, std::span<const std::int64_t> r) {
    if (r.size() != p.nvars()) throw DimensionMismatch("r length does not match nvars");
    for (std::int64_t rj : r)
        if (rj <= 0) throw std::invalid_argument("specialization exponents must be positive");
    Polynomial::TermMap terms;
    for (const auto& [exp, c] : p.terms()) {
        std::uint64_t degree = 0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const auto step = static_cast<std::uint64_t>(exp[j]) * static_cast<std::uint64_t>(r[j]);
            degree += step;
        }
        if (degree > UINT32_MAX) throw std::overflow_error("specialized degree exceeds 32 bits");
        terms[Polynomial::Exponent{static_cast<std::uint32_t>(degree)}] += c;
    }
    return Polynomial(1, std::move(terms));
}

std::size_t nonzero_coefficient_count(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    return p.term_count();
}

Polynomial scale(const Polynomial& p, Complex c) {
    if (c == Complex(0.0)) throw std::invalid_argument("scale factor must be nonzero");
    Polynomial::TermMap terms = p.terms();
    for (auto& [exp, coeff] : terms) coeff *= c;
    return Polynomial(p.nvars(), std::move(terms));
}

double min_coeff_modulus(const Polynomial& p) {
    if (p.is_zero()) throw ZeroPolynomial();
    double m = INFINITY;
    for (const auto& [exp, c] : p.terms()) m = std::min(m, std::abs(c));
    return m;
}

}  // namespace mahler
