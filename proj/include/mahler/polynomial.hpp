#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace mahler {

using Complex = std::complex<double>;

/// Sparse polynomial in `nvars` variables with complex coefficients.
///
/// Terms live in an ordered map keyed by exponent vector. The map never holds
/// a zero coefficient: construction and every arithmetic operation drop
/// coefficients that vanish exactly or fall below 1e-14 times the largest
/// coefficient magnitude (substitution collisions leave such residue). The
/// zero polynomial is the empty map.
class Polynomial {
public:
    using Exponent = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponent, Complex>;

    /// Relative magnitude below which a coefficient is treated as cancelled.
    static constexpr double kDropThreshold = 1e-14;

    explicit Polynomial(std::size_t nvars = 1);
    Polynomial(std::size_t nvars, TermMap terms);

    static Polynomial constant(std::size_t nvars, Complex c);
    /// The variable x_{index+1} (0-based index).
    static Polynomial variable(std::size_t nvars, std::size_t index);
    /// Univariate polynomial from dense coefficients, lowest degree first.
    static Polynomial from_dense(std::span<const Complex> coeffs);

    std::size_t nvars() const noexcept { return nvars_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Zero or one stored term (a·x^k, including constants).
    bool is_monomial() const noexcept { return terms_.size() <= 1; }

    /// Highest exponent of variable `var` over all terms (0 for the zero polynomial).
    std::uint32_t degree_in(std::size_t var) const;
    /// Variables that occur with a positive exponent in some term.
    std::vector<bool> used_variables() const;

    /// Univariate only: coefficient of the highest power.
    Complex leading_coefficient() const;
    /// Univariate only: dense coefficients, lowest degree first.
    std::vector<Complex> dense_coefficients() const;

    /// Same polynomial viewed in `nvars` >= nvars() variables (new ones unused).
    Polynomial lifted(std::size_t nvars) const;
    /// Keeps the variables flagged in `keep` (in order); the others must be unused.
    Polynomial compressed(const std::vector<bool>& keep) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);

    friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
    friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
    friend Polynomial operator*(Polynomial lhs, const Polynomial& rhs) { return lhs *= rhs; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void canonicalize();

    std::size_t nvars_;
    TermMap terms_;
};

/// Point of the unit n-torus, stored as angles in [0, 2π).
class TorusPoint {
public:
    explicit TorusPoint(std::vector<double> angles);

    std::size_t size() const noexcept { return angles_.size(); }
    std::span<const double> angles() const noexcept { return angles_; }
    Complex coordinate(std::size_t j) const;

private:
    std::vector<double> angles_;
};

/// Σ c · Π z_j^{e_j} at the torus point with the given angles.
Complex evaluate(const Polynomial& p, const TorusPoint& point);
/// Same, for raw angles (hot-path overload; no normalization).
Complex evaluate(const Polynomial& p, std::span<const double> angles);

/// Precomputed term table for repeated evaluation on the torus.
///
/// Each term's value is c·exp(i Σ e_j θ_j), so evaluation costs one sincos per
/// term and never accumulates modulus drift.
class TorusEvaluator {
public:
    explicit TorusEvaluator(const Polynomial& p);

    std::size_t nvars() const noexcept { return nvars_; }
    Complex operator()(std::span<const double> angles) const;
    /// log|P| with |P| clamped to the smallest normal double.
    double log_abs(std::span<const double> angles) const;

private:
    std::size_t nvars_;
    std::vector<double> exponents_;  // term-major, nvars_ per term
    std::vector<Complex> coeffs_;
};

/// Boyd–Lawton specialization P(x^{r_1}, …, x^{r_n}) as a univariate polynomial.
Polynomial specialize(const Polynomial& p, std::span<const std::int64_t> r);

/// Number of stored (nonzero) coefficients.
std::size_t nonzero_coefficient_count(const Polynomial& p);

/// Every coefficient multiplied by c (c != 0).
Polynomial scale(const Polynomial& p, Complex c);

/// Smallest coefficient modulus.
double min_coeff_modulus(const Polynomial& p);

}  // namespace mahler
