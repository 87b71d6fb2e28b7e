#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mahler/execution.hpp"
#include "mahler/lattice.hpp"
#include "mahler/measures.hpp"
#include "mahler/polynomial.hpp"
#include "mahler/result.hpp"

namespace mahler {

struct ConvergenceRow {
    RVector r;
    std::int64_t q = 0;
    /// Measure of the specialized polynomials; empty for flagged rows.
    std::optional<MeasureResult> value;
    /// Set when some specialized polynomial vanished identically.
    bool flagged = false;

    /// value − target; NaN for flagged rows.
    double deviation(const MeasureResult& target) const;
};

/// Measures of specializations P_r along r = (1, m, …, m^{n−1}) next to the
/// direct multivariate value they should approach as q(r) → ∞.
struct ConvergenceTable {
    MeasureKind kind;
    std::vector<Polynomial> polys;
    MeasureResult target;
    /// Sorted by increasing q.
    std::vector<ConvergenceRow> rows;
};

struct TailSummary {
    double tail_mean = 0.0;
    double tail_spread = 0.0;
};

/// Classic measure: rows via Jensen, target via torus QMC.
ConvergenceTable boyd_lawton_table(const Polynomial& p, std::span<const std::int64_t> m_values,
                                   const QuadConfig& cfg = {}, Execution exec = Execution::parallel);
/// m_max of the specialized tuple (circle quadrature) against m_max of the polys.
ConvergenceTable generalized_table(std::span<const Polynomial> polys, std::span<const std::int64_t> m_values,
                                   const QuadConfig& cfg = {}, Execution exec = Execution::parallel);
/// Multiple measure of the specialized tuple against the multivariate one.
ConvergenceTable multiple_table(std::span<const Polynomial> polys, std::span<const std::int64_t> m_values,
                                const QuadConfig& cfg = {}, Execution exec = Execution::parallel);
/// Higher measure m_s of P_r against m_s(P).
ConvergenceTable higher_table(const Polynomial& p, int s, std::span<const std::int64_t> m_values,
                              const QuadConfig& cfg = {}, Execution exec = Execution::parallel);

/// Dispatch on kind (classic and higher use polys.front()).
ConvergenceTable convergence_table(MeasureKind kind, std::span<const Polynomial> polys,
                                   std::span<const std::int64_t> m_values, const QuadConfig& cfg = {},
                                   Execution exec = Execution::parallel);

/// Mean and max − min of the last `tail` unflagged deviations. Throws
/// std::invalid_argument when fewer rows are available.
TailSummary tail_summary(const ConvergenceTable& t, std::size_t tail);

}  // namespace mahler
