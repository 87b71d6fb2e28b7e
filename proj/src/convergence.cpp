#include "mahler/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "mahler/errors.hpp"

namespace mahler {
namespace {

MeasureResult measure_tuple(MeasureKind kind, std::span<const Polynomial> polys, const QuadConfig& cfg) {
    switch (kind.tag) {
        case MeasureKind::Tag::classic: return mahler(polys.front(), cfg);
        case MeasureKind::Tag::higher: return higher_mahler(polys.front(), kind.s, cfg);
        case MeasureKind::Tag::multiple: return multiple_mahler(polys, cfg);
        case MeasureKind::Tag::max: return generalized_mahler(polys, cfg);
    }
    throw std::invalid_argument("unknown measure kind");
}

ConvergenceTable build(MeasureKind kind, std::span<const Polynomial> input, std::span<const std::int64_t> m_values,
                       const QuadConfig& cfg, Execution exec) {
    if (input.empty()) throw std::invalid_argument("at least one polynomial is required");
    std::size_t n = 2;
    for (const Polynomial& p : input) {
        if (p.is_zero()) throw ZeroPolynomial();
        n = std::max(n, p.nvars());
    }
    ConvergenceTable table;
    table.kind = kind;
    for (const Polynomial& p : input) table.polys.push_back(p.lifted(n));
    table.target = measure_tuple(kind, table.polys, cfg);

    std::vector<std::int64_t> ms(m_values.begin(), m_values.end());
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
    const std::vector<RVector> seq = admissible_sequence(n, ms);

    std::vector<std::optional<ConvergenceRow>> rows(seq.size());
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto count = static_cast<std::int64_t>(seq.size());
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            const RVector& r = seq[static_cast<std::size_t>(i)];
            ConvergenceRow row{r, *r.relation()->q, std::nullopt, false};
            std::vector<Polynomial> special;
            for (const Polynomial& p : table.polys) {
                special.push_back(specialize(p, r.entries()));
                if (special.back().is_zero()) row.flagged = true;
            }
            if (!row.flagged) row.value = measure_tuple(kind, special, cfg);
            rows[static_cast<std::size_t>(i)] = std::move(row);
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    for (auto& row : rows) table.rows.push_back(std::move(*row));
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.q < b.q; });
    return table;
}

}  // namespace

double ConvergenceRow::deviation(const MeasureResult& target) const {
    if (flagged || !value) return std::numeric_limits<double>::quiet_NaN();
    return value->value - target.value;
}

ConvergenceTable boyd_lawton_table(const Polynomial& p, std::span<const std::int64_t> m_values,
                                   const QuadConfig& cfg, Execution exec) {
    return build(MeasureKind::classic(), std::span(&p, 1), m_values, cfg, exec);
}

ConvergenceTable generalized_table(std::span<const Polynomial> polys, std::span<const std::int64_t> m_values,
                                   const QuadConfig& cfg, Execution exec) {
    return build(MeasureKind::max(), polys, m_values, cfg, exec);
}

ConvergenceTable multiple_table(std::span<const Polynomial> polys, std::span<const std::int64_t> m_values,
                                const QuadConfig& cfg, Execution exec) {
    return build(MeasureKind::multiple(), polys, m_values, cfg, exec);
}

ConvergenceTable higher_table(const Polynomial& p, int s, std::span<const std::int64_t> m_values,
                              const QuadConfig& cfg, Execution exec) {
    if (s < 1) throw std::invalid_argument("higher Mahler measure needs s >= 1");
    return build(MeasureKind::higher(s), std::span(&p, 1), m_values, cfg, exec);
}

ConvergenceTable convergence_table(MeasureKind kind, std::span<const Polynomial> polys,
                                   std::span<const std::int64_t> m_values, const QuadConfig& cfg, Execution exec) {
    if (polys.empty()) throw std::invalid_argument("at least one polynomial is required");
    switch (kind.tag) {
        case MeasureKind::Tag::classic: return boyd_lawton_table(polys.front(), m_values, cfg, exec);
        case MeasureKind::Tag::higher: return higher_table(polys.front(), kind.s, m_values, cfg, exec);
        case MeasureKind::Tag::multiple: return multiple_table(polys, m_values, cfg, exec);
        case MeasureKind::Tag::max: return generalized_table(polys, m_values, cfg, exec);
    }
    throw std::invalid_argument("unknown measure kind");
}

TailSummary tail_summary(const ConvergenceTable& t, std::size_t tail) {
    if (tail == 0) throw std::invalid_argument("tail must be positive");
    std::vector<double> devs;
    for (const ConvergenceRow& row : t.rows)
        if (!row.flagged && row.value) devs.push_back(row.deviation(t.target));
    if (devs.size() < tail) throw std::invalid_argument("table has fewer unflagged rows than the requested tail");
    const auto first = devs.end() - static_cast<std::ptrdiff_t>(tail);
    TailSummary s;
    double sum = 0.0;
    for (auto it = first; it != devs.end(); ++it) sum += *it;
    s.tail_mean = sum / static_cast<double>(tail);
    const auto [lo, hi] = std::minmax_element(first, devs.end());
    s.tail_spread = *hi - *lo;
    return s;
}

}  // namespace mahler
