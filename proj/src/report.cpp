#include "mahler/report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "mahler/parse.hpp"

#ifndef MAHLER_VERSION
#define MAHLER_VERSION "unknown"
#endif

namespace mahler {

std::string_view version_string() { return MAHLER_VERSION; }

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string join(std::span<const std::int64_t> values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += sep;
        out += std::to_string(values[i]);
    }
    return out;
}

nlohmann::json to_json(const MeasureResult& r) {
    nlohmann::json j{{"value", r.value},
                     {"err", r.error_estimate},
                     {"method", method_name(r.method)},
                     {"effort", r.effort},
                     {"converged", r.converged}};
    j["seed"] = r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const Relation& rel) {
    if (rel.infinite()) return {{"q", "inf"}, {"witness", nlohmann::json::array()}};
    return {{"q", *rel.q}, {"witness", rel.witness}};
}

nlohmann::json to_json(const SublevelEstimate& e) {
    return {{"y", e.y},           {"estimate", e.measure_est}, {"ci", e.ci_halfwidth},
            {"samples", e.samples}, {"hits", e.hits},           {"seed", e.seed},
            {"nvars", e.nvars}};
}

nlohmann::json to_json(const SublevelFit& f) {
    nlohmann::json points = nlohmann::json::array();
    for (const auto& p : f.points) points.push_back(to_json(p));
    return {{"c_hat", f.c_hat},
            {"delta_hat", f.delta_hat},
            {"y_grid", f.y_grid},
            {"residual", f.residual},
            {"points", points}};
}

nlohmann::json to_json(const VanishingReport& v) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : v.rows) {
        nlohmann::json j = to_json(row.estimate);
        j["y"] = row.y;
        rows.push_back(j);
    }
    return {{"rows", rows}, {"decreasing", v.decreasing}};
}

nlohmann::json to_json(const ConvergenceTable& t) {
    nlohmann::json polys = nlohmann::json::array();
    for (const auto& p : t.polys) polys.push_back(to_string(p));
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json j{{"kind", t.kind.name()},
                         {"r", std::vector<std::int64_t>(row.r.entries().begin(), row.r.entries().end())},
                         {"q", row.q},
                         {"flagged", row.flagged},
                         {"target", t.target.value}};
        if (row.value) {
            j["value"] = row.value->value;
            j["err"] = row.value->error_estimate;
            j["method"] = method_name(row.value->method);
            j["deviation"] = row.deviation(t.target);
            j["converged"] = row.value->converged;
        } else {
            j["value"] = nullptr;
            j["err"] = nullptr;
            j["deviation"] = nullptr;
        }
        rows.push_back(j);
    }
    nlohmann::json kind{{"name", t.kind.name()}};
    if (t.kind.tag == MeasureKind::Tag::higher) kind["s"] = t.kind.s;
    return {{"kind", kind}, {"polys", polys}, {"target", to_json(t.target)}, {"rows", rows}};
}

nlohmann::json to_json(const QuadConfig& cfg) {
    return {{"tol", cfg.tol},
            {"max_depth", cfg.max_depth},
            {"samples", cfg.qmc_samples},
            {"randomizations", cfg.randomizations},
            {"seed", cfg.seed}};
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("CSV row width does not match header");
    rows_.push_back(std::move(cells));
}

void CsvTable::write(std::ostream& out) const {
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
        out << '\n';
    };
    line(header_);
    for (const auto& row : rows_) line(row);
}

CsvTable measure_csv(std::string_view kind, const MeasureResult& r) {
    CsvTable t({"kind", "value", "err", "method", "effort", "converged"});
    t.add_row({std::string(kind), format_double(r.value), format_double(r.error_estimate),
               std::string(method_name(r.method)), std::to_string(r.effort), r.converged ? "true" : "false"});
    return t;
}

CsvTable convergence_csv(const ConvergenceTable& table) {
    CsvTable t({"kind", "r", "q", "value", "err", "target", "deviation"});
    for (const auto& row : table.rows) {
        const bool has = row.value.has_value();
        t.add_row({table.kind.name(), join(row.r.entries()), std::to_string(row.q),
                   has ? format_double(row.value->value) : "", has ? format_double(row.value->error_estimate) : "",
                   format_double(table.target.value), has ? format_double(row.deviation(table.target)) : ""});
    }
    return t;
}

CsvTable sublevel_csv(const std::vector<SublevelEstimate>& rows) {
    CsvTable t({"y", "estimate", "ci", "samples"});
    for (const auto& e : rows)
        t.add_row({format_double(e.y), format_double(e.measure_est), format_double(e.ci_halfwidth),
                   std::to_string(e.samples)});
    return t;
}

CsvTable vanishing_csv(const VanishingReport& v) {
    CsvTable t({"y", "estimate", "ci", "samples"});
    for (const auto& row : v.rows)
        t.add_row({format_double(row.y), format_double(row.estimate.value),
                   format_double(1.959963984540054 * row.estimate.error_estimate),
                   std::to_string(row.estimate.effort)});
    return t;
}

}  // namespace mahler
