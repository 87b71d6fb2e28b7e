#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mahler/convergence.hpp"
#include "mahler/lattice.hpp"
#include "mahler/quadrature.hpp"
#include "mahler/result.hpp"
#include "mahler/sublevel.hpp"

namespace mahler {

/// Version of the JSON report layout.
inline constexpr int kReportSchema = 1;

/// Library version string (`git describe` of the build tree when available).
std::string_view version_string();

/// Shortest decimal that round-trips to the same double ("nan"/"inf" spelled out).
std::string format_double(double v);

nlohmann::json to_json(const MeasureResult& r);
nlohmann::json to_json(const Relation& rel);
nlohmann::json to_json(const SublevelEstimate& e);
nlohmann::json to_json(const SublevelFit& f);
nlohmann::json to_json(const VanishingReport& v);
nlohmann::json to_json(const ConvergenceTable& t);
nlohmann::json to_json(const QuadConfig& cfg);

/// Fixed-column CSV tables. Column orders:
///   measure:     kind,value,err,method,effort,converged
///   convergence: kind,r,q,value,err,target,deviation   (r joined with ';')
///   sublevel:    y,estimate,ci,samples
///   qr:          r,q,witness                          (vectors joined with ';')
///   jtable:      ell,delta,y,j,bound
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    void write(std::ostream& out) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

CsvTable measure_csv(std::string_view kind, const MeasureResult& r);
CsvTable convergence_csv(const ConvergenceTable& t);
CsvTable sublevel_csv(const std::vector<SublevelEstimate>& rows);
CsvTable vanishing_csv(const VanishingReport& v);

std::string join(std::span<const std::int64_t> values, char sep = ';');

}  // namespace mahler
