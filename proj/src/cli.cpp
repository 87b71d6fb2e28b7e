#include "mahler/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mahler/convergence.hpp"
#include "mahler/errors.hpp"
#include "mahler/jensen.hpp"
#include "mahler/lattice.hpp"
#include "mahler/measures.hpp"
#include "mahler/parse.hpp"
#include "mahler/quadrature.hpp"
#include "mahler/report.hpp"
#include "mahler/roots.hpp"
#include "mahler/sublevel.hpp"

namespace mahler::cli {
namespace {

using nlohmann::json;

struct Report {
    json doc;
    std::optional<CsvTable> csv;
    bool tolerance_met = true;
};

struct Options {
    CliConfig cfg;
    // measure
    std::string poly;
    std::vector<double> at;
    bool normalize = false;
    // higher / converge
    int s = 1;
    // multiple / mmax / converge / sublevel
    std::vector<std::string> polys;
    // qr
    std::vector<std::int64_t> r;
    std::size_t dim = 0;
    // converge
    std::string kind = "classic";
    std::int64_t mmax = 0;
    std::int64_t mstep = 5;
    std::size_t tail = 5;
    // sublevel
    std::vector<double> ys;
    std::string op = "measure";
    std::string mode = "union";
    std::string integrand = "product";
    // jtable
    std::vector<int> ells{1, 2, 3, 4};
    std::vector<double> deltas;
    std::vector<int> ks;
};

QuadConfig quad_config(const CliConfig& c, bool validate = true) {
    QuadConfig q;
    q.tol = c.tol;
    q.qmc_samples = c.samples;
    q.randomizations = c.randomizations;
    q.seed = c.seed;
    if (validate) q.validate();
    return q;
}

// Sublevel sampling takes any sample count, so its header skips QMC validation.
json header(std::string_view command, const CliConfig& c, bool validate = true) {
    return {{"schema", kReportSchema},
            {"version", version_string()},
            {"command", command},
            {"config", to_json(quad_config(c, validate))}};
}

std::vector<Polynomial> parse_all(const std::vector<std::string>& exprs) {
    std::vector<Polynomial> out;
    for (const auto& e : exprs) out.push_back(parse_poly(e));
    return out;
}

json poly_strings(const std::vector<Polynomial>& polys) {
    json arr = json::array();
    for (const auto& p : polys) arr.push_back(to_string(p));
    return arr;
}

void merge(json& doc, const json& fields) {
    for (auto it = fields.begin(); it != fields.end(); ++it) doc[it.key()] = it.value();
}

Report measure_report(std::string_view command, std::string_view kind, const std::vector<Polynomial>& polys,
                      const MeasureResult& r, const CliConfig& c) {
    Report rep{header(command, c), measure_csv(kind, r), r.converged};
    rep.doc["input"] = {{"polys", poly_strings(polys)}};
    merge(rep.doc, to_json(r));
    return rep;
}

Report cmd_measure(const Options& o) {
    Polynomial p = parse_poly(o.poly);
    if (o.normalize) p = scale(p, 1.0 / min_coeff_modulus(p));
    const MeasureResult r = mahler(p, quad_config(o.cfg));
    Report rep = measure_report("measure", "classic", {p}, r, o.cfg);
    rep.doc["k"] = nonzero_coefficient_count(p);
    rep.doc["min_coeff_modulus"] = min_coeff_modulus(p);
    if (p.nvars() == 1 && !p.is_constant()) {
        const RootSet rs = roots(p);
        json arr = json::array();
        for (const Root& root : rs.roots)
            arr.push_back({{"re", root.value.real()},
                           {"im", root.value.imag()},
                           {"multiplicity", root.multiplicity},
                           {"radius", root.error_radius}});
        rep.doc["roots"] = arr;
        rep.doc["near_circle_angles"] = roots_near_circle(rs, kSplitBand);
        // Cross-check with the root-based formula directly.
        rep.doc["jensen"] = to_json(mahler_univariate(p));
    }
    if (!o.at.empty()) {
        const Complex v = evaluate(p, TorusPoint(o.at));
        rep.doc["value_at"] = {{"angles", o.at}, {"re", v.real()}, {"im", v.imag()}};
    }
    return rep;
}

Report cmd_higher(const Options& o) {
    const Polynomial p = parse_poly(o.poly);
    const MeasureResult r = higher_mahler(p, o.s, quad_config(o.cfg));
    Report rep = measure_report("higher", "higher", {p}, r, o.cfg);
    rep.doc["s"] = o.s;
    return rep;
}

Report cmd_multiple(const Options& o) {
    const auto polys = parse_all(o.polys);
    return measure_report("multiple", "multiple", polys, multiple_mahler(polys, quad_config(o.cfg)), o.cfg);
}

Report cmd_mmax(const Options& o) {
    const auto polys = parse_all(o.polys);
    return measure_report("mmax", "max", polys, generalized_mahler(polys, quad_config(o.cfg)), o.cfg);
}

Report cmd_qr(const Options& o) {
    Report rep{header("qr", o.cfg), std::nullopt, true};
    CsvTable csv({"r", "q", "witness"});
    if (o.dim > 0) {
        const auto seq = admissible_sequence(o.dim, o.r);
        json rows = json::array();
        for (const RVector& r : seq) {
            json row = to_json(*r.relation());
            row["r"] = std::vector<std::int64_t>(r.entries().begin(), r.entries().end());
            rows.push_back(row);
            csv.add_row({join(r.entries()), std::to_string(*r.relation()->q), join(r.relation()->witness)});
        }
        rep.doc["dim"] = o.dim;
        rep.doc["rows"] = rows;
    } else {
        const Relation rel = q_of_r(o.r);
        rep.doc["r"] = o.r;
        merge(rep.doc, to_json(rel));
        csv.add_row({join(o.r), rel.infinite() ? "inf" : std::to_string(*rel.q), join(rel.witness)});
    }
    rep.csv = std::move(csv);
    return rep;
}

MeasureKind parse_kind(const std::string& name, int s) {
    if (name == "classic") return MeasureKind::classic();
    if (name == "higher") return MeasureKind::higher(s);
    if (name == "multiple") return MeasureKind::multiple();
    if (name == "max") return MeasureKind::max();
    throw std::invalid_argument("unknown kind '" + name + "'");
}

Report cmd_converge(const Options& o) {
    if (o.mmax < 1 || o.mstep < 1) throw std::invalid_argument("--mmax and --mstep must be positive");
    const auto polys = parse_all(o.polys);
    std::vector<std::int64_t> ms;
    for (std::int64_t m = o.mstep; m <= o.mmax; m += o.mstep) ms.push_back(m);
    if (ms.empty()) ms.push_back(o.mmax);
    const ConvergenceTable table = convergence_table(parse_kind(o.kind, o.s), polys, ms, quad_config(o.cfg));
    Report rep{header("converge", o.cfg), convergence_csv(table), table.target.converged};
    for (const auto& row : table.rows)
        if (row.value && !row.value->converged) rep.tolerance_met = false;
    merge(rep.doc, to_json(table));
    const std::size_t tail = std::min(o.tail, table.rows.size());
    try {
        const TailSummary ts = tail_summary(table, tail);
        rep.doc["tail"] = {{"rows", tail}, {"mean", ts.tail_mean}, {"spread", ts.tail_spread}};
    } catch (const std::invalid_argument&) {
        rep.doc["tail"] = nullptr;
    }
    return rep;
}

Report cmd_sublevel(const Options& o) {
    const auto polys = parse_all(o.polys);
    const std::uint64_t samples = o.cfg.samples_given ? o.cfg.samples : kDefaultSublevelSamples;
    const std::vector<double> ys = o.ys.empty() ? default_y_grid() : o.ys;
    Report rep{header("sublevel", o.cfg, false), std::nullopt, true};
    rep.doc["config"]["samples"] = samples;
    rep.doc["input"] = {{"polys", poly_strings(polys)}};
    rep.doc["op"] = o.op;
    if (o.op == "measure") {
        std::vector<SublevelEstimate> rows;
        json arr = json::array();
        for (double y : ys) {
            rows.push_back(sublevel_measure(polys.front(), y, samples, o.cfg.seed));
            arr.push_back(to_json(rows.back()));
        }
        rep.doc["rows"] = arr;
        rep.csv = sublevel_csv(rows);
    } else if (o.op == "fit") {
        const SublevelFit fit = fit_sublevel_exponent(polys.front(), ys, samples, o.cfg.seed);
        merge(rep.doc, to_json(fit));
        rep.csv = sublevel_csv(fit.points);
    } else if (o.op == "integral" || o.op == "vanish") {
        const SetMode mode = o.mode == "intersection" ? SetMode::intersection : SetMode::union_of;
        if (o.mode != "union" && o.mode != "intersection")
            throw std::invalid_argument("--mode must be union or intersection");
        if (o.integrand != "product" && o.integrand != "max")
            throw std::invalid_argument("--integrand must be product or max");
        const Combine kind = o.integrand == "max" ? Combine::max : Combine::product;
        rep.doc["mode"] = o.mode;
        rep.doc["integrand"] = o.integrand;
        VanishingReport v;
        if (o.op == "integral") {
            for (double y : ys)
                v.rows.push_back({y, singular_log_integral(polys, y, mode, kind, samples, o.cfg.seed)});
        } else {
            v = vanishing_report(polys, ys, mode, kind, samples, o.cfg.seed);
        }
        merge(rep.doc, to_json(v));
        if (o.op == "integral") rep.doc.erase("decreasing");
        rep.csv = vanishing_csv(v);
    } else {
        throw std::invalid_argument("--op must be measure, fit, integral or vanish");
    }
    return rep;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Report cmd_jtable(const Options& o) {
    std::vector<double> ys = o.ys;
    if (ys.empty())
        for (int e = 1; e <= 6; ++e) ys.push_back(std::pow(10.0, -e));
    if (!o.deltas.empty() && !o.ks.empty()) throw std::invalid_argument("give either --delta or --k, not both");
    std::vector<std::pair<double, int>> deltas;  // (delta, k or 0)
    for (double d : o.deltas) deltas.emplace_back(d, 0);
    for (int k : o.ks) {
        if (k < 2) throw std::invalid_argument("--k must be at least 2");
        deltas.emplace_back(1.0 / (k - 1), k);
    }
    if (deltas.empty())
        for (double d : {1.0, 0.5, 1.0 / 3.0}) deltas.emplace_back(d, 0);

    Report rep{header("jtable", o.cfg), std::nullopt, true};
    CsvTable csv({"ell", "delta", "y", "j", "bound"});
    json rows = json::array();
    for (int ell : o.ells)
        for (const auto& [delta, k] : deltas)
            for (double y : ys) {
                const double j = k > 0 ? i_closed_form(ell, k, y) : j_closed_form({ell, delta, y});
                const double bound = std::pow(y, delta) * factorial(ell + 1) *
                                     std::pow(std::max(1.0 / delta, -std::log(y)), ell);
                json row{{"ell", ell}, {"delta", delta}, {"y", y}, {"j", j}, {"bound", bound}};
                if (k > 0) row["k"] = k;
                rows.push_back(row);
                csv.add_row({std::to_string(ell), format_double(delta), format_double(y), format_double(j),
                             format_double(bound)});
            }
    rep.doc["rows"] = rows;
    rep.csv = std::move(csv);
    return rep;
}

void add_common(CLI::App& app, CliConfig& c) {
    app.add_option("--tol", c.tol, "Quadrature tolerance")->check(CLI::PositiveNumber);
    app.add_option_function<std::uint64_t>(
        "--samples",
        [&c](std::uint64_t v) {
            c.samples = v;
            c.samples_given = true;
        },
        "QMC points per randomization (power of two); Monte Carlo samples for sublevel");
    app.add_option("--randomizations", c.randomizations, "QMC randomizations (>= 2)");
    app.add_option("--seed", c.seed, "Random seed");
    app.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--output,-o", c.output, "Write the report to this file");
}

}  // namespace

const std::vector<SubcommandInfo>& subcommand_registry() {
    static const std::vector<SubcommandInfo> registry{
        {"measure",
         "Mahler measure m(P), with roots, k and coefficient statistics",
         {"parse_poly", "mahler", "mahler_univariate", "roots", "roots_near_circle", "nonzero_coefficient_count",
          "min_coeff_modulus", "scale", "evaluate", "integrate_torus_qmc"}},
        {"higher", "Higher Mahler measure m_s(P)", {"higher_mahler", "integrate_circle"}},
        {"multiple", "Multiple Mahler measure m(P_1, ..., P_s)", {"multiple_mahler"}},
        {"mmax", "Generalized Mahler measure m_max(P_1, ..., P_s)", {"generalized_mahler"}},
        {"qr", "Minimal relation height q(r), or admissible r sequences", {"q_of_r", "admissible_sequence"}},
        {"converge",
         "Measures of P_r along r = (1, m, ...) against the multivariate value",
         {"boyd_lawton_table", "generalized_table", "multiple_table", "higher_table", "tail_summary", "specialize"}},
        {"sublevel",
         "Sublevel-set measures, exponent fits and singular log integrals",
         {"sublevel_measure", "fit_sublevel_exponent", "singular_log_integral", "vanishing_report"}},
        {"jtable", "Closed forms J_{l,delta}(y) and I_{l,k}(y) with their bound", {"j_closed_form", "i_closed_form"}},
    };
    return registry;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Mahler measures and Boyd-Lawton limits", "mahler"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    add_common(app, o.cfg);
    app.set_version_flag("--version", std::string(version_string()));

    std::map<std::string, CLI::App*> subs;
    for (const auto& info : subcommand_registry())
        subs[std::string(info.name)] = app.add_subcommand(std::string(info.name), std::string(info.summary));

    subs["measure"]->add_option("poly", o.poly, "Polynomial expression")->required();
    subs["measure"]->add_option("--at", o.at, "Also evaluate at these torus angles")->delimiter(',');
    subs["measure"]->add_flag("--normalize", o.normalize, "Divide by the smallest coefficient modulus first");
    subs["higher"]->add_option("-s", o.s, "Power s")->required()->check(CLI::PositiveNumber);
    subs["higher"]->add_option("poly", o.poly, "Polynomial expression")->required();
    subs["multiple"]->add_option("polys", o.polys, "Polynomial expressions")->required();
    subs["mmax"]->add_option("polys", o.polys, "Polynomial expressions")->required();
    subs["qr"]->add_option("r", o.r, "Positive integers r_1 ... r_n (m values with --dim)")->required();
    subs["qr"]->add_option("--dim", o.dim, "Emit r(m) = (1, m, ..., m^(dim-1)) for each given m");
    auto* conv = subs["converge"];
    conv->add_option("polys", o.polys, "Polynomial expressions")->required();
    conv->add_option("--kind", o.kind, "Measure kind")->check(CLI::IsMember({"classic", "higher", "multiple", "max"}));
    conv->add_option("-s", o.s, "Power for --kind higher")->check(CLI::PositiveNumber);
    conv->add_option("--mmax", o.mmax, "Largest m")->required();
    conv->add_option("--mstep", o.mstep, "Step between m values");
    conv->add_option("--tail", o.tail, "Rows in the tail summary");
    auto* sub = subs["sublevel"];
    sub->add_option("polys", o.polys, "Polynomial expressions")->required();
    sub->add_option("--y", o.ys, "Level(s) y")->delimiter(',');
    sub->add_option("--op", o.op, "measure | fit | integral | vanish");
    sub->add_option("--mode", o.mode, "union | intersection");
    sub->add_option("--integrand", o.integrand, "product | max");
    auto* jt = subs["jtable"];
    jt->add_option("--ell", o.ells, "Powers ell")->delimiter(',');
    jt->add_option("--delta", o.deltas, "Exponents delta")->delimiter(',');
    jt->add_option("--k", o.ks, "Coefficient counts k (delta = 1/(k-1))")->delimiter(',');
    jt->add_option("--y", o.ys, "Levels y in (0, 1]")->delimiter(',');

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << version_string() << '\n';
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    Report rep;
    try {
        if (subs["measure"]->parsed()) rep = cmd_measure(o);
        else if (subs["higher"]->parsed()) rep = cmd_higher(o);
        else if (subs["multiple"]->parsed()) rep = cmd_multiple(o);
        else if (subs["mmax"]->parsed()) rep = cmd_mmax(o);
        else if (subs["qr"]->parsed()) rep = cmd_qr(o);
        else if (subs["converge"]->parsed()) rep = cmd_converge(o);
        else if (subs["sublevel"]->parsed()) rep = cmd_sublevel(o);
        else rep = cmd_jtable(o);
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kToleranceNotMet;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }

    std::ostringstream buffer;
    if (o.cfg.format == "csv" && rep.csv)
        rep.csv->write(buffer);
    else
        buffer << rep.doc.dump(2) << '\n';
    if (o.cfg.output.empty()) {
        out << buffer.str();
    } else {
        std::ofstream file(o.cfg.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open " << o.cfg.output << '\n';
            return kFailure;
        }
        file << buffer.str();
    }
    if (!rep.tolerance_met) {
        err << "warning: tolerance not met\n";
        return kToleranceNotMet;
    }
    return kOk;
}

}  // namespace mahler::cli
