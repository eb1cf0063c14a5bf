#pragma once

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "calibgeo/calibration.hpp"
#include "calibgeo/catalog.hpp"
#include "calibgeo/csv.hpp"
#include "calibgeo/errors.hpp"
#include "calibgeo/geodesic.hpp"
#include "calibgeo/svg.hpp"

namespace calibgeo {
namespace cli {

struct CliConfig {
    std::string entry;
    std::string entry_flag;
    int competitors = 100;
    int plot_competitors = 0;
    std::int64_t seed = 42;
    double tol_len = -1.0;
    std::string start;
    int dir = 1;
    double step = 1e-3;
    std::string curve_path;
    std::string out_path;
    int svg_width = 800;
    int svg_height = 600;
};

namespace detail {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitArgs = 2;
constexpr int kExitNumerical = 3;

inline Point2 parse_point(const std::string& text) {
    double x = 0.0, y = 0.0;
    char trailing = 0;
    if (std::sscanf(text.c_str(), " %lf , %lf %c", &x, &y, &trailing) != 2)
        throw CLI::ValidationError("--start", "expected 'x,y', got '" + text + "'");
    return {x, y};
}

inline std::string resolve_entry_name(const CliConfig& cfg) {
    if (!cfg.entry.empty() && !cfg.entry_flag.empty() && cfg.entry != cfg.entry_flag)
        throw CLI::ValidationError("entry", "positional entry and --entry disagree");
    const std::string& name = !cfg.entry.empty() ? cfg.entry : cfg.entry_flag;
    if (name.empty()) throw CLI::RequiredError("entry");
    return name;
}

inline void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream file(out_path);
    if (!file) throw Error("IoError", "cannot open '" + out_path + "' for writing");
    file << payload;
}

inline int cmd_list() {
    for (const auto& e : catalog_entries()) std::cout << e.name << "\n";
    return kExitOk;
}

inline int cmd_verify(const CliConfig& cfg) {
    const CatalogEntry& entry = entry_by_name(resolve_entry_name(cfg));
    const auto competitors =
        generate_competitors(entry.default_endpoints.first, entry.default_endpoints.second,
                             entry.pair.domain, static_cast<std::uint64_t>(cfg.seed), cfg.competitors);
    Tolerances tol;
    if (cfg.tol_len > 0.0) tol.tol_len = cfg.tol_len;
    const VerificationReport report =
        verify_minimizer(entry.pair, entry.minimizer, competitors, tol, entry.name, cfg.seed);
    emit(cfg.out_path, report.to_json());
    return report.passed ? kExitOk : kExitVerifyFailed;
}

inline int cmd_trace(const CliConfig& cfg) {
    const CatalogEntry& entry = entry_by_name(resolve_entry_name(cfg));
    if (cfg.start.empty()) throw CLI::RequiredError("--start");
    const Point2 start = parse_point(cfg.start);
    const Domain& domain = entry.pair.domain;
    if (!domain.interior(start))
        throw CLI::ValidationError("--start", "start point is outside the entry's domain");
    TraceConfig trace_cfg;
    trace_cfg.step = cfg.step;
    trace_cfg.corrector_tol = 1e-10 * (1.0 + std::abs(entry.pair.g(start)));
    trace_cfg.stop = [&domain](Point2 p) { return !domain.interior(p); };
    const Polyline traced = trace_level(entry.pair.g, start, cfg.dir, trace_cfg);
    emit(cfg.out_path, polyline_to_csv(traced));
    return kExitOk;
}

inline int cmd_length(const CliConfig& cfg) {
    const CatalogEntry& entry = entry_by_name(resolve_entry_name(cfg));
    if (cfg.curve_path.empty()) throw CLI::RequiredError("--curve");
    const Polyline curve = read_polyline_csv(cfg.curve_path);
    const double len = weighted_length(Curve{curve}, entry.pair.rho);
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.15g\n", len);
    std::cout << buf;
    return kExitOk;
}

inline int cmd_plot(const CliConfig& cfg) {
    const CatalogEntry& entry = entry_by_name(resolve_entry_name(cfg));
    const auto minimizer = sample_curve(entry.minimizer, 400);
    std::vector<std::vector<Point2>> competitors;
    for (const Curve& c :
         generate_competitors(entry.default_endpoints.first, entry.default_endpoints.second,
                              entry.pair.domain, static_cast<std::uint64_t>(cfg.seed),
                              cfg.plot_competitors))
        competitors.push_back(std::get<Polyline>(c).points);
    emit(cfg.out_path,
         render_svg(entry.pair.domain.bbox, minimizer, competitors, cfg.svg_width, cfg.svg_height));
    return kExitOk;
}

} // namespace detail

// Entry point behind the calib-geo binary. Exit codes: 0 success (and a
// passing verification), 1 failed verification, 2 argument errors, 3
// numerical errors.
inline int run(const std::vector<std::string>& args) {
    CLI::App app{"Certifies weighted-length-minimizing geodesics of conformal plane metrics"};
    app.name("calib-geo");
    app.require_subcommand(1);
    CliConfig cfg;

    auto* list = app.add_subcommand("list", "Print the catalog entry names");
    auto* verify =
        app.add_subcommand("verify", "Verify an entry against seeded competitors, emit a JSON report");
    auto* trace = app.add_subcommand("trace", "Trace the level curve of g through a start point");
    auto* length = app.add_subcommand("length", "Weighted length of a CSV polyline under an entry's density");
    auto* plot = app.add_subcommand("plot", "Render the domain, minimizer and competitors as SVG");

    for (CLI::App* sub : {verify, trace, plot}) {
        sub->add_option("ENTRY", cfg.entry, "Catalog entry name");
        sub->add_option("--entry", cfg.entry_flag, "Catalog entry name");
    }
    length->add_option("--entry", cfg.entry_flag, "Catalog entry name");
    verify->add_option("--competitors", cfg.competitors, "Number of competitors")->check(CLI::NonNegativeNumber);
    verify->add_option("--seed", cfg.seed, "Competitor seed");
    verify->add_option("--tol-len", cfg.tol_len, "Relative length tolerance override");
    verify->add_option("--out", cfg.out_path, "Write the JSON report here instead of stdout");
    trace->add_option("--start", cfg.start, "Start point as x,y");
    trace->add_option("--dir", cfg.dir, "Trace direction")->check(CLI::IsMember({-1, 1}));
    trace->add_option("--step", cfg.step, "Arc-length step")->check(CLI::PositiveNumber);
    trace->add_option("--out", cfg.out_path, "Write the polyline CSV here instead of stdout");
    length->add_option("--curve", cfg.curve_path, "Polyline CSV path");
    plot->add_option("--competitors", cfg.plot_competitors, "Competitors to draw")->check(CLI::NonNegativeNumber);
    plot->add_option("--seed", cfg.seed, "Competitor seed");
    plot->add_option("--out", cfg.out_path, "Write the SVG here instead of stdout");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        if (list->parsed()) return detail::cmd_list();
        if (verify->parsed()) return detail::cmd_verify(cfg);
        if (trace->parsed()) return detail::cmd_trace(cfg);
        if (length->parsed()) return detail::cmd_length(cfg);
        if (plot->parsed()) return detail::cmd_plot(cfg);
        return detail::kExitArgs;
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help();
        return detail::kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return detail::kExitArgs;
    } catch (const UnknownEntry& e) {
        std::cerr << "error: " << e.what() << "\n";
        return detail::kExitArgs;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return detail::kExitArgs;
    } catch (const Error& e) {
        std::cerr << e.kind() << ": " << e.what() << "\n";
        // Unreadable or malformed inputs are argument errors; everything else
        // surfacing here is a numerical failure.
        return (e.kind() == "IoError" || e.kind() == "CsvFormat") ? detail::kExitArgs
                                                                  : detail::kExitNumerical;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

} // namespace cli
} // namespace calibgeo
