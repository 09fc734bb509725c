#include "qvcz/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "json.hpp"
#include "qvcz/coherence.hpp"

namespace qvcz {

namespace {

std::string sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17e", v);
    return buf;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const Scenario& scenario, bool parallel) {
    scenario.validate();
    const std::vector<double> nus = scenario.nu_values();
    const SourceModel source{scenario.source, 1.0};
    const CoherenceEngine coarse(source, scenario.quadrature);
    const CoherenceEngine fine(source, scenario.quadrature.doubled());
    const auto a = parallel ? coarse.sweep_parallel(nus) : coarse.sweep_serial(nus);
    const auto b = parallel ? fine.sweep_parallel(nus) : fine.sweep_serial(nus);

    std::vector<SweepRecord> records(nus.size());
    for (size_t i = 0; i < nus.size(); ++i) {
        SweepRecord& r = records[i];
        r.nu = nus[i];
        for (const ElementIndex e : scenario.elements) {
            r.samples.push_back({e, a[i][e], g2_closed(scenario.source, e, nus[i])});
            r.quad_delta = std::max(r.quad_delta, std::abs(a[i][e] - b[i][e]));
        }
        r.converged = r.quad_delta < scenario.quadrature.target_abs_tol;
    }
    return records;
}

void write_sweep(std::ostream& out, const std::vector<SweepRecord>& records, OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const SweepRecord& r : records) {
            nlohmann::ordered_json rec;
            rec["nu"] = r.nu;
            nlohmann::ordered_json elements;
            for (const ElementSample& s : r.samples) {
                elements[s.element.str()] = {
                    {"num_re", s.numeric.real()}, {"num_im", s.numeric.imag()}, {"num_abs", std::abs(s.numeric)},
                    {"cf_re", s.closed.real()},   {"cf_im", s.closed.imag()},   {"cf_abs", std::abs(s.closed)},
                    {"abs_err", s.abs_err()},
                };
            }
            rec["elements"] = elements;
            rec["quad_delta"] = r.quad_delta;
            rec["converged"] = r.converged;
            doc.push_back(rec);
        }
        out << doc.dump(2) << "\n";
        return;
    }

    out << "nu";
    if (!records.empty()) {
        for (const ElementSample& s : records.front().samples) {
            const std::string e = s.element.str();
            out << "," << e << "_num_re," << e << "_num_im," << e << "_cf_re," << e << "_cf_im," << e << "_abs_err";
        }
        for (const ElementSample& s : records.front().samples) {
            const std::string e = s.element.str();
            out << "," << e << "_num_abs," << e << "_cf_abs";
        }
    }
    out << ",quad_delta,converged\n";
    for (const SweepRecord& r : records) {
        out << sci(r.nu);
        for (const ElementSample& s : r.samples) {
            out << "," << sci(s.numeric.real()) << "," << sci(s.numeric.imag()) << "," << sci(s.closed.real()) << ","
                << sci(s.closed.imag()) << "," << sci(s.abs_err());
        }
        for (const ElementSample& s : r.samples) {
            out << "," << sci(std::abs(s.numeric)) << "," << sci(std::abs(s.closed));
        }
        out << "," << sci(r.quad_delta) << "," << (r.converged ? 1 : 0) << "\n";
    }
}

CompareReport run_compare(const Scenario& scenario) {
    const auto records = run_sweep(scenario);
    CompareReport report;
    report.source = scenario.source;
    report.nodes = scenario.quadrature.nodes_per_axis;
    report.tolerance = scenario.compare_tol;
    const bool horizontal = scenario.source == SourceKind::HorizontalIndistinguishable;

    double worst_delta = 0.0;
    for (size_t k = 0; k < scenario.elements.size(); ++k) {
        ElementComparison c;
        c.element = scenario.elements[k];
        if (horizontal) c.printed_max_abs_err = 0.0;
        for (const SweepRecord& r : records) {
            const ElementSample& s = r.samples[k];
            if (&r == &records.front() || s.abs_err() > c.max_abs_err) {
                c.max_abs_err = s.abs_err();
                c.worst_nu = r.nu;
            }
            c.max_quad_delta = std::max(c.max_quad_delta, r.quad_delta);
            if (horizontal) {
                c.printed_max_abs_err =
                    std::max(c.printed_max_abs_err, std::abs(s.numeric - g2_closed_horizontal_printed(c.element, r.nu)));
            }
        }
        c.pass = c.max_abs_err < scenario.compare_tol;
        report.pass = report.pass && c.pass;
        report.elements.push_back(c);
    }
    for (const SweepRecord& r : records) {
        if (!r.converged) {
            ++report.unconverged_points;
            worst_delta = std::max(worst_delta, r.quad_delta);
        }
    }
    if (report.unconverged_points > 0) {
        report.pass = false;
        report.notes.push_back("quadrature not converged at " + std::to_string(report.unconverged_points) + " of " +
                               std::to_string(records.size()) + " nu points (max |g(N)-g(2N)| = " + sci(worst_delta) +
                               ", target " + sci(scenario.quadrature.target_abs_tol) + "); increase nodes");
    }
    if (horizontal) {
        report.notes.push_back(
            "horizontal-source closed forms are reconstructed: empty sinc-argument offsets filled with 1 and the "
            "published variable nu/2 evaluated as nu");
        report.notes.push_back(
            "sign-corrected relative to the published forms: HHVV/VVHH (+), HVHV/VHVH (+), HHVH family (-i); "
            "printed_max_abs_err reports the residual of the uncorrected forms");
    }
    return report;
}

void write_compare(std::ostream& out, const CompareReport& report, OutputFormat format) {
    const bool horizontal = report.source == SourceKind::HorizontalIndistinguishable;
    double overall = 0.0;
    for (const auto& c : report.elements) overall = std::max(overall, c.max_abs_err);

    if (format == OutputFormat::Json) {
        nlohmann::ordered_json doc;
        doc["source"] = to_string(report.source);
        doc["nodes"] = report.nodes;
        doc["tolerance"] = report.tolerance;
        doc["elements"] = nlohmann::ordered_json::array();
        for (const auto& c : report.elements) {
            nlohmann::ordered_json e{{"element", c.element.str()},
                                     {"max_abs_err", c.max_abs_err},
                                     {"worst_nu", c.worst_nu},
                                     {"max_quad_delta", c.max_quad_delta},
                                     {"status", c.pass ? "PASS" : "FAIL"}};
            if (horizontal) {
                e["printed_max_abs_err"] = c.printed_max_abs_err;
                e["sign_corrected"] = horizontal_sign_corrected(c.element);
            }
            doc["elements"].push_back(e);
        }
        doc["max_abs_err"] = overall;
        doc["unconverged_points"] = report.unconverged_points;
        doc["reconstructed_closed_forms"] = horizontal;
        doc["notes"] = report.notes;
        doc["status"] = report.pass ? "PASS" : "FAIL";
        out << doc.dump(2) << "\n";
        return;
    }

    out << "# source=" << to_string(report.source) << " nodes=" << report.nodes << " tol=" << sci(report.tolerance)
        << "\n";
    out << "element,max_abs_err,worst_nu,max_quad_delta,status";
    if (horizontal) out << ",printed_max_abs_err,sign_corrected";
    out << "\n";
    for (const auto& c : report.elements) {
        out << c.element.str() << "," << sci(c.max_abs_err) << "," << sci(c.worst_nu) << "," << sci(c.max_quad_delta)
            << "," << (c.pass ? "PASS" : "FAIL");
        if (horizontal) out << "," << sci(c.printed_max_abs_err) << "," << (horizontal_sign_corrected(c.element) ? 1 : 0);
        out << "\n";
    }
    for (const auto& note : report.notes) out << "# note: " << note << "\n";
    out << "# result: " << (report.pass ? "PASS" : "FAIL") << " max_abs_err=" << sci(overall)
        << " unconverged_points=" << report.unconverged_points << "\n";
}

std::vector<StatsRow> run_stats(const Scenario& scenario) {
    scenario.validate();
    std::vector<StatsRow> rows;
    for (double z : scenario.stats.z) {
        const DetectorPlacement placement{1.0, scenario.lambda, z, scenario.stats.x};
        const FresnelGridSpec grid{scenario.stats.source_samples, 4.0};
        StatsRow row;
        row.z_over_L = z;
        row.x_over_L = scenario.stats.x;
        row.point = detector_means(scenario.stats.total_mean_photons, placement, grid);
        auto combined = combined_statistics(row.point, scenario.stats.n_max);
        row.distribution = std::move(combined.distribution);
        row.g2 = combined.g2;
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_stats(std::ostream& out, const std::vector<StatsRow>& rows, int display_cutoff, OutputFormat format) {
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json doc = nlohmann::ordered_json::array();
        for (const StatsRow& r : rows) {
            const int shown = std::min(display_cutoff, r.distribution.n_max());
            std::vector<double> p(r.distribution.probabilities().begin(),
                                  r.distribution.probabilities().begin() + shown + 1);
            doc.push_back({{"z_over_L", r.z_over_L},
                           {"x_over_L", r.x_over_L},
                           {"mean_h", r.point.mean_h},
                           {"mean_v", r.point.mean_v},
                           {"g2", r.g2},
                           {"sum_p", r.distribution.total()},
                           {"p", p}});
        }
        out << doc.dump(2) << "\n";
        return;
    }
    out << "z_over_L,x_over_L,mean_h,mean_v,g2,sum_p";
    for (int n = 0; n <= display_cutoff; ++n) out << ",p" << n;
    out << "\n";
    for (const StatsRow& r : rows) {
        out << sci(r.z_over_L) << "," << sci(r.x_over_L) << "," << sci(r.point.mean_h) << "," << sci(r.point.mean_v)
            << "," << sci(r.g2) << "," << sci(r.distribution.total());
        for (int n = 0; n <= display_cutoff; ++n) {
            out << "," << sci(n <= r.distribution.n_max() ? r.distribution[n] : 0.0);
        }
        out << "\n";
    }
}

ResurrectionReport run_resurrection(const Scenario& scenario, Extremum kind) {
    ResurrectionReport report;
    report.element = scenario.search_element;
    report.source = scenario.source;
    report.interval = scenario.search;
    report.kind = kind;
    report.location = locate_extremum(
        [&](double nu) { return g2_closed(scenario.source, scenario.search_element, nu); }, scenario.search, kind);
    return report;
}

void write_resurrection(std::ostream& out, const ResurrectionReport& r, OutputFormat format) {
    const char* kind = r.kind == Extremum::Maximum ? "maximum" : "minimum";
    if (format == OutputFormat::Json) {
        nlohmann::ordered_json doc{{"element", r.element.str()},
                                   {"source", to_string(r.source)},
                                   {"lo", r.interval.lo},
                                   {"hi", r.interval.hi},
                                   {"kind", kind},
                                   {"nu_star", r.location.nu},
                                   {"g2_re", r.location.value.real()},
                                   {"g2_im", r.location.value.imag()},
                                   {"g2_abs", r.location.modulus}};
        out << doc.dump(2) << "\n";
        return;
    }
    out << "element,source,lo,hi,kind,nu_star,g2_re,g2_im,g2_abs\n";
    out << r.element.str() << "," << to_string(r.source) << "," << sci(r.interval.lo) << "," << sci(r.interval.hi)
        << "," << kind << "," << sci(r.location.nu) << "," << sci(r.location.value.real()) << ","
        << sci(r.location.value.imag()) << "," << sci(r.location.modulus) << "\n";
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Post-selected second-order coherence of polarization-grating light in the far field"};
    app.fallthrough();

    std::string config_path, out_path, format_name = "csv";
    std::string source_name, element_list, nu_range, element_name, interval;
    int nodes = 0;
    double tol = 0.0;
    bool dump_config = false, minimum = false;

    app.add_option("--config", config_path, "Scenario file (key = value)");
    app.add_option("--out", out_path, "Write output to this file instead of stdout");
    app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));
    auto* nodes_opt = app.add_option("--nodes", nodes, "Gauss-Legendre nodes per axis");
    auto* tol_opt = app.add_option("--tol", tol, "Numeric vs closed-form comparison tolerance");
    app.add_flag("--dump-config", dump_config, "Print the effective scenario and exit");
    auto* source_opt = app.add_option("--source", source_name, "unpolarized | horizontal | classical");
    auto* elements_opt = app.add_option("--elements", element_list, "Comma-separated elements (e.g. HHHH,VHHV) or 'all'");
    auto* nu_opt = app.add_option("--nu", nu_range, "nu range start:stop:step");
    auto* element_opt = app.add_option("--element", element_name, "Element for the resurrection search");
    auto* interval_opt = app.add_option("--interval", interval, "Search interval lo:hi");
    app.add_flag("--minimum", minimum, "resurrection: locate the local minimum of |g2| (revival onset)");

    auto* sweep = app.add_subcommand("sweep", "g2 versus nu, numeric and closed form");
    auto* compare = app.add_subcommand("compare", "max numeric/closed-form discrepancy per element");
    auto* stats = app.add_subcommand("stats", "photon-number statistics of the combined field versus z");
    auto* resurrection = app.add_subcommand("resurrection", "locate a local extremum of |g2(nu)|");
    auto* classical = app.add_subcommand("classical", "sweep with the classical control source");
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        Scenario scenario = config_path.empty() ? Scenario{} : load_scenario(config_path);
        auto as_config = [](auto&& fn) {
            try {
                fn();
            } catch (const Error& e) {
                throw Error(ErrorCode::ConfigError, e.what());
            }
        };
        if (source_opt->count()) as_config([&] { scenario.source = parse_source_kind(source_name); });
        if (classical->parsed()) scenario.source = SourceKind::ClassicalIncoherent;
        if (elements_opt->count()) scenario.elements = parse_element_list(element_list);
        if (nu_opt->count()) {
            scenario.nu = parse_range(nu_range);
            scenario.geometry.reset();
        }
        if (nodes_opt->count()) scenario.quadrature.nodes_per_axis = nodes;
        if (tol_opt->count()) scenario.compare_tol = tol;
        if (element_opt->count()) as_config([&] { scenario.search_element = ElementIndex::parse(element_name); });
        if (interval_opt->count()) {
            const Range r = parse_range(interval);
            scenario.search = {r.start, r.stop};
        }
        scenario.validate();

        std::unique_ptr<std::ofstream> file;
        std::ostream* sink = &out;
        if (!out_path.empty()) {
            file = std::make_unique<std::ofstream>(out_path);
            if (!*file) throw Error(ErrorCode::ConfigError, "cannot open output file '" + out_path + "'");
            sink = file.get();
        }
        const OutputFormat format = format_name == "json" ? OutputFormat::Json : OutputFormat::Csv;

        if (dump_config) {
            *sink << dump_scenario(scenario);
            return kExitOk;
        }
        if (sweep->parsed() || classical->parsed()) {
            const auto records = run_sweep(scenario);
            write_sweep(*sink, records, format);
            int failures = 0;
            for (const auto& r : records) {
                if (!r.converged) {
                    err << "convergence failure at nu=" << sci(r.nu) << ": |g(N)-g(2N)|=" << sci(r.quad_delta) << "\n";
                    ++failures;
                }
            }
            return failures ? kExitConvergenceFailure : kExitOk;
        }
        if (compare->parsed()) {
            const auto report = run_compare(scenario);
            write_compare(*sink, report, format);
            return report.pass ? kExitOk : kExitComparisonFailure;
        }
        if (stats->parsed()) {
            write_stats(*sink, run_stats(scenario), scenario.stats.display_cutoff, format);
            return kExitOk;
        }
        if (resurrection->parsed()) {
            write_resurrection(*sink, run_resurrection(scenario, minimum ? Extremum::Minimum : Extremum::Maximum),
                               format);
            return kExitOk;
        }
        err << app.help();
        return kExitConfigError;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        switch (e.code()) {
            case ErrorCode::ConfigError:
            case ErrorCode::InvalidArgument: return kExitConfigError;
            case ErrorCode::ConvergenceFailure: return kExitConvergenceFailure;
            default: return kExitNumericError;
        }
    }
}

}  // namespace qvcz
