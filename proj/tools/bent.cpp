// Command-line front end: certify a single configuration, sweep a parameter
// grid (optionally bisecting the squeezing boundary), or print the version.
// Exit codes are stable so scripts can dispatch on the failure class; the
// physical verdict never changes the exit code of a completed run.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "bent/certify.hpp"
#include "bent/partial_transpose.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes:\n"
    "  0  run completed (any verdict)\n"
    "  1  unexpected error\n"
    "  2  configuration error\n"
    "  3  invalid parameter\n"
    "  4  cutoff exceeded\n"
    "  5  matrix not hermitian\n"
    "  6  zero trace\n"
    "  7  empty input\n"
    "  8  numeric overflow\n"
    "  9  block leakage\n"
    " 10  degenerate angle\n"
    " 11  invalid scaling\n";

int classify(const std::exception& e) {
    if (dynamic_cast<const bent::ConfigError*>(&e)) return 2;
    if (dynamic_cast<const bent::InvalidParameter*>(&e)) return 3;
    if (dynamic_cast<const bent::CutoffExceeded*>(&e)) return 4;
    if (dynamic_cast<const bent::NonHermitian*>(&e)) return 5;
    if (dynamic_cast<const bent::ZeroTrace*>(&e)) return 6;
    if (dynamic_cast<const bent::EmptyInput*>(&e)) return 7;
    if (dynamic_cast<const bent::Overflow*>(&e)) return 8;
    if (dynamic_cast<const bent::BlockLeakage*>(&e)) return 9;
    if (dynamic_cast<const bent::DegenerateAngle*>(&e)) return 10;
    if (dynamic_cast<const bent::InvalidScaling*>(&e)) return 11;
    return 1;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        throw bent::ConfigError("cannot open " + path.string() + " for writing");
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bent - bound entanglement certification for truncated "
                 "two-mode states"};
    app.footer(kExitCodeHelp);
    app.require_subcommand(1);

    std::string config_path, out_path, dump_dir, grid_path, csv_path, bisect_param;

    auto* certify = app.add_subcommand("certify", "run the certification pipeline");
    certify->add_option("--config", config_path, "configuration file (JSON)")
        ->required();
    certify->add_option("--out", out_path, "report destination (default: stdout "
                                           "or outputs.report_path from the config)");
    certify->add_option("--dump-dir", dump_dir,
                        "directory for binary matrix dumps (.bent)");

    auto* sweep = app.add_subcommand("sweep", "run a parameter grid or bisection");
    sweep->add_option("--config", config_path, "base configuration file (JSON)")
        ->required();
    sweep->add_option("--grid", grid_path, "grid file (JSON)")->required();
    sweep->add_option("--bisect", bisect_param,
                      "bisect this parameter instead of sweeping (only 'omega')");
    sweep->add_option("--out-csv", csv_path, "summary CSV destination");
    sweep->add_option("--out", out_path, "full reports destination (JSON array)");

    auto* version = app.add_subcommand("version", "print the toolkit version");

    CLI11_PARSE(app, argc, argv);

    try {
        if (version->parsed()) {
            std::cout << "bent 1.0.0\n";
            return 0;
        }

        bent::CertifyConfig cfg = bent::load_config(config_path);

        if (certify->parsed()) {
            std::optional<std::filesystem::path> dump;
            if (!dump_dir.empty())
                dump = dump_dir;
            else if (cfg.dump_matrices && !cfg.report_path.empty())
                dump = std::filesystem::path(cfg.report_path).parent_path() / "matrices";
            const bent::Report report = bent::run_certify(cfg, dump);
            const std::string text = report.dump(2) + "\n";
            if (!out_path.empty())
                write_text(out_path, text);
            else if (!cfg.report_path.empty())
                write_text(cfg.report_path, text);
            else
                std::cout << text;
            std::cerr << "verdict: " << report.at("verdict").get<std::string>() << "\n";
            return 0;
        }

        // sweep
        std::ifstream gin(grid_path);
        if (!gin)
            throw bent::ConfigError("cannot open grid file " + grid_path);
        bent::Report gj;
        try {
            gin >> gj;
        } catch (const nlohmann::json::exception& e) {
            throw bent::ConfigError(std::string("grid parse error: ") + e.what());
        }
        const bent::SweepGrid grid = bent::parse_grid(gj);

        if (!bisect_param.empty()) {
            if (bisect_param != "omega")
                throw bent::ConfigError("only omega bisection is supported");
            double lo = 1e-3, hi = 0.9;
            if (grid.bisect_bracket) {
                lo = grid.bisect_bracket->first;
                hi = grid.bisect_bracket->second;
            }
            const bent::BisectionOutcome out = bent::bisect_omega(cfg, lo, hi);
            if (!csv_path.empty())
                write_text(csv_path, out.csv);
            bent::Report summary = {{"boundary", out.boundary},
                                    {"bracket", {out.lo, out.hi}}};
            std::cout << summary.dump(2) << "\n";
            return 0;
        }

        const bent::SweepOutcome out = bent::run_sweep(cfg, grid);
        if (!csv_path.empty())
            write_text(csv_path, out.csv);
        else
            std::cout << out.csv;
        if (!out_path.empty()) {
            bent::Report all = bent::Report::array();
            for (const auto& r : out.reports)
                all.push_back(r);
            write_text(out_path, all.dump(2) + "\n");
        }
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return classify(e);
    }
}
