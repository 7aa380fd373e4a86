// fcc.cpp: Command-line driver: CC mapping, steady states, sweeps, phase grids, benchmarks

#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "fcc/bath.hpp"
#include "fcc/config.hpp"
#include "fcc/errors.hpp"
#include "fcc/pipeline.hpp"
#include "fcc/report.hpp"

using namespace fcc;

namespace {

constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

nlohmann::json mapping_report(const config::RunConfig& cfg) {
    const double w_res = pipeline::effective_omega_res(cfg);
    const auto j = bath::SpectralDensity::structured(cfg.d_c, cfg.gamma, w_res);
    const auto m = bath::map_collective_coordinate(j);
    const double cut = cfg.cutoff > 0.0 ? cfg.cutoff : bath::default_cutoff(j.peak());
    const auto num = bath::mapping_integrals_numeric(j, cut);
    return {{"omega_res", w_res},
            {"analytic", {{"lambda0", m.lambda0}, {"omega_cc", m.omega_cc},
                          {"delta_omega0", m.delta_omega0}, {"residual_slope", cfg.gamma}}},
            {"numeric", {{"lambda0", num.lambda0}, {"omega_cc", num.omega_cc},
                         {"delta_omega0", num.delta_omega0}, {"cutoff", cut},
                         {"error_estimate", num.error_estimate}}}};
}

void emit_rows(const config::RunConfig& cfg, const std::string& mode,
               const std::vector<pipeline::PointResult>& rows, bool csv_default) {
    std::string csv_path = cfg.csv;
    if (csv_path.empty() && cfg.json.empty() && csv_default) csv_path = "-";
    if (!csv_path.empty()) {
        std::ostringstream os;
        report::write_csv(os, rows);
        report::write_text(csv_path, os.str());
    }
    if (!cfg.json.empty())
        report::write_text(cfg.json, report::results_json(cfg, mode, rows).dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Floquet counting-field simulator for driven quantum thermal machines"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    app.add_option("-c,--config", config_path, "key = value configuration file");
    std::map<std::string, std::string> overrides;
    std::map<std::string, CLI::Option*> options;
    for (const auto& f : config::fields())
        options[f.key] = app.add_option("--" + f.key, overrides[f.key], f.help);

    auto* map_cmd = app.add_subcommand("map", "report the collective-coordinate mapping");
    auto* steady_cmd = app.add_subcommand("steady", "single periodic steady state with thermodynamics");
    auto* sweep_cmd = app.add_subcommand("sweep", "one-dimensional sweep over sweep.variable");
    auto* phase_cmd = app.add_subcommand("phase", "two-dimensional grid (sweep.variable x sweep.y_variable)");
    auto* lc_cmd = app.add_subcommand("lasercool", "detuning sweep without residual bath, with sideband oracle");
    auto* bm_cmd = app.add_subcommand("benchmark", "static-coupling comparison with the bare-qubit secular oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    config::RunConfig cfg;
    try {
        if (!config_path.empty()) cfg = config::load_file(config_path);
        for (const auto& [key, opt] : options)
            if (opt->count() > 0) config::set_value(cfg, key, overrides[key]);
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "fcc: " << e.what() << "\n";
        return kExitConfig;
    }

    try {
        if (map_cmd->parsed()) {
            std::cout << mapping_report(cfg).dump(2) << "\n";
        } else if (steady_cmd->parsed()) {
            const auto r = pipeline::run_point(cfg);
            if (!cfg.csv.empty()) {
                std::ostringstream os;
                report::write_csv(os, {r});
                report::write_text(cfg.csv, os.str());
            }
            const auto j = report::results_json(cfg, "steady", {r}).dump(2) + "\n";
            report::write_text(cfg.json.empty() ? "-" : cfg.json, j);
            if (!r.converged) {
                std::cerr << "fcc: convergence gates failed (see diagnostics)\n";
                return kExitNumerical;
            }
        } else if (sweep_cmd->parsed()) {
            emit_rows(cfg, "sweep", pipeline::run_sweep(cfg), true);
        } else if (phase_cmd->parsed()) {
            emit_rows(cfg, "phase", pipeline::run_phase(cfg), true);
        } else if (lc_cmd->parsed()) {
            emit_rows(cfg, "lasercool", pipeline::run_lasercool(cfg), true);
        } else if (bm_cmd->parsed()) {
            emit_rows(cfg, "benchmark", pipeline::run_benchmark(cfg), true);
        }
    } catch (const pipeline::StageError& e) {
        std::cerr << "fcc: " << e.what() << "\n";
        return e.config ? kExitConfig : kExitNumerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "fcc: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "fcc: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
