// pipeline.hpp: bath -> model -> floquet -> generator -> thermo for single points and sweeps

#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fcc/bath.hpp"
#include "fcc/config.hpp"
#include "fcc/model.hpp"
#include "fcc/thermo.hpp"

namespace fcc::pipeline {

// Error raised by a pipeline stage; `config` marks input-validation failures.
struct StageError : std::runtime_error {
    StageError(std::string stage, const std::string& what, bool config)
        : std::runtime_error("[" + stage + "] " + what), stage(std::move(stage)), config(config) {}
    std::string stage;
    bool config;
};

struct Diagnostics {
    int n_fock{};
    int k_ext{};
    int k_rho{};
    double edge_weight{};
    double residual{};
    double trace_error{};
    double hermiticity_error{};
    double min_eigenvalue{};
    double gap_estimate{};
    double fock_top_population{};
    bool fock_pass{};
    double cc_energy_rate{};  // period average of d<H_CC>/dt
    bool secular{};
};

struct PointResult {
    config::RunConfig cfg;  // the configuration of this point
    double omega_res{};
    bath::CCMapping mapping;
    thermo::ThermoReport report;
    Diagnostics diagnostics;
    bool converged{};
    std::string error;      // non-empty when the point failed
    std::vector<std::pair<std::string, double>> extra;  // mode-specific columns
};

// omega_res actually used at this point (resonance lock applied).
double effective_omega_res(const config::RunConfig& cfg);

// The supersystem spec for a config after the CC mapping.
model::SupersystemSpec make_spec(const config::RunConfig& cfg, const bath::CCMapping& m);
bath::CCMapping map_cold_bath(const config::RunConfig& cfg);

// Full run with convergence gates; throws StageError.
PointResult run_point(const config::RunConfig& cfg);

// Sets a sweep variable on a copy of cfg.
config::RunConfig with_value(config::RunConfig cfg, const std::string& variable, double value);

// Runs independent configs on a worker pool (FCC_WORKERS or hardware concurrency),
// keeping input order. Failed points come back flagged, not thrown.
std::vector<PointResult> run_many(const std::vector<config::RunConfig>& cfgs,
                                  int workers = 0);

std::vector<PointResult> run_sweep(const config::RunConfig& cfg);
std::vector<PointResult> run_phase(const config::RunConfig& cfg);

// Laser-cooling mode: residual bath off, detuning sweep, analytic occupation appended.
std::vector<PointResult> run_lasercool(config::RunConfig cfg);

// Static-coupling benchmark against the bare-qubit secular oracle.
std::vector<PointResult> run_benchmark(config::RunConfig cfg);

int default_workers();

} // namespace fcc::pipeline
