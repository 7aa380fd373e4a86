// pipeline.cpp: bath -> model -> floquet -> generator -> thermo for single points and sweeps

#include "fcc/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "fcc/errors.hpp"
#include "fcc/floquet.hpp"
#include "fcc/generator.hpp"
#include "fcc/oracles.hpp"

namespace fcc::pipeline {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const StageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw StageError(name, e.what(), true);
    } catch (const std::exception& e) {
        throw StageError(name, e.what(), false);
    }
}

thermo::ThermoReport nan_report() {
    thermo::ThermoReport r;
    r.qbar_c = r.qbar_h = r.wbar = r.sigma_bar = r.beta_cc = kNaN;
    r.n_mean = r.n_var = r.thermal_residual = kNaN;
    r.eta_carnot = r.kappa_carnot = kNaN;
    return r;
}

struct Attempt {
    double qbar_h{};
    double qbar_c{};
    Matrix rho0;
    Diagnostics diag;
};

Attempt solve_once(const config::RunConfig& cfg, const bath::CCMapping& mapping, int n_fock) {
    Attempt a;
    auto spec = make_spec(cfg, mapping);
    spec.n_fock = n_fock;
    a.diag.n_fock = n_fock;
    a.diag.k_rho = cfg.k_rho;
    a.diag.secular = cfg.secular;

    const auto h = stage("model", [&] { return model::build_supersystem_fourier(spec); });
    const auto fs = stage("floquet", [&] {
        for (int k = cfg.k_ext;; k += 2) {
            auto sol = floquet::solve_floquet(h, k);
            if (sol.edge_weight <= cfg.max_edge_weight) return sol;
            if (k + 2 > cfg.max_k_ext)
                throw ConvergenceError("Floquet modes not converged up to K_ext = " + std::to_string(k));
        }
    });
    a.diag.k_ext = fs.k_ext;
    a.diag.edge_weight = fs.edge_weight;

    const auto ops = model::build_coupling_operators(spec);
    std::vector<generator::BathChannel> baths;
    int hot = -1, cold = -1;
    stage("floquet", [&] {
        if (spec.hot_bath) {
            hot = static_cast<int>(baths.size());
            baths.push_back({"hot", ops.s_hot, *spec.hot_bath, spec.beta_h,
                             floquet::decompose_operator(ops.s_hot, fs, cfg.amplitude_floor)});
        }
        if (spec.residual_bath) {
            cold = static_cast<int>(baths.size());
            baths.push_back({"cold", ops.s_cold_residual, *spec.residual_bath, spec.beta_c,
                             floquet::decompose_operator(ops.s_cold_residual, fs, cfg.amplitude_floor)});
        }
        return 0;
    });
    if (baths.empty()) throw StageError("generator", "no bath is coupled to the supersystem", true);

    if (cfg.secular) {
        const auto sec = stage("generator", [&] { return generator::secular_steady_state(fs, baths); });
        const Eigen::Index d = fs.dimension();
        a.rho0 = Matrix::Zero(d, d);
        for (int m = fs.modes.min_harmonic(); m <= fs.modes.max_harmonic(); ++m) {
            const Matrix u = fs.modes.component(m);
            for (Eigen::Index r = 0; r < d; ++r)
                a.rho0 += sec.populations[static_cast<std::size_t>(r)] * u.col(r) * u.col(r).adjoint();
        }
        if (hot >= 0) a.qbar_h = sec.heat[static_cast<std::size_t>(hot)];
        if (cold >= 0) a.qbar_c = sec.heat[static_cast<std::size_t>(cold)];
        a.diag.trace_error = std::abs(a.rho0.trace() - 1.0);
        a.diag.min_eigenvalue = *std::min_element(sec.populations.begin(), sec.populations.end());
    } else {
        generator::GeneratorOptions gopts;
        gopts.max_edge_weight = cfg.max_edge_weight;
        gopts.prune_tol = cfg.prune_tol;
        generator::SteadyStateOptions sopts;
        sopts.trace_tol = cfg.trace_tol;
        sopts.hermiticity_tol = cfg.hermiticity_tol;
        sopts.positivity_tol = cfg.positivity_tol;
        const auto L = stage("generator", [&] { return generator::build_liouvillian(h, fs, baths, gopts); });
        const auto ss = stage("generator", [&] { return generator::steady_state(L, cfg.k_rho, sopts); });
        if (hot >= 0) a.qbar_h = generator::heat_current(L, ss.rho, static_cast<std::size_t>(hot)).average;
        if (cold >= 0) a.qbar_c = generator::heat_current(L, ss.rho, static_cast<std::size_t>(cold)).average;
        a.rho0 = ss.rho.average();
        a.diag.residual = ss.diagnostics.residual;
        a.diag.trace_error = ss.diagnostics.trace_error;
        a.diag.hermiticity_error = ss.diagnostics.hermiticity_error;
        a.diag.min_eigenvalue = ss.diagnostics.min_eigenvalue;
        a.diag.gap_estimate = ss.diagnostics.gap_estimate;
        a.diag.cc_energy_rate =
            generator::average_rate_of_change(L, ss.rho, model::cc_hamiltonian(spec)).real();
    }
    const auto fock = model::fock_truncation_check(a.rho0, n_fock, cfg.fock_threshold);
    a.diag.fock_top_population = fock.top_population;
    a.diag.fock_pass = fock.pass;
    return a;
}

} // namespace

double effective_omega_res(const config::RunConfig& cfg) {
    return cfg.resonance_lock ? cfg.omega0 - cfg.omegaL : cfg.omega_res;
}

bath::CCMapping map_cold_bath(const config::RunConfig& cfg) {
    const double w_res = effective_omega_res(cfg);
    if (!(w_res > 0.0))
        throw DomainError("resonance lock needs omegaL < omega0 (got omega_res = " +
                          std::to_string(w_res) + ")");
    const auto j = bath::SpectralDensity::structured(cfg.d_c, cfg.gamma, w_res);
    auto m = bath::map_collective_coordinate(j);
    if (cfg.mapping == "numeric") {
        const double cut = cfg.cutoff > 0.0 ? cfg.cutoff : bath::default_cutoff(j.peak());
        const auto num = bath::mapping_integrals_numeric(j, cut);
        m.lambda0 = num.lambda0;
        m.delta_omega0 = num.delta_omega0;
        m.omega_cc = num.omega_cc;
    }
    return m;
}

model::SupersystemSpec make_spec(const config::RunConfig& cfg, const bath::CCMapping& m) {
    model::SupersystemSpec s;
    s.omega0 = cfg.omega0;
    s.g = cfg.g;
    s.omegaL = cfg.omegaL;
    s.omega_cc = m.omega_cc;
    s.n_fock = cfg.n_fock;
    s.lambda0 = m.lambda0;
    s.beta_h = cfg.beta_h;
    s.beta_c = cfg.beta_c;
    if (cfg.hot) s.hot_bath = bath::SpectralDensity::ohmic(cfg.d_h, cfg.omega_ref);
    if (cfg.residual) s.residual_bath = m.residual;
    s.coupling_form = cfg.coupling_form == "static" ? model::CouplingForm::StaticCold
                                                    : model::CouplingForm::SinusoidalCold;
    s.allow_any_temperatures = cfg.allow_any_temperatures;
    return s;
}

PointResult run_point(const config::RunConfig& cfg) {
    stage("config", [&] {
        cfg.validate();
        return 0;
    });
    PointResult res;
    res.cfg = cfg;
    res.omega_res = effective_omega_res(cfg);
    res.mapping = stage("bath", [&] { return map_cold_bath(cfg); });
    stage("model", [&] {
        make_spec(cfg, res.mapping).validate();
        return 0;
    });

    int n_fock = cfg.n_fock;
    Attempt a = solve_once(cfg, res.mapping, n_fock);
    while (!a.diag.fock_pass && cfg.auto_fock && n_fock + 4 <= cfg.max_fock) {
        n_fock += 4;
        a = solve_once(cfg, res.mapping, n_fock);
    }
    res.diagnostics = a.diag;
    res.report = stage("thermo", [&] {
        const auto occ = thermo::occupation_statistics(a.rho0, n_fock);
        return thermo::make_report(a.qbar_c, a.qbar_h, cfg.beta_c, cfg.beta_h, occ,
                                   res.mapping.omega_cc, cfg.regime_tol);
    });
    res.converged = a.diag.fock_pass && !res.report.second_law_violation &&
                    std::abs(a.diag.cc_energy_rate) < 1e-10;
    return res;
}

config::RunConfig with_value(config::RunConfig cfg, const std::string& variable, double value) {
    if (variable == "omegaL") cfg.omegaL = value;
    else if (variable == "d_c") cfg.d_c = value;
    else if (variable == "gamma") cfg.gamma = value;
    else if (variable == "delta") cfg.omegaL = cfg.omega0 + value;
    else throw ConfigError("unknown sweep variable '" + variable + "'");
    return cfg;
}

int default_workers() {
    if (const char* env = std::getenv("FCC_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<PointResult> run_many(const std::vector<config::RunConfig>& cfgs, int workers) {
    std::vector<PointResult> out(cfgs.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < cfgs.size(); i = next++) {
            try {
                out[i] = run_point(cfgs[i]);
            } catch (const std::exception& e) {
                PointResult r;
                r.cfg = cfgs[i];
                r.omega_res = effective_omega_res(cfgs[i]);
                r.mapping.omega_cc = r.omega_res;
                r.report = nan_report();
                r.error = e.what();
                out[i] = std::move(r);
            }
        }
    };
    if (workers <= 0) workers = default_workers();
    workers = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(workers), cfgs.size()));
    if (workers <= 1) {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
}

namespace {

void require_some_success(const std::vector<PointResult>& rows) {
    if (rows.empty()) return;
    for (const auto& r : rows)
        if (r.error.empty()) return;
    throw StageError("sweep", "all " + std::to_string(rows.size()) + " points failed; first error: " +
                                  rows.front().error,
                     false);
}

} // namespace

std::vector<PointResult> run_sweep(const config::RunConfig& cfg) {
    stage("config", [&] {
        cfg.validate();
        return 0;
    });
    std::vector<config::RunConfig> cfgs;
    for (double v : config::grid(cfg.sweep_from, cfg.sweep_to, cfg.sweep_steps))
        cfgs.push_back(with_value(cfg, cfg.sweep_variable, v));
    auto rows = run_many(cfgs);
    require_some_success(rows);
    return rows;
}

std::vector<PointResult> run_phase(const config::RunConfig& cfg) {
    stage("config", [&] {
        cfg.validate();
        if (cfg.sweep_variable == cfg.sweep_y_variable)
            throw ConfigError("phase grid needs two different sweep variables");
        return 0;
    });
    std::vector<config::RunConfig> cfgs;
    for (double y : config::grid(cfg.sweep_y_from, cfg.sweep_y_to, cfg.sweep_y_steps))
        for (double x : config::grid(cfg.sweep_from, cfg.sweep_to, cfg.sweep_steps))
            cfgs.push_back(with_value(with_value(cfg, cfg.sweep_y_variable, y), cfg.sweep_variable, x));
    auto rows = run_many(cfgs);
    require_some_success(rows);
    return rows;
}

std::vector<PointResult> run_lasercool(config::RunConfig cfg) {
    cfg.residual = false;
    cfg.resonance_lock = false;
    cfg.sweep_variable = "delta";
    auto rows = run_sweep(cfg);
    for (auto& r : rows) {
        const double delta = r.cfg.omegaL - r.cfg.omega0;
        double n = kNaN;
        try {
            n = oracles::sideband_cooling_occupation({delta, r.cfg.d_h, r.mapping.omega_cc});
        } catch (const DomainError&) {
        }
        r.extra = {{"delta", delta}, {"n_analytic", n}};
    }
    return rows;
}

std::vector<PointResult> run_benchmark(config::RunConfig cfg) {
    cfg.coupling_form = "static";
    cfg.resonance_lock = false;
    if (cfg.sweep_variable != "gamma" && cfg.sweep_variable != "d_c")
        throw StageError("config", "benchmark sweeps gamma or d_c", true);
    auto rows = run_sweep(cfg);
    for (auto& r : rows) {
        oracles::BenchmarkFlows b{kNaN, kNaN, kNaN};
        try {
            model::SupersystemSpec s;
            s.omega0 = r.cfg.omega0;
            s.g = r.cfg.g;
            s.omegaL = r.cfg.omegaL;
            s.beta_h = r.cfg.beta_h;
            s.beta_c = r.cfg.beta_c;
            b = oracles::bare_qubit_secular_steady(
                s, bath::SpectralDensity::structured(r.cfg.d_c, r.cfg.gamma, r.omega_res),
                bath::SpectralDensity::ohmic(r.cfg.d_h, r.cfg.omega_ref), std::max(r.cfg.k_ext, 10));
        } catch (const std::exception&) {
        }
        r.extra = {{"oracle_qbar_c", b.qbar_c},
                   {"oracle_qbar_h", b.qbar_h},
                   {"oracle_wbar", b.wbar},
                   {"rel_dev_qbar_h", std::abs(r.report.qbar_h - b.qbar_h) / std::abs(b.qbar_h)}};
    }
    return rows;
}

} // namespace fcc::pipeline
