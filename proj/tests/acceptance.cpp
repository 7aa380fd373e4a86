// acceptance.cpp: end-to-end acceptance checks, one PASS/FAIL line per criterion
//
// Usage: acceptance [--only 1,2,...] [--expect-fail 4,9]
// The exit status is nonzero when a criterion outside the expect-fail list fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "CLI11.hpp"
#include "fcc/config.hpp"
#include "fcc/errors.hpp"
#include "fcc/floquet.hpp"
#include "fcc/generator.hpp"
#include "fcc/model.hpp"
#include "fcc/oracles.hpp"
#include "fcc/pipeline.hpp"
#include "fcc/thermo.hpp"

using namespace fcc;

namespace {

struct Outcome {
    bool pass{};
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

void info(const std::string& s) { std::printf("      %s\n", s.c_str()); std::fflush(stdout); }

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix random_density(Eigen::Index d, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = cplx(n(rng), n(rng));
    Matrix rho = a * a.adjoint();
    return rho / rho.trace();
}

double trace_norm(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    return es.eigenvalues().cwiseAbs().sum();
}

// The reference configuration and its pieces, built once.
struct Reference {
    config::RunConfig cfg;
    model::SupersystemSpec spec;
    PeriodicOperator h;
    floquet::FloquetSolution fs;
    std::vector<generator::BathChannel> baths;
    std::optional<generator::CountingLiouvillian> L;

    Reference() {
        spec = pipeline::make_spec(cfg, pipeline::map_cold_bath(cfg));
        h = model::build_supersystem_fourier(spec);
        fs = floquet::solve_floquet(h, cfg.k_ext);
        const auto ops = model::build_coupling_operators(spec);
        baths.push_back({"hot", ops.s_hot, *spec.hot_bath, spec.beta_h,
                         floquet::decompose_operator(ops.s_hot, fs, cfg.amplitude_floor)});
        baths.push_back({"cold", ops.s_cold_residual, *spec.residual_bath, spec.beta_c,
                         floquet::decompose_operator(ops.s_cold_residual, fs, cfg.amplitude_floor)});
        L.emplace(generator::build_liouvillian(h, fs, baths));
    }
};

Reference& reference() {
    static Reference r;
    return r;
}

// ---------------------------------------------------------------------------

Outcome equilibrium() {
    // Undriven, CC decoupled from the qubit: each bath thermalizes its own subsystem.
    config::RunConfig cfg;
    auto spec = pipeline::make_spec(cfg, pipeline::map_cold_bath(cfg));
    spec.g = 0.0;
    spec.lambda0 = 0.0;
    const auto h = model::build_supersystem_fourier(spec);
    const auto fs = floquet::solve_floquet(h, 4);
    const auto ops = model::build_coupling_operators(spec);
    std::vector<generator::BathChannel> baths{
        {"hot", ops.s_hot, *spec.hot_bath, spec.beta_h, floquet::decompose_operator(ops.s_hot, fs)},
        {"cold", ops.s_cold_residual, *spec.residual_bath, spec.beta_c,
         floquet::decompose_operator(ops.s_cold_residual, fs)}};
    const auto L = generator::build_liouvillian(h, fs, baths);
    const auto ss = generator::steady_state(L, 2);
    const Matrix rho = ss.rho.average();

    const int nf = spec.n_fock;
    double pe = 0.0, pg = 0.0;
    for (int p = 0; p < nf; ++p) {
        pe += rho(p, p).real();
        pg += rho(nf + p, nf + p).real();
    }
    const double ratio_err = std::abs(pe / pg - std::exp(-spec.beta_h * spec.omega0));
    const double n = (model::number_operator(nf) * rho).trace().real();
    const double n_err = std::abs(n - bath::bose_occupation(spec.omega_cc, spec.beta_c));
    return {ratio_err < 1e-8 && n_err < 1e-6,
            fmt("|p_e/p_g - exp(-beta_h w0)| = %.2e (tol 1e-8), |<n> - N(w_cc)| = %.2e (tol 1e-6)",
                ratio_err, n_err)};
}

Outcome floquet_consistency() {
    auto& ref = reference();
    const double T = 2.0 * std::numbers::pi / ref.spec.omegaL;
    const Matrix u = oracles::propagator(ref.h, 0.0, T);
    Eigen::ComplexEigenSolver<Matrix> es(u);
    std::vector<double> ode;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        ode.push_back(floquet::fold_quasienergy(-std::arg(es.eigenvalues()(i)) / T, ref.spec.omegaL));
    std::sort(ode.begin(), ode.end());
    double worst = 0.0;
    for (std::size_t i = 0; i < ode.size(); ++i) {
        double diff = std::abs(ode[i] - ref.fs.quasienergies[i]);
        diff = std::min(diff, ref.spec.omegaL - diff);
        worst = std::max(worst, diff / ref.spec.omega0);
    }
    const auto wider = floquet::solve_floquet(ref.h, ref.cfg.k_ext + 2);
    double shift = 0.0;
    for (std::size_t i = 0; i < ode.size(); ++i)
        shift = std::max(shift, std::abs(wider.quasienergies[i] - ref.fs.quasienergies[i]));
    info(fmt("K_ext %d -> %d moves quasienergies by at most %.2e", ref.cfg.k_ext, ref.cfg.k_ext + 2, shift));
    return {worst < 1e-6 && shift < 1e-8,
            fmt("max |eps_ext - eps_ode| / w0 = %.2e over %zu quasienergies (tol 1e-6)", worst, ode.size())};
}

// L(t) assembled directly at time t from the Floquet modes and bath rates.
struct DirectGenerator {
    Matrix H;
    std::vector<std::pair<Matrix, Matrix>> ops;  // (S, A(t)) per bath

    DirectGenerator(const Reference& ref, double t) : H(ref.h.at(t)) {
        const Matrix modes = ref.fs.modes_at(t);
        for (const auto& b : ref.baths) {
            Matrix A = Matrix::Zero(H.rows(), H.cols());
            for (const auto& e : b.jumps.entries)
                A += bath::absorption_rate(b.density, b.beta, e.delta) * e.amplitude *
                     std::exp(cplx(0.0, e.harmonic * ref.fs.omegaL * t)) * modes.col(e.bra) *
                     modes.col(e.ket).adjoint();
            ops.emplace_back(b.coupling, A);
        }
    }

    Matrix operator()(const Matrix& rho) const {
        Matrix out = cplx(0.0, -1.0) * (H * rho - rho * H);
        for (const auto& [S, A] : ops) {
            const Matrix B = A.adjoint();
            out -= S * A * rho - A * rho * S + rho * B * S - S * rho * B;
        }
        return out;
    }
};

Outcome generator_reconstruction() {
    auto& ref = reference();
    const auto& L = *ref.L;
    const Eigen::Index d = L.dimension();
    const double T = 2.0 * std::numbers::pi / ref.spec.omegaL;
    std::vector<Eigen::SparseMatrix<cplx>> harmonics;
    for (int q = -L.support(); q <= L.support(); ++q) harmonics.push_back(L.superoperator(q));
    double worst = 0.0;
    const std::vector<double> fracs{0.0, 0.11, 0.27, 0.5, 0.63, 0.88};
    for (double frac : fracs) {
        const double t = frac * T;
        Matrix assembled = Matrix::Zero(d * d, d * d);
        for (int q = -L.support(); q <= L.support(); ++q)
            assembled += std::exp(cplx(0.0, q * ref.fs.omegaL * t)) *
                         Matrix(harmonics[static_cast<std::size_t>(q + L.support())]);
        const DirectGenerator gen(ref, t);
        Matrix direct(d * d, d * d);
        for (Eigen::Index j = 0; j < d * d; ++j) {
            Matrix e = Matrix::Zero(d, d);
            e(j % d, j / d) = 1.0;
            const Matrix col = gen(e);
            direct.col(j) = Eigen::Map<const Eigen::VectorXcd>(col.data(), d * d);
        }
        worst = std::max(worst, max_abs(assembled - direct));
    }
    return {worst < 1e-10,
            fmt("max entrywise |L_harmonic(t) - L_direct(t)| = %.2e at %zu times (tol 1e-10)", worst,
                fracs.size())};
}

Matrix evolve(const generator::CountingLiouvillian& L, const Matrix& rho0, double t0, double t1) {
    std::vector<Eigen::SparseMatrix<cplx>> harmonics;
    for (int q = -L.support(); q <= L.support(); ++q) harmonics.push_back(L.superoperator(q));
    const Eigen::Index d = L.dimension();
    const double w = L.omegaL();
    auto rhs = [&](double t, const Matrix& rho) {
        const Eigen::Map<const Eigen::VectorXcd> v(rho.data(), d * d);
        Eigen::VectorXcd out = Eigen::VectorXcd::Zero(d * d);
        for (int q = -L.support(); q <= L.support(); ++q)
            out += std::exp(cplx(0.0, q * w * t)) * (harmonics[static_cast<std::size_t>(q + L.support())] * v);
        return Matrix(Eigen::Map<const Matrix>(out.data(), d, d));
    };
    oracles::PropagateOptions opts;
    opts.abs_tol = 1e-11;
    opts.rel_tol = 1e-10;
    return oracles::propagate(rhs, rho0, t0, t1, opts);
}

Outcome time_domain_relaxation() {
    auto& ref = reference();
    const auto& L = *ref.L;
    const auto ss = generator::steady_state(L, ref.cfg.k_rho);
    const double T = 2.0 * std::numbers::pi / ref.spec.omegaL;
    const int periods = 200;

    // Stationarity under the same ODE: start on the periodic steady state.
    const Matrix from_ss = evolve(L, ss.rho.at(0.0), 0.0, 20 * T);
    info(fmt("steady state propagated over 20 periods stays within %.2e (trace norm)",
             trace_norm(from_ss - ss.rho.at(0.0))));

    const Matrix rho0 = random_density(L.dimension(), 2024);
    const Matrix rho = evolve(L, rho0, 0.0, periods * T);
    const double dist = trace_norm(rho - ss.rho.at(0.0));
    const double initial = trace_norm(rho0 - ss.rho.at(0.0));
    info(fmt("initial distance %.3e, slowest relaxation rate estimate %.2e -> exp(-rate t) = %.2e",
             initial, ss.diagnostics.gap_estimate, std::exp(-ss.diagnostics.gap_estimate * periods * T)));
    return {dist < 1e-6,
            fmt("||rho(200 T) - rho_ss(0)||_1 = %.3e from a random state (tol 1e-6)", dist)};
}

// Shared reference sweep (criteria 5, 6, 10).
const std::vector<pipeline::PointResult>& reference_sweep() {
    static const auto rows = [] {
        config::RunConfig c;
        c.sweep_from = 0.82;
        c.sweep_to = 0.96;
        c.sweep_steps = 50;
        return pipeline::run_sweep(c);
    }();
    return rows;
}

bool accepted(const pipeline::PointResult& r) { return r.error.empty() && r.converged; }

Outcome thermodynamic_laws() {
    const auto& rows = reference_sweep();
    double trace = 0.0, sigma = std::numeric_limits<double>::infinity(), cc = 0.0;
    int n = 0;
    for (const auto& r : rows) {
        if (!accepted(r)) continue;
        ++n;
        trace = std::max(trace, r.diagnostics.trace_error);
        sigma = std::min(sigma, r.report.sigma_bar);
        cc = std::max(cc, std::abs(r.diagnostics.cc_energy_rate));
    }
    // Without drive the cold coupling must also be static, otherwise it still does work.
    config::RunConfig c;
    c.g = 0.0;
    c.coupling_form = "static";
    const auto r0 = pipeline::run_point(c);
    const double gap = std::abs(r0.report.qbar_h + r0.report.qbar_c);
    const double rel = gap / std::abs(r0.report.qbar_h);

    // Energy route: the change of <H> caused by each dissipator separately.
    auto spec = pipeline::make_spec(c, pipeline::map_cold_bath(c));
    const auto h = model::build_supersystem_fourier(spec);
    const auto fs = floquet::solve_floquet(h, c.k_ext);
    const auto ops = model::build_coupling_operators(spec);
    const generator::BathChannel hot{"hot", ops.s_hot, *spec.hot_bath, spec.beta_h,
                                     floquet::decompose_operator(ops.s_hot, fs)};
    const generator::BathChannel cold{"cold", ops.s_cold_residual, *spec.residual_bath, spec.beta_c,
                                      floquet::decompose_operator(ops.s_cold_residual, fs)};
    const auto ss = generator::steady_state(generator::build_liouvillian(h, fs, {hot, cold}), c.k_rho);
    const Matrix h0 = h.component(0);
    const double eh = generator::average_rate_of_change(generator::build_liouvillian(h, fs, {hot}), ss.rho, h0).real();
    const double ec = generator::average_rate_of_change(generator::build_liouvillian(h, fs, {cold}), ss.rho, h0).real();
    const double energy_rel = std::abs(eh + ec) / std::abs(eh);
    info(fmt("g=0 counting-field balance relative to Q_h: %.1e (non-secular, scales as d_h^2)", rel));

    const bool ok = n == static_cast<int>(rows.size()) && trace < 1e-10 && sigma >= -1e-10 &&
                    cc < 1e-10 && r0.error.empty() && gap < 1e-8 && energy_rel < 1e-8;
    return {ok, fmt("%d/%zu points accepted; max |Tr rho0 - 1| = %.1e, min sigma = %.2e, "
                    "max |<dH_cc/dt>| = %.1e; g=0: |Q_h + Q_c| = %.1e, energy route %.1e relative",
                    n, rows.size(), trace, sigma, cc, gap, energy_rel)};
}

double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    while (b - a > tol) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if ((fm > 0) == (fa > 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

std::string regime_string(const std::vector<pipeline::PointResult>& rows) {
    std::string s;
    for (const auto& r : rows) {
        if (!r.error.empty()) s += "x ";
        else s += thermo::regime_tag(r.report.regime) + " ";
    }
    return s;
}

Outcome engine_fridge_regimes() {
    const auto& rows = reference_sweep();
    const std::size_t n = rows.size();
    const double step = rows[1].cfg.omegaL - rows[0].cfg.omegaL;
    info("regimes: " + regime_string(rows));

    std::size_t last_i = 0, first_iv = n;
    bool contiguous = rows[0].report.regime == thermo::Regime::HeatEngine &&
                      rows[n - 1].report.regime == thermo::Regime::Refrigerator;
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].report.regime == thermo::Regime::HeatEngine) last_i = i;
        if (rows[i].report.regime == thermo::Regime::Refrigerator && first_iv == n) first_iv = i;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto reg = rows[i].report.regime;
        if (i <= last_i && reg != thermo::Regime::HeatEngine) contiguous = false;
        if (i >= first_iv && reg != thermo::Regime::Refrigerator) contiguous = false;
    }

    // The gap can be narrower than the grid; locate both sign changes directly.
    config::RunConfig base;
    const double lo = rows[last_i].cfg.omegaL, hi = rows[std::min(first_iv, n - 1)].cfg.omegaL;
    auto flows = [&](double w) { return pipeline::run_point(pipeline::with_value(base, "omegaL", w)).report; };
    const double w_root = bisect([&](double w) { return flows(w).wbar; }, lo, hi, 1e-6);
    const double qc_root = bisect([&](double w) { return flows(w).qbar_c; }, lo, hi, 1e-6);
    const double gap = qc_root - w_root;
    info(fmt("W = 0 at omegaL = %.6f, Q_c = 0 at omegaL = %.6f (bisection to 1e-6)", w_root, qc_root));

    // beta_CC - beta_c sign change versus the refrigerator boundary.
    std::optional<double> flip;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double a = rows[i].report.beta_cc - base.beta_c, b = rows[i + 1].report.beta_cc - base.beta_c;
        if ((a > 0) != (b > 0)) {
            flip = 0.5 * (rows[i].cfg.omegaL + rows[i + 1].cfg.omegaL);
            break;
        }
    }
    const double boundary = 0.5 * (rows[first_iv - 1].cfg.omegaL + rows[first_iv].cfg.omegaL);
    const bool flip_ok = flip && std::abs(*flip - boundary) <= step * (1 + 1e-9);
    return {contiguous && gap > 2e-6 && flip_ok,
            fmt("I on [%.4f, %.4f], IV on [%.4f, %.4f], contiguous=%s; gap %.2e wide; "
                "beta_CC - beta_c flips at %.4f vs IV boundary %.4f (step %.4f)",
                rows[0].cfg.omegaL, rows[last_i].cfg.omegaL, rows[first_iv].cfg.omegaL,
                rows[n - 1].cfg.omegaL, contiguous ? "yes" : "no", gap, flip.value_or(std::nan("")),
                boundary, step)};
}

Outcome coupling_phase_diagram() {
    config::RunConfig c;
    c.sweep_from = 0.82;
    c.sweep_to = 0.96;
    c.sweep_steps = 15;
    const std::vector<double> couplings{1e-3, 2e-3, 3e-3, 4e-3, 5e-3};
    std::vector<double> area, eta, kappa;
    bool all_ok = true;
    for (double dc : couplings) {
        auto row_cfg = c;
        row_cfg.d_c = dc;
        const auto rows = pipeline::run_sweep(row_cfg);
        double best_eta = 0.0, best_kappa = 0.0;
        bool any_iv = false;
        for (const auto& r : rows) {
            if (!accepted(r)) all_ok = false;
            if (r.report.regime == thermo::Regime::HeatEngine)
                best_eta = std::max(best_eta, r.report.eta / r.report.eta_carnot);
            if (r.report.regime == thermo::Regime::Refrigerator) {
                any_iv = true;
                best_kappa = std::max(best_kappa, r.report.kappa / r.report.kappa_carnot);
            }
        }
        // IV extent inside the window from the Q_c = 0 crossing.
        double a = 0.0;
        if (any_iv) {
            const double onset = bisect(
                [&](double w) { return pipeline::run_point(pipeline::with_value(row_cfg, "omegaL", w)).report.qbar_c; },
                c.sweep_from, c.sweep_to, 1e-6);
            a = c.sweep_to - onset;
        }
        area.push_back(a);
        eta.push_back(best_eta);
        kappa.push_back(best_kappa);
        info(fmt("d_c = %.0e: %s IV width %.6f, max eta/eta_C %.4f, max kappa/kappa_C %.4f", dc,
                 regime_string(rows).c_str(), a, best_eta, best_kappa));
    }
    bool shrink = true, eta_dec = true, kappa_dec = true;
    for (std::size_t i = 1; i < couplings.size(); ++i) {
        shrink = shrink && area[i] < area[i - 1];
        eta_dec = eta_dec && eta[i] < eta[i - 1];
        kappa_dec = kappa_dec && (kappa[i] < kappa[i - 1] || area[i] == 0.0);
    }
    const bool below = *std::max_element(eta.begin(), eta.end()) < 1.0 &&
                       *std::max_element(kappa.begin(), kappa.end()) < 1.0;
    const bool vanishes = area.back() == 0.0;
    return {all_ok && shrink && vanishes && eta_dec && kappa_dec && below,
            fmt("IV width shrinks monotonically: %s, vanishes at d_c = %.0e: %s (width %.4f); "
                "max eta/eta_C decreasing: %s; max kappa/kappa_C decreasing: %s; both < 1: %s",
                shrink ? "yes" : "no", couplings.back(), vanishes ? "yes" : "no", area.back(),
                eta_dec ? "yes" : "no", kappa_dec ? "yes" : "no", below ? "yes" : "no")};
}

double extra(const pipeline::PointResult& r, const std::string& key) {
    for (const auto& [k, v] : r.extra)
        if (k == key) return v;
    return std::nan("");
}

Outcome laser_cooling() {
    config::RunConfig c;
    c.g = 1e-4;
    c.d_h = 5e-3;
    c.d_c = 1.13e-4;
    c.gamma = 1e-6;
    c.omega_res = 5e-3;
    c.beta_c = c.beta_h = 1e4;
    c.allow_any_temperatures = true;
    c.max_fock = 48;  // the thermal tail near resonance needs more levels
    c.sweep_from = -8e-3;
    c.sweep_to = -1e-3;
    c.sweep_steps = 8;
    const auto rows = pipeline::run_lasercool(c);
    const double step = 1e-3, nu = 5e-3;
    double best = 1e300, arg = 0.0, worst_dev = 0.0;
    bool all_ok = true;
    std::string curve;
    for (const auto& r : rows) {
        if (!accepted(r)) all_ok = false;
        const double n = r.report.n_mean, na = extra(r, "n_analytic"), d = extra(r, "delta");
        curve += fmt("%.3f:%.4f/%.4f ", d * 1e3, n, na);
        if (n < best) best = n, arg = d;
        worst_dev = std::max(worst_dev, std::abs(n - na) / na);
    }
    info("delta*1e3:<n>/<n>_sideband " + curve);
    const double limit = c.d_h * c.d_h / (16.0 * nu * nu);
    const bool at_min = std::abs(arg + nu) <= step * (1 + 1e-9);
    const bool factor = best < 2.0 * limit && best > 0.5 * limit;
    return {all_ok && at_min && factor && worst_dev < 0.25,
            fmt("minimum <n> = %.4f at delta = %.4f (target -%.4f, step %.4f); Gamma^2/16nu^2 = %.4f; "
                "max relative deviation from sideband theory %.1f%% (tol 25%%)",
                best, arg, nu, step, limit, 100.0 * worst_dev)};
}

Outcome benchmark() {
    config::RunConfig c;
    c.omegaL = 0.75;
    c.g = 0.2;
    c.d_h = 5e-3;
    c.beta_c = 25.0;
    c.beta_h = 2.2;
    c.omega_res = 0.2;
    c.d_c = 1e-2;
    std::vector<pipeline::PointResult> rows;
    const std::vector<double> gammas{5e-4, 1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2};
    for (double g : gammas) {
        auto p = c;
        p.sweep_variable = "gamma";
        p.sweep_from = p.sweep_to = g;
        p.sweep_steps = 1;
        rows.push_back(pipeline::run_benchmark(p).front());
    }
    bool mono = true, all_ok = true;
    std::string dev_h, dev_c;
    double prev = 1e300, prev_c = 1e300;
    bool mono_c = true;
    for (const auto& r : rows) {
        if (!accepted(r)) all_ok = false;
        const double dh = extra(r, "rel_dev_qbar_h");
        const double dc = std::abs(r.report.qbar_c - extra(r, "oracle_qbar_c")) / std::abs(extra(r, "oracle_qbar_c"));
        dev_h += fmt("%.3e ", dh);
        dev_c += fmt("%.3e ", dc);
        mono = mono && dh < prev;
        mono_c = mono_c && dc < prev_c;
        prev = dh;
        prev_c = dc;
    }
    info("gamma grid: 5e-4 1e-3 2e-3 5e-3 1e-2 2e-2 5e-2 at d_c = 1e-2");
    info("rel. deviation Q_h: " + dev_h);
    info("rel. deviation Q_c: " + dev_c + (mono_c ? "(decreasing)" : "(not monotone)"));
    return {all_ok && mono, fmt("Q_h deviation decreases monotonically with gamma: %s", mono ? "yes" : "no")};
}

Outcome thermal_statistics() {
    const auto& rows = reference_sweep();
    double worst = 0.0;
    for (const auto& r : rows)
        if (accepted(r)) worst = std::max(worst, r.report.thermal_residual);
    return {worst < 0.1, fmt("max thermal_residual over the sweep = %.3e (tol 0.1)", worst)};
}

Outcome convergence_gates() {
    config::RunConfig base;
    base.auto_fock = false;
    const auto r0 = pipeline::run_point(base);
    auto rel = [&](const pipeline::PointResult& r) {
        const auto& a = r0.report;
        const auto& b = r.report;
        return std::max({std::abs(b.qbar_c - a.qbar_c) / std::abs(a.qbar_c),
                         std::abs(b.qbar_h - a.qbar_h) / std::abs(a.qbar_h),
                         std::abs(b.wbar - a.wbar) / std::abs(a.wbar)});
    };
    auto fock = base;
    fock.n_fock = 2 * base.n_fock;
    fock.max_fock = fock.n_fock;
    auto kext = base;
    kext.k_ext = base.k_ext + 2;
    auto krho = base;
    krho.k_rho = base.k_rho + 2;
    const double df = rel(pipeline::run_point(fock));
    const double dk = rel(pipeline::run_point(kext));
    const double dr = rel(pipeline::run_point(krho));
    return {df < 1e-3 && dk < 1e-3 && dr < 1e-3,
            fmt("max relative change of Q_c, Q_h, W: n_fock x2 %.1e, K_ext+2 %.1e, K_rho+2 %.1e (tol 1e-3)",
                df, dk, dr)};
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.insert(std::stoi(item));
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::string only, expect_fail;
    app.add_option("--only", only, "comma-separated criteria to run");
    app.add_option("--expect-fail", expect_fail, "comma-separated criteria known to fail");
    CLI11_PARSE(app, argc, argv);
    const auto selected = parse_list(only);
    const auto expected = parse_list(expect_fail);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"equilibrium fixed points", equilibrium},
        {"Floquet quasienergies vs one-period propagator", floquet_consistency},
        {"generator reconstruction", generator_reconstruction},
        {"200-period time-domain relaxation", time_domain_relaxation},
        {"thermodynamic laws", thermodynamic_laws},
        {"engine and refrigerator regimes, gap and CC temperature", engine_fridge_regimes},
        {"coupling phase diagram and performance", coupling_phase_diagram},
        {"laser-cooling limit", laser_cooling},
        {"static-coupling benchmark", benchmark},
        {"thermal CC statistics", thermal_statistics},
        {"convergence gates", convergence_gates},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s [%d] %s: %s (%.0f s)\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        std::fflush(stdout);
        if (!o.pass && !expected.count(id)) ++unexpected;
        if (!o.pass && expected.count(id)) info("(listed as a known failure)");
    }
    return unexpected == 0 ? 0 : 1;
}
