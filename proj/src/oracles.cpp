// oracles.cpp: Reference computations: sideband cooling, bare-qubit Markov benchmark, ODE propagation

#include "fcc/oracles.hpp"

#include <cmath>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "fcc/errors.hpp"
#include "fcc/floquet.hpp"
#include "fcc/generator.hpp"

namespace fcc::oracles {

double sideband_lineshape(double delta, double gamma_decay) {
    const double h2 = 0.25 * gamma_decay * gamma_decay;
    return h2 / (h2 + delta * delta);
}

double sideband_cooling_occupation(const SidebandParams& p) {
    if (!(p.gamma_decay > 0.0) || !(p.nu > 0.0)) throw DomainError("sideband parameters must be positive");
    const double heat = p.gamma_decay * sideband_lineshape(p.delta - p.nu, p.gamma_decay);
    const double cool = p.gamma_decay * sideband_lineshape(p.delta + p.nu, p.gamma_decay);
    if (!(cool > heat)) throw DomainError("no steady cooling: cooling rate does not exceed heating rate");
    return heat / (cool - heat);
}

BenchmarkFlows bare_qubit_secular_steady(const model::SupersystemSpec& spec,
                                         const bath::SpectralDensity& j_cold,
                                         const bath::SpectralDensity& j_hot, int k_ext) {
    if (!(spec.omega0 > 0.0) || !(spec.omegaL > 0.0)) throw DomainError("frequencies must be positive");
    const Matrix sx = model::ops::sigma_x();
    PeriodicOperator h(2, 2, -1, 1, spec.omegaL);
    h.at_harmonic(0) = 0.5 * spec.omega0 * model::ops::sigma_z();
    h.at_harmonic(1) = 0.5 * spec.g * sx;
    h.at_harmonic(-1) = 0.5 * spec.g * sx;
    const auto fs = floquet::solve_floquet(h.trimmed(0.0), k_ext);

    const Matrix s = sx / std::sqrt(2.0 * spec.omega0);
    const auto jd = floquet::decompose_operator(s, fs);
    std::vector<generator::BathChannel> baths;
    baths.push_back({"hot", s, j_hot, spec.beta_h, jd});
    baths.push_back({"cold", s, j_cold, spec.beta_c, jd});
    const auto sec = generator::secular_steady_state(fs, baths);
    BenchmarkFlows out;
    out.qbar_h = sec.heat[0];
    out.qbar_c = sec.heat[1];
    out.wbar = -out.qbar_c - out.qbar_h;
    return out;
}

namespace {

using State = std::vector<cplx>;

} // namespace

Matrix propagate(const MatrixRhs& f, const Matrix& y0, double t0, double t1,
                 const PropagateOptions& opts) {
    namespace odeint = boost::numeric::odeint;
    const Eigen::Index rows = y0.rows(), cols = y0.cols();
    State x(y0.data(), y0.data() + y0.size());
    auto sys = [&](const State& y, State& dydt, double t) {
        const Matrix r = f(t, Eigen::Map<const Matrix>(y.data(), rows, cols));
        dydt.assign(r.data(), r.data() + r.size());
    };
    if (t1 == t0) return y0;
    const double dt = std::copysign(std::min(opts.initial_step, std::abs(t1 - t0)), t1 - t0);
    try {
        auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(opts.abs_tol, opts.rel_tol);
        odeint::integrate_adaptive(stepper, sys, x, t0, t1, dt);
    } catch (const std::exception& e) {
        throw NumericalError(std::string("time integration failed: ") + e.what());
    }
    for (const auto& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("time integration produced non-finite values");
    return Eigen::Map<const Matrix>(x.data(), rows, cols);
}

Matrix propagate_schrodinger(const PeriodicOperator& h, const Matrix& psi0, double t0, double t1,
                             const PropagateOptions& opts) {
    const cplx mi(0.0, -1.0);
    return propagate([&](double t, const Matrix& y) -> Matrix { return mi * (h.at(t) * y); }, psi0,
                     t0, t1, opts);
}

Matrix propagator(const PeriodicOperator& h, double t0, double t1, const PropagateOptions& opts) {
    return propagate_schrodinger(h, Matrix::Identity(h.rows(), h.rows()), t0, t1, opts);
}

} // namespace fcc::oracles
