// oracles.hpp: Reference computations: sideband cooling, bare-qubit Markov benchmark, ODE propagation

#pragma once

#include <functional>

#include "fcc/bath.hpp"
#include "fcc/model.hpp"
#include "fcc/periodic_operator.hpp"

namespace fcc::oracles {

struct SidebandParams {
    double delta{};        // omegaL - omega0
    double gamma_decay{};  // two-level decay rate
    double nu{};           // oscillator frequency
};

// f(D) = (G/2)^2 / ((G/2)^2 + D^2)
double sideband_lineshape(double delta, double gamma_decay);

// <n> = A_heat / (A_cool - A_heat), A_heat = G f(D - nu), A_cool = G f(D + nu).
// Throws DomainError when cooling does not beat heating.
double sideband_cooling_occupation(const SidebandParams& p);

struct BenchmarkFlows {
    double qbar_c{};
    double qbar_h{};
    double wbar{};
};

// Secular Floquet-Markov treatment of the bare driven qubit, coupled through
// sigma_x / sqrt(2 omega0) to both original baths. Only g, omegaL, omega0 and the
// temperatures are taken from the spec.
BenchmarkFlows bare_qubit_secular_steady(const model::SupersystemSpec& spec,
                                         const bath::SpectralDensity& j_cold,
                                         const bath::SpectralDensity& j_hot, int k_ext = 10);

struct PropagateOptions {
    double abs_tol{1e-12};
    double rel_tol{1e-12};
    double initial_step{1e-3};
};

// dY/dt = f(t, Y) for a complex matrix state, integrated with adaptive Dormand-Prince.
using MatrixRhs = std::function<Matrix(double, const Matrix&)>;
Matrix propagate(const MatrixRhs& f, const Matrix& y0, double t0, double t1,
                 const PropagateOptions& opts = {});

// Schrodinger evolution of a state (or of all columns of a matrix) under H(t).
Matrix propagate_schrodinger(const PeriodicOperator& h, const Matrix& psi0, double t0, double t1,
                             const PropagateOptions& opts = {});

// U(t1, t0).
Matrix propagator(const PeriodicOperator& h, double t0, double t1, const PropagateOptions& opts = {});

} // namespace fcc::oracles
