// model.hpp: Driven qubit + collective coordinate supersystem in harmonic form
//
// Basis convention: qubit factor first, Fock factor second. Qubit index 0 is
// the excited state |e> (sigma_z = +1), index 1 the ground state |g>. A product
// state |q, p> therefore sits at index q * n_fock + p.

#pragma once

#include <optional>

#include "fcc/bath.hpp"
#include "fcc/periodic_operator.hpp"

namespace fcc::model {

enum class CouplingForm {
    SinusoidalCold,  // S_c(t) = sigma_x sin(omegaL t) / sqrt(2 omega0)
    StaticCold,      // S_c = sigma_x / sqrt(2 omega0)
};

struct SupersystemSpec {
    double omega0{1.0};
    double g{0.0};
    double omegaL{1.0};
    double omega_cc{0.1};
    int n_fock{12};
    double lambda0{0.0};
    double beta_h{1.0};
    double beta_c{1.0};
    // Unset baths are decoupled (no dissipator, no heat current).
    std::optional<bath::SpectralDensity> hot_bath;
    std::optional<bath::SpectralDensity> residual_bath;
    CouplingForm coupling_form{CouplingForm::SinusoidalCold};
    bool allow_any_temperatures{false};

    int dimension() const { return 2 * n_fock; }
    // Throws DomainError when an invariant is violated.
    void validate() const;
};

// H_S'(t) harmonics: k=0 carries (omega0/2) sigma_z + omega_cc a^dag a, k=+-1 the
// drive (g/2) sigma_x and, for sinusoidal coupling, the sigma_x (a + a^dag) term.
PeriodicOperator build_supersystem_fourier(const SupersystemSpec& spec);

// Direct evaluation of H_S'(t) from its time-domain form (no harmonics).
Matrix supersystem_hamiltonian_at(const SupersystemSpec& spec, double t);

struct CouplingOperators {
    Matrix s_hot;             // sigma_x / sqrt(2 omega0) on the qubit
    Matrix s_cold_residual;   // (a + a^dag) / sqrt(2 omega_cc) on the CC
};

CouplingOperators build_coupling_operators(const SupersystemSpec& spec);

// Single-factor operators lifted to the supersystem space.
Matrix number_operator(int n_fock);          // 1 (x) a^dag a
Matrix cc_hamiltonian(const SupersystemSpec& spec);  // 1 (x) omega_cc a^dag a

namespace ops {
Matrix sigma_x();
Matrix sigma_z();
Matrix annihilation(int n_fock);
Matrix identity(int n);
} // namespace ops

struct FockTruncationReport {
    double top_population{};  // period-averaged population of the two highest Fock levels
    double threshold{};
    bool pass{};
};

// rho0 is the zero harmonic (period average) of the steady state.
FockTruncationReport fock_truncation_check(const Matrix& rho0, int n_fock,
                                           double threshold = 1e-6);

} // namespace fcc::model
