// model.cpp: Driven qubit + collective coordinate supersystem in harmonic form

#include "fcc/model.hpp"

#include <cmath>
#include <sstream>

#include "fcc/errors.hpp"

namespace fcc::model {

namespace ops {

Matrix sigma_x() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = m(1, 0) = 1.0;
    return m;
}

Matrix sigma_z() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

Matrix annihilation(int n_fock) {
    Matrix a = Matrix::Zero(n_fock, n_fock);
    for (int p = 1; p < n_fock; ++p) a(p - 1, p) = std::sqrt(static_cast<double>(p));
    return a;
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

} // namespace ops

void SupersystemSpec::validate() const {
    auto fail = [](const std::string& msg) { throw DomainError("invalid supersystem: " + msg); };
    if (n_fock < 2) fail("n_fock must be >= 2");
    if (!(omega0 > 0.0)) fail("omega0 must be positive");
    if (!(omegaL > 0.0)) fail("omegaL must be positive");
    if (!(omega_cc > 0.0)) fail("omega_cc must be positive");
    if (!(g >= 0.0)) fail("drive amplitude g must be non-negative");
    if (!(lambda0 >= 0.0)) fail("lambda0 must be non-negative");
    if (!(beta_h > 0.0) || !(beta_c > 0.0)) fail("inverse temperatures must be positive");
    if (!allow_any_temperatures && !(beta_h < beta_c))
        fail("hot bath must be hotter than the cold bath (beta_h < beta_c)");
}

namespace {

Matrix position_like(int n_fock) {
    const Matrix a = ops::annihilation(n_fock);
    return a + a.adjoint();
}

// sigma_x (x) (a + a^dag) scaled by the CC coupling lambda0 / (2 sqrt(omega0 omega_cc)),
// i.e. lambda0/sqrt(2 omega_cc) times the 1/sqrt(2 omega0) of S_c.
Matrix cc_coupling_term(const SupersystemSpec& s) {
    const double c = s.lambda0 / (2.0 * std::sqrt(s.omega0 * s.omega_cc));
    return c * kron(ops::sigma_x(), position_like(s.n_fock));
}

Matrix static_part(const SupersystemSpec& s) {
    const Matrix a = ops::annihilation(s.n_fock);
    return 0.5 * s.omega0 * kron(ops::sigma_z(), ops::identity(s.n_fock)) +
           s.omega_cc * kron(ops::identity(2), a.adjoint() * a);
}

} // namespace

PeriodicOperator build_supersystem_fourier(const SupersystemSpec& spec) {
    spec.validate();
    const int d = spec.dimension();
    PeriodicOperator h(d, d, -1, 1, spec.omegaL);
    h.at_harmonic(0) = static_part(spec);

    const Matrix drive = 0.5 * spec.g * kron(ops::sigma_x(), ops::identity(spec.n_fock));
    h.at_harmonic(1) += drive;
    h.at_harmonic(-1) += drive;

    const Matrix coupling = cc_coupling_term(spec);
    if (spec.coupling_form == CouplingForm::StaticCold) {
        h.at_harmonic(0) -= coupling;
    } else {
        // -c sin(wt) X = -c (e^{iwt} - e^{-iwt}) / (2i) X
        const cplx half_over_i = cplx(0.0, -0.5);
        h.at_harmonic(1) -= half_over_i * coupling;
        h.at_harmonic(-1) += half_over_i * coupling;
    }
    return h.trimmed(0.0);
}

Matrix supersystem_hamiltonian_at(const SupersystemSpec& spec, double t) {
    spec.validate();
    const double phase = spec.omegaL * t;
    Matrix h = static_part(spec);
    h += spec.g * std::cos(phase) * kron(ops::sigma_x(), ops::identity(spec.n_fock));
    const double sc = spec.coupling_form == CouplingForm::StaticCold ? 1.0 : std::sin(phase);
    h -= sc * cc_coupling_term(spec);
    return h;
}

CouplingOperators build_coupling_operators(const SupersystemSpec& spec) {
    spec.validate();
    CouplingOperators out;
    out.s_hot = kron(ops::sigma_x(), ops::identity(spec.n_fock)) / std::sqrt(2.0 * spec.omega0);
    out.s_cold_residual =
        kron(ops::identity(2), position_like(spec.n_fock)) / std::sqrt(2.0 * spec.omega_cc);
    return out;
}

Matrix number_operator(int n_fock) {
    const Matrix a = ops::annihilation(n_fock);
    return kron(ops::identity(2), a.adjoint() * a);
}

Matrix cc_hamiltonian(const SupersystemSpec& spec) {
    return spec.omega_cc * number_operator(spec.n_fock);
}

FockTruncationReport fock_truncation_check(const Matrix& rho0, int n_fock, double threshold) {
    if (rho0.rows() != 2 * n_fock) throw DomainError("density matrix does not match n_fock");
    double top = 0.0;
    for (int q = 0; q < 2; ++q)
        for (int p = std::max(0, n_fock - 2); p < n_fock; ++p)
            top += std::real(rho0(q * n_fock + p, q * n_fock + p));
    return {top, threshold, top <= threshold};
}

} // namespace fcc::model
