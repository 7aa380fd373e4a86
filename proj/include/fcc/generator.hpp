// generator.hpp: Counting-field Floquet master equation, periodic steady state, heat currents
//
// Superoperators act on column-stacked density matrices: vec(A X B) = (B^T (x) A) vec(X),
// so element (i, j) of a d x d matrix sits at index i + j d.

#pragma once

#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "fcc/bath.hpp"
#include "fcc/floquet.hpp"
#include "fcc/periodic_operator.hpp"

namespace fcc::generator {

using SparseMatrix = Eigen::SparseMatrix<cplx>;

struct BathChannel {
    std::string name;
    Matrix coupling;                 // static system operator S
    bath::SpectralDensity density;   // J(w), odd-extended internally
    double beta{};
    floquet::JumpDecomposition jumps;
};

struct GeneratorOptions {
    double zero_delta_tol{1e-12};    // |Delta| below this uses the J'(0)/beta limit
    double trim_tol{1e-15};          // relative cut for negligible outer harmonics
    double prune_tol{1e-12};         // absolute cut for superoperator entries
    double max_edge_weight{1e-8};    // refuse Floquet solutions with more truncation weight
};

// Generator L(chi, t) of the dressed master equation (Lamb shift omitted).
// Per bath it keeps the periodic operators
//   A(t)  = sum_entries J N(Delta)        e^{i n wL t} amp |r(t)><r'(t)|
//   A'(t) = sum_entries J N(Delta) Delta  e^{i n wL t} amp |r(t)><r'(t)|
// with B = A^dagger and B' = -A'^dagger, so that at chi = 0
//   L(t) rho = -i[H(t), rho] - sum_baths (S A rho - A rho S + rho B S - S rho B)
// and the counting-field derivative d/d(i chi) is  rho -> S rho B' - A' rho S.
class CountingLiouvillian {
public:
    struct Channel {
        std::string name;
        Matrix coupling;
        PeriodicOperator absorption;         // A
        PeriodicOperator emission;           // B = A^dagger
        PeriodicOperator absorption_heat;    // A'
        PeriodicOperator emission_heat;      // B'
    };

    CountingLiouvillian(PeriodicOperator hamiltonian, std::vector<Channel> channels,
                        double prune_tol);

    Eigen::Index dimension() const { return hamiltonian_.rows(); }
    double omegaL() const { return hamiltonian_.omegaL(); }
    const PeriodicOperator& hamiltonian() const { return hamiltonian_; }
    const std::vector<Channel>& channels() const { return channels_; }
    std::size_t channel_index(const std::string& name) const;
    // Largest |q| with a nonzero harmonic L_q.
    int support() const;

    // Harmonic L_q at chi = 0, including the commutator part.
    SparseMatrix superoperator(int q) const;
    // Harmonic of d L / d(i chi) at chi = 0 for one bath.
    SparseMatrix derivative_superoperator(std::size_t channel, int q) const;

    // Matrix-free forms of the same maps.
    Matrix apply_harmonic(int q, const Matrix& rho) const;
    Matrix apply(double t, const Matrix& rho) const;

private:
    PeriodicOperator hamiltonian_;
    std::vector<Channel> channels_;
    double prune_tol_;
};

CountingLiouvillian build_liouvillian(const PeriodicOperator& hamiltonian,
                                      const floquet::FloquetSolution& fs,
                                      const std::vector<BathChannel>& baths,
                                      const GeneratorOptions& opts = {});

// rho(t) = sum_n exp(i n wL t) rho_n.
struct PeriodicDensityMatrix {
    PeriodicOperator harmonics;

    int k_rho() const { return harmonics.max_harmonic(); }
    Matrix average() const { return harmonics.component(0); }
    Matrix at(double t) const { return harmonics.at(t); }
};

struct SteadyStateOptions {
    double trace_tol{1e-10};
    double hermiticity_tol{1e-10};
    double positivity_tol{1e-8};
    int positivity_samples{24};
    int gap_iterations{10};
};

struct SteadyStateDiagnostics {
    double residual{};               // max-abs residual of the unbordered block equations
    double trace_error{};            // max |Tr rho_n - delta_n0|
    double hermiticity_error{};      // max |rho_{-n} - rho_n^dagger| before symmetrization
    double min_eigenvalue{};         // smallest eigenvalue of sampled rho(t)
    double gap_estimate{};           // smallest |eigenvalue| of the bordered block system
    Eigen::Index system_size{};
};

struct SteadyState {
    PeriodicDensityMatrix rho;
    SteadyStateDiagnostics diagnostics;
};

// Solves [sum_k F_k (x) L_k - i wL F_z] vec(rho) = 0 with Tr rho_0 = 1 on n in [-K_rho, K_rho].
SteadyState steady_state(const CountingLiouvillian& L, int k_rho,
                         const SteadyStateOptions& opts = {});

struct HeatCurrent {
    std::vector<cplx> harmonics;  // Q_nu harmonics q in [-K, K]
    int k{};
    double average{};             // period average, positive = into the supersystem

    double at(double t, double omegaL) const;
};

// Qdot_nu(t) = -<Hdot_B^(nu)> = -Tr{ dL/d(i chi) rho(t) }.
HeatCurrent heat_current(const CountingLiouvillian& L, const PeriodicDensityMatrix& rho,
                         std::size_t channel);

// Same quantity evaluated through the sparse derivative superoperators.
double heat_current_average_superop(const CountingLiouvillian& L, const PeriodicDensityMatrix& rho,
                                    std::size_t channel);

// Period average of Tr{ O L(t) rho(t) }, e.g. d<H_CC>/dt for O = H_CC.
cplx average_rate_of_change(const CountingLiouvillian& L, const PeriodicDensityMatrix& rho,
                            const Matrix& observable);

// Approximate secular (Pauli) treatment on the Floquet states; an approximate
// comparison mode, not the default solver.
struct SecularResult {
    std::vector<double> populations;
    std::vector<double> heat;  // per bath, same order as input, positive = into the system
};

SecularResult secular_steady_state(const floquet::FloquetSolution& fs,
                                   const std::vector<BathChannel>& baths,
                                   double zero_delta_tol = 1e-12);

} // namespace fcc::generator
