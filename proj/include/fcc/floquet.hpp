// floquet.hpp: Extended (Sambe) space, quasienergies and Floquet jump components

#pragma once

#include <vector>

#include "fcc/periodic_operator.hpp"

namespace fcc::floquet {

// Q_ext = sum_k F_k (x) O_k + omegaL F_z (x) 1 on harmonic blocks m in [-K, K].
// Block (m, m - k) holds O_k; F_k |m> = |m + k>.
struct ExtendedOperator {
    int k_ext{};
    Eigen::Index physical_dim{};
    double omegaL{};
    Matrix matrix;

    Eigen::Index dimension() const { return matrix.rows(); }
    Matrix block(int m, int mp) const;
};

ExtendedOperator build_quasienergy_operator(const PeriodicOperator& h, int k_ext,
                                            bool include_fz = true);

struct FloquetSolution {
    double omegaL{};
    int k_ext{};
    // Quasienergies folded into (-omegaL/2, omegaL/2].
    std::vector<double> quasienergies;
    // Column r of modes.component(m) is the m-th harmonic u_r^(m) of |r(t)>.
    PeriodicOperator modes;
    // Largest weight any selected representative kept in the outer ceil(K/4)
    // blocks of the truncated ladder; a truncation diagnostic.
    double edge_weight{};

    Eigen::Index dimension() const { return modes.rows(); }
    // Column r holds |r(t)>.
    Matrix modes_at(double t) const { return modes.at(t); }
};

struct SolveOptions {
    double independence_threshold{0.5};
    double degeneracy_tol{1e-10};
};

// Diagonalize Q, keep one representative per physical family, fold into the zone.
FloquetSolution solve_floquet(const ExtendedOperator& q, const SolveOptions& opts = {});

// Convenience: build + solve.
FloquetSolution solve_floquet(const PeriodicOperator& h, int k_ext, const SolveOptions& opts = {});

// Folds a quasienergy into (-omegaL/2, omegaL/2].
double fold_quasienergy(double e, double omegaL);

struct JumpEntry {
    double delta{};   // eps_r - eps_r' + n omegaL
    int bra{};        // r
    int ket{};        // r'
    int harmonic{};   // n
    cplx amplitude{}; // <<r| F_{-n} (x) S |r'>>
};

class JumpDecomposition {
public:
    std::vector<JumpEntry> entries;
    int min_harmonic{};
    int max_harmonic{};
    double omegaL{};

    // Amplitude matrices indexed like a periodic operator: component(n)(r, r').
    PeriodicOperator amplitude_series(Eigen::Index dim) const;
};

// S(t) in the interaction picture decomposed as sum exp(i delta t) amplitude |r(0)><r'(0)|.
// Entries with |amplitude| <= amplitude_floor are dropped.
JumpDecomposition decompose_operator(const Matrix& s, const FloquetSolution& fs,
                                     double amplitude_floor = 1e-12);

} // namespace fcc::floquet
