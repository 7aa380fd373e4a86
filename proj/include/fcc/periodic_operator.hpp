// periodic_operator.hpp: T-periodic matrix functions stored by Fourier harmonics

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace fcc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// O(t) = sum_k exp(i k omegaL t) O_k for k in [min_harmonic, max_harmonic].
// Rows and columns need not agree (Floquet mode matrices are square, but
// nothing here assumes Hermiticity).
class PeriodicOperator {
public:
    PeriodicOperator() = default;
    PeriodicOperator(Eigen::Index rows, Eigen::Index cols, int min_harmonic, int max_harmonic,
                     double omegaL);

    static PeriodicOperator constant(const Matrix& m, double omegaL);

    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    int min_harmonic() const { return kmin_; }
    int max_harmonic() const { return kmin_ + static_cast<int>(harmonics_.size()) - 1; }
    // Largest |k| stored.
    int support() const;
    double omegaL() const { return omegaL_; }
    bool empty() const { return harmonics_.empty(); }

    // Zero matrix outside the stored window.
    Matrix component(int k) const;
    // Mutable access; grows the window when k lies outside it.
    Matrix& at_harmonic(int k);

    // O(t) reconstructed from the harmonics.
    Matrix at(double t) const;

    // O(t)^dagger, i.e. harmonic k -> (O_{-k})^dagger.
    PeriodicOperator adjoint() const;

    // component(-k) == component(k)^dagger for all k, within tol (absolute, max entry).
    bool is_hermitian_periodic(double tol = 1e-13) const;

    // Drops outer harmonics whose max-abs entry is below tol * (largest entry overall).
    PeriodicOperator trimmed(double rel_tol) const;

    PeriodicOperator& operator+=(const PeriodicOperator& other);
    PeriodicOperator& operator*=(cplx s);

private:
    Eigen::Index rows_{0};
    Eigen::Index cols_{0};
    int kmin_{0};
    double omegaL_{1.0};
    std::vector<Matrix> harmonics_;
};

// Harmonics of the pointwise product A(t) B(t) (discrete convolution).
// Blocks with max entry below skip_tol are ignored in the convolution.
PeriodicOperator multiply(const PeriodicOperator& a, const PeriodicOperator& b,
                          double skip_tol = 0.0);

PeriodicOperator operator+(PeriodicOperator a, const PeriodicOperator& b);

// Kronecker product of dense matrices (first factor outer).
Matrix kron(const Matrix& a, const Matrix& b);

} // namespace fcc
