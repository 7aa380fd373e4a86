// periodic_operator.cpp: T-periodic matrix functions stored by Fourier harmonics

#include "fcc/periodic_operator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "fcc/errors.hpp"

namespace fcc {

PeriodicOperator::PeriodicOperator(Eigen::Index rows, Eigen::Index cols, int min_harmonic,
                                   int max_harmonic, double omegaL)
    : rows_(rows), cols_(cols), kmin_(min_harmonic), omegaL_(omegaL) {
    if (max_harmonic < min_harmonic) throw DomainError("empty harmonic window");
    harmonics_.assign(static_cast<std::size_t>(max_harmonic - min_harmonic + 1),
                      Matrix::Zero(rows, cols));
}

PeriodicOperator PeriodicOperator::constant(const Matrix& m, double omegaL) {
    PeriodicOperator p(m.rows(), m.cols(), 0, 0, omegaL);
    p.harmonics_[0] = m;
    return p;
}

int PeriodicOperator::support() const {
    if (empty()) return 0;
    return std::max(std::abs(min_harmonic()), std::abs(max_harmonic()));
}

Matrix PeriodicOperator::component(int k) const {
    if (k < kmin_ || k > max_harmonic()) return Matrix::Zero(rows_, cols_);
    return harmonics_[static_cast<std::size_t>(k - kmin_)];
}

Matrix& PeriodicOperator::at_harmonic(int k) {
    if (harmonics_.empty()) {
        kmin_ = k;
        harmonics_.push_back(Matrix::Zero(rows_, cols_));
    }
    while (k < kmin_) {
        harmonics_.insert(harmonics_.begin(), Matrix::Zero(rows_, cols_));
        --kmin_;
    }
    while (k > max_harmonic()) harmonics_.push_back(Matrix::Zero(rows_, cols_));
    return harmonics_[static_cast<std::size_t>(k - kmin_)];
}

Matrix PeriodicOperator::at(double t) const {
    Matrix out = Matrix::Zero(rows_, cols_);
    for (std::size_t i = 0; i < harmonics_.size(); ++i) {
        const int k = kmin_ + static_cast<int>(i);
        out += std::polar(1.0, k * omegaL_ * t) * harmonics_[i];
    }
    return out;
}

PeriodicOperator PeriodicOperator::adjoint() const {
    if (empty()) return PeriodicOperator(cols_, rows_, 0, 0, omegaL_);
    PeriodicOperator out(cols_, rows_, -max_harmonic(), -kmin_, omegaL_);
    for (int k = kmin_; k <= max_harmonic(); ++k) out.at_harmonic(-k) = component(k).adjoint();
    return out;
}

bool PeriodicOperator::is_hermitian_periodic(double tol) const {
    if (rows_ != cols_) return false;
    const int K = support();
    for (int k = -K; k <= K; ++k) {
        if ((component(-k) - component(k).adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    }
    return true;
}

PeriodicOperator PeriodicOperator::trimmed(double rel_tol) const {
    if (empty()) return *this;
    double scale = 0.0;
    for (const auto& h : harmonics_) scale = std::max(scale, h.cwiseAbs().maxCoeff());
    const double cut = rel_tol * scale;
    int lo = kmin_, hi = max_harmonic();
    while (lo < hi && component(lo).cwiseAbs().maxCoeff() <= cut) ++lo;
    while (hi > lo && component(hi).cwiseAbs().maxCoeff() <= cut) --hi;
    PeriodicOperator out(rows_, cols_, lo, hi, omegaL_);
    for (int k = lo; k <= hi; ++k) out.at_harmonic(k) = component(k);
    return out;
}

PeriodicOperator& PeriodicOperator::operator+=(const PeriodicOperator& other) {
    if (other.empty()) return *this;
    if (empty()) {
        rows_ = other.rows_;
        cols_ = other.cols_;
        omegaL_ = other.omegaL_;
    }
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DomainError("periodic operator shape mismatch in sum");
    for (int k = other.min_harmonic(); k <= other.max_harmonic(); ++k)
        at_harmonic(k) += other.component(k);
    return *this;
}

PeriodicOperator& PeriodicOperator::operator*=(cplx s) {
    for (auto& h : harmonics_) h *= s;
    return *this;
}

PeriodicOperator operator+(PeriodicOperator a, const PeriodicOperator& b) {
    a += b;
    return a;
}

PeriodicOperator multiply(const PeriodicOperator& a, const PeriodicOperator& b, double skip_tol) {
    if (a.cols() != b.rows()) throw DomainError("periodic operator shape mismatch in product");
    if (a.empty() || b.empty()) return PeriodicOperator(a.rows(), b.cols(), 0, 0, a.omegaL());
    PeriodicOperator out(a.rows(), b.cols(), a.min_harmonic() + b.min_harmonic(),
                         a.max_harmonic() + b.max_harmonic(), a.omegaL());
    std::vector<bool> a_live, b_live;
    for (int i = a.min_harmonic(); i <= a.max_harmonic(); ++i)
        a_live.push_back(a.component(i).cwiseAbs().maxCoeff() > skip_tol);
    for (int j = b.min_harmonic(); j <= b.max_harmonic(); ++j)
        b_live.push_back(b.component(j).cwiseAbs().maxCoeff() > skip_tol);
    for (int i = a.min_harmonic(); i <= a.max_harmonic(); ++i) {
        if (!a_live[static_cast<std::size_t>(i - a.min_harmonic())]) continue;
        const Matrix ai = a.component(i);
        for (int j = b.min_harmonic(); j <= b.max_harmonic(); ++j) {
            if (!b_live[static_cast<std::size_t>(j - b.min_harmonic())]) continue;
            out.at_harmonic(i + j).noalias() += ai * b.component(j);
        }
    }
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace fcc
