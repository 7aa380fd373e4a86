// floquet.cpp: Extended (Sambe) space, quasienergies and Floquet jump components

#include "fcc/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "fcc/errors.hpp"

namespace fcc::floquet {

Matrix ExtendedOperator::block(int m, int mp) const {
    const Eigen::Index d = physical_dim;
    return matrix.block((m + k_ext) * d, (mp + k_ext) * d, d, d);
}

ExtendedOperator build_quasienergy_operator(const PeriodicOperator& h, int k_ext, bool include_fz) {
    if (h.rows() != h.cols()) throw DomainError("quasienergy operator needs a square Hamiltonian");
    if (k_ext < h.support())
        throw DomainError("harmonic window K_ext=" + std::to_string(k_ext) +
                          " is smaller than the operator support " + std::to_string(h.support()));
    const Eigen::Index d = h.rows();
    const Eigen::Index nblocks = 2 * k_ext + 1;
    ExtendedOperator q;
    q.k_ext = k_ext;
    q.physical_dim = d;
    q.omegaL = h.omegaL();
    q.matrix = Matrix::Zero(nblocks * d, nblocks * d);
    for (int m = -k_ext; m <= k_ext; ++m) {
        for (int k = h.min_harmonic(); k <= h.max_harmonic(); ++k) {
            const int mp = m - k;
            if (mp < -k_ext || mp > k_ext) continue;
            q.matrix.block((m + k_ext) * d, (mp + k_ext) * d, d, d) += h.component(k);
        }
        if (include_fz)
            q.matrix.block((m + k_ext) * d, (m + k_ext) * d, d, d).diagonal().array() +=
                m * q.omegaL;
    }
    return q;
}

double fold_quasienergy(double e, double omegaL) {
    const double j = std::ceil(e / omegaL - 0.5);
    return e - j * omegaL;
}

namespace {

struct Candidate {
    Eigen::Index column{};
    double central_weight{};
};

} // namespace

FloquetSolution solve_floquet(const ExtendedOperator& q, const SolveOptions& opts) {
    const Eigen::Index d = q.physical_dim;
    const int K = q.k_ext;
    const double w = q.omegaL;

    Eigen::SelfAdjointEigenSolver<Matrix> es(q.matrix);
    if (es.info() != Eigen::Success) throw NumericalError("quasienergy diagonalization failed");
    const Eigen::VectorXd& evals = es.eigenvalues();
    const Matrix& evecs = es.eigenvectors();
    const Eigen::Index n = evecs.cols();

    auto blockvec = [&](Eigen::Index col, int m) {
        return evecs.col(col).segment((m + K) * d, d);
    };

    const int half = K / 2;
    std::vector<Candidate> cands(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < n; ++c) {
        double cw = 0.0;
        for (int m = -half; m <= half; ++m) cw += blockvec(c, m).squaredNorm();
        cands[static_cast<std::size_t>(c)] = {c, cw};
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return a.central_weight > b.central_weight;
    });

    // Members of one family share |r(0)> = sum_m u^(m); distinct families have
    // linearly independent t=0 vectors.
    Matrix basis(d, d);
    Eigen::Index accepted_count = 0;
    std::vector<Eigen::Index> accepted;
    for (const auto& c : cands) {
        if (accepted_count == d) break;
        Vector v0 = Vector::Zero(d);
        for (int m = -K; m <= K; ++m) v0 += blockvec(c.column, m);
        const double norm0 = v0.norm();
        if (norm0 == 0.0) continue;
        Vector r = v0;
        if (accepted_count > 0) {
            const auto Q = basis.leftCols(accepted_count);
            r -= Q * (Q.adjoint() * r);
            r -= Q * (Q.adjoint() * r);
        }
        if (r.norm() > opts.independence_threshold * norm0) {
            basis.col(accepted_count++) = r.normalized();
            accepted.push_back(c.column);
        }
    }
    if (accepted_count != d) {
        std::ostringstream os;
        os << "found " << accepted_count << " Floquet representatives for dimension " << d
           << "; increase K_ext";
        throw DegeneracyError(os.str());
    }

    struct Rep {
        double eps;
        int shift;
        Eigen::Index column;
    };
    std::vector<Rep> reps;
    int max_shift = 0;
    for (Eigen::Index col : accepted) {
        const double lam = evals(col);
        const int j = static_cast<int>(std::ceil(lam / w - 0.5));
        reps.push_back({lam - j * w, j, col});
        max_shift = std::max(max_shift, std::abs(j));
    }
    std::stable_sort(reps.begin(), reps.end(),
                     [](const Rep& a, const Rep& b) { return a.eps < b.eps; });

    FloquetSolution fs;
    fs.omegaL = w;
    fs.k_ext = K;
    const int kw = K + max_shift;
    fs.modes = PeriodicOperator(d, d, -kw, kw, w);
    const int edge = (K + 3) / 4;
    for (std::size_t r = 0; r < reps.size(); ++r) {
        const auto& rep = reps[r];
        fs.quasienergies.push_back(rep.eps);
        double ew = 0.0;
        for (int m = -K; m <= K; ++m) {
            fs.modes.at_harmonic(m - rep.shift).col(static_cast<Eigen::Index>(r)) =
                blockvec(rep.column, m);
            if (std::abs(m) > K - edge) ew += blockvec(rep.column, m).squaredNorm();
        }
        fs.edge_weight = std::max(fs.edge_weight, ew);
    }

    // Orthonormalize inside exactly degenerate clusters (any combination there
    // is again a Floquet mode of the same quasienergy).
    auto ext_dot = [&](Eigen::Index a, Eigen::Index b) {
        cplx s = 0.0;
        for (int m = -kw; m <= kw; ++m)
            s += fs.modes.component(m).col(a).dot(fs.modes.component(m).col(b));
        return s;
    };
    const double tol = opts.degeneracy_tol * std::max(1.0, w);
    std::size_t start = 0;
    while (start < reps.size()) {
        std::size_t end = start + 1;
        while (end < reps.size() && reps[end].eps - reps[end - 1].eps < tol) ++end;
        if (end - start > 1) {
            for (std::size_t a = start; a < end; ++a) {
                const auto ia = static_cast<Eigen::Index>(a);
                for (std::size_t b = start; b < a; ++b) {
                    const auto ib = static_cast<Eigen::Index>(b);
                    const cplx proj = ext_dot(ib, ia);
                    for (int m = -kw; m <= kw; ++m) {
                        Matrix& u = fs.modes.at_harmonic(m);
                        u.col(ia) -= proj * u.col(ib);
                    }
                }
                const double nrm = std::sqrt(std::real(ext_dot(ia, ia)));
                for (int m = -kw; m <= kw; ++m) fs.modes.at_harmonic(m).col(ia) /= nrm;
            }
        }
        start = end;
    }
    return fs;
}

FloquetSolution solve_floquet(const PeriodicOperator& h, int k_ext, const SolveOptions& opts) {
    return solve_floquet(build_quasienergy_operator(h, k_ext), opts);
}

PeriodicOperator JumpDecomposition::amplitude_series(Eigen::Index dim) const {
    PeriodicOperator out(dim, dim, min_harmonic, max_harmonic, omegaL);
    for (const auto& e : entries) out.at_harmonic(e.harmonic)(e.bra, e.ket) = e.amplitude;
    return out;
}

JumpDecomposition decompose_operator(const Matrix& s, const FloquetSolution& fs,
                                     double amplitude_floor) {
    const Eigen::Index d = fs.dimension();
    if (s.rows() != d || s.cols() != d) throw DomainError("operator does not match Floquet space");
    const int lo = fs.modes.min_harmonic(), hi = fs.modes.max_harmonic();

    constexpr double kSkip = 1e-17;
    std::vector<Matrix> u, su;
    std::vector<bool> live;
    for (int m = lo; m <= hi; ++m) {
        u.push_back(fs.modes.component(m));
        su.push_back(s * u.back());
        live.push_back(u.back().cwiseAbs().maxCoeff() > kSkip);
    }
    auto idx = [&](int m) { return static_cast<std::size_t>(m - lo); };

    JumpDecomposition jd;
    jd.omegaL = fs.omegaL;
    const int nmax = hi - lo;
    jd.min_harmonic = -nmax;
    jd.max_harmonic = nmax;
    std::vector<Matrix> amps;
    for (int n = -nmax; n <= nmax; ++n) {
        Matrix amp = Matrix::Zero(d, d);
        for (int m = lo; m <= hi; ++m) {
            const int mp = m + n;
            if (mp < lo || mp > hi || !live[idx(m)] || !live[idx(mp)]) continue;
            amp.noalias() += u[idx(m)].adjoint() * su[idx(mp)];
        }
        amps.push_back(std::move(amp));
    }
    auto at = [&](int n) -> Matrix& { return amps[static_cast<std::size_t>(n + nmax)]; };
    // Hermitian S: pair (r, r', n) with (r', r, -n) exactly, not just up to roundoff.
    if ((s - s.adjoint()).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, s.cwiseAbs().maxCoeff())) {
        for (int n = 0; n <= nmax; ++n) {
            const Matrix sym = 0.5 * (at(n) + at(-n).adjoint());
            at(n) = sym;
            at(-n) = sym.adjoint();
        }
    }
    for (int n = -nmax; n <= nmax; ++n) {
        const Matrix& amp = at(n);
        for (Eigen::Index r = 0; r < d; ++r)
            for (Eigen::Index rp = 0; rp < d; ++rp) {
                const cplx a = amp(r, rp);
                if (std::abs(a) <= amplitude_floor) continue;
                const double delta = fs.quasienergies[static_cast<std::size_t>(r)] -
                                     fs.quasienergies[static_cast<std::size_t>(rp)] + n * fs.omegaL;
                jd.entries.push_back({delta, static_cast<int>(r), static_cast<int>(rp), n, a});
            }
    }
    return jd;
}

} // namespace fcc::floquet
