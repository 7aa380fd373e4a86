// generator.cpp: Counting-field Floquet master equation, periodic steady state, heat currents

#include "fcc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/UmfPackSupport>

#include "fcc/errors.hpp"

namespace fcc::generator {

namespace {

using Triplet = Eigen::Triplet<cplx>;

struct NonZero {
    Eigen::Index row, col;
    cplx value;
};

std::vector<NonZero> nonzeros(const Matrix& m, double tol) {
    std::vector<NonZero> out;
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) > tol) out.push_back({i, j, m(i, j)});
    return out;
}

// Appends scale * (P (x) Q) into a triplet list with row/col offsets.
void add_kron(std::vector<Triplet>& out, const std::vector<NonZero>& p,
              const std::vector<NonZero>& q, Eigen::Index dq, cplx scale, double prune,
              Eigen::Index row_off = 0, Eigen::Index col_off = 0) {
    for (const auto& a : p) {
        const cplx sa = scale * a.value;
        for (const auto& b : q) {
            const cplx v = sa * b.value;
            if (std::abs(v) <= prune) continue;
            out.emplace_back(row_off + a.row * dq + b.row, col_off + a.col * dq + b.col, v);
        }
    }
}

std::vector<NonZero> identity_nz(Eigen::Index d) {
    std::vector<NonZero> out;
    for (Eigen::Index i = 0; i < d; ++i) out.push_back({i, i, 1.0});
    return out;
}

// Series sum_n exp(i n wL t) W_n with W_n(r, r') = kernel(entry) * amplitude.
template <class Kernel>
PeriodicOperator weighted_series(const floquet::JumpDecomposition& jd, Eigen::Index d,
                                 Kernel&& kernel) {
    PeriodicOperator w(d, d, std::min(jd.min_harmonic, 0), std::max(jd.max_harmonic, 0), jd.omegaL);
    for (const auto& e : jd.entries) w.at_harmonic(e.harmonic)(e.bra, e.ket) += kernel(e) * e.amplitude;
    return w;
}

void collect_terms(const PeriodicOperator& h, const std::vector<CountingLiouvillian::Channel>& chans,
                   int q, double prune, std::vector<Triplet>& out) {
    const Eigen::Index d = h.rows();
    const auto id = identity_nz(d);
    const cplx I(0.0, 1.0);
    const Matrix hq = h.component(q);
    if (hq.cwiseAbs().maxCoeff() > 0.0) {
        add_kron(out, id, nonzeros(hq, 0.0), d, -I, prune);
        add_kron(out, nonzeros(hq.transpose(), 0.0), id, d, I, prune);
    }
    for (const auto& c : chans) {
        const Matrix aq = c.absorption.component(q);
        const Matrix bq = c.emission.component(q);
        if (aq.cwiseAbs().maxCoeff() == 0.0 && bq.cwiseAbs().maxCoeff() == 0.0) continue;
        const auto s_nz = nonzeros(c.coupling, 0.0);
        const auto sT_nz = nonzeros(c.coupling.transpose(), 0.0);
        add_kron(out, id, nonzeros(c.coupling * aq, 0.0), d, -1.0, prune);
        add_kron(out, sT_nz, nonzeros(aq, 0.0), d, 1.0, prune);
        add_kron(out, nonzeros((bq * c.coupling).transpose(), 0.0), id, d, -1.0, prune);
        add_kron(out, nonzeros(bq.transpose(), 0.0), s_nz, d, 1.0, prune);
    }
}

} // namespace

CountingLiouvillian::CountingLiouvillian(PeriodicOperator hamiltonian, std::vector<Channel> channels,
                                         double prune_tol)
    : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)), prune_tol_(prune_tol) {}

std::size_t CountingLiouvillian::channel_index(const std::string& name) const {
    for (std::size_t i = 0; i < channels_.size(); ++i)
        if (channels_[i].name == name) return i;
    throw DomainError("no bath channel named '" + name + "'");
}

int CountingLiouvillian::support() const {
    int s = hamiltonian_.support();
    for (const auto& c : channels_)
        s = std::max({s, c.absorption.support(), c.emission.support()});
    return s;
}

SparseMatrix CountingLiouvillian::superoperator(int q) const {
    const Eigen::Index d = dimension();
    std::vector<Triplet> t;
    collect_terms(hamiltonian_, channels_, q, prune_tol_, t);
    SparseMatrix m(d * d, d * d);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

SparseMatrix CountingLiouvillian::derivative_superoperator(std::size_t channel, int q) const {
    const auto& c = channels_.at(channel);
    const Eigen::Index d = dimension();
    std::vector<Triplet> t;
    const Matrix ap = c.absorption_heat.component(q);
    const Matrix bp = c.emission_heat.component(q);
    add_kron(t, nonzeros(bp.transpose(), 0.0), nonzeros(c.coupling, 0.0), d, 1.0, prune_tol_);
    add_kron(t, nonzeros(c.coupling.transpose(), 0.0), nonzeros(ap, 0.0), d, -1.0, prune_tol_);
    SparseMatrix m(d * d, d * d);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

Matrix CountingLiouvillian::apply_harmonic(int q, const Matrix& rho) const {
    const cplx I(0.0, 1.0);
    const Matrix hq = hamiltonian_.component(q);
    Matrix out = -I * (hq * rho - rho * hq);
    for (const auto& c : channels_) {
        const Matrix aq = c.absorption.component(q);
        const Matrix bq = c.emission.component(q);
        const Matrix& s = c.coupling;
        out -= s * (aq * rho) - (aq * rho) * s + (rho * bq) * s - s * (rho * bq);
    }
    return out;
}

Matrix CountingLiouvillian::apply(double t, const Matrix& rho) const {
    const cplx I(0.0, 1.0);
    const Matrix h = hamiltonian_.at(t);
    Matrix out = -I * (h * rho - rho * h);
    for (const auto& c : channels_) {
        const Matrix a = c.absorption.at(t);
        const Matrix b = c.emission.at(t);
        const Matrix& s = c.coupling;
        out -= s * (a * rho) - (a * rho) * s + (rho * b) * s - s * (rho * b);
    }
    return out;
}

CountingLiouvillian build_liouvillian(const PeriodicOperator& hamiltonian,
                                      const floquet::FloquetSolution& fs,
                                      const std::vector<BathChannel>& baths,
                                      const GeneratorOptions& opts) {
    if (fs.edge_weight > opts.max_edge_weight) {
        std::ostringstream os;
        os << "Floquet modes not converged in K_ext (edge weight " << fs.edge_weight << ")";
        throw ConvergenceError(os.str());
    }
    const Eigen::Index d = fs.dimension();
    const PeriodicOperator& v = fs.modes;
    const PeriodicOperator vd = v.adjoint();
    constexpr double kSkip = 1e-18;

    std::vector<CountingLiouvillian::Channel> chans;
    for (const auto& b : baths) {
        if (b.coupling.rows() != d) throw DomainError("bath coupling does not match Floquet space");
        const auto rate = [&](const floquet::JumpEntry& e) {
            return bath::absorption_rate(b.density, b.beta, e.delta, opts.zero_delta_tol);
        };
        const auto w_abs = weighted_series(b.jumps, d, rate);
        const auto w_heat =
            weighted_series(b.jumps, d, [&](const floquet::JumpEntry& e) { return rate(e) * e.delta; });

        CountingLiouvillian::Channel c;
        c.name = b.name;
        c.coupling = b.coupling;
        c.absorption = multiply(multiply(v, w_abs, kSkip), vd, kSkip).trimmed(opts.trim_tol);
        c.absorption_heat = multiply(multiply(v, w_heat, kSkip), vd, kSkip).trimmed(opts.trim_tol);
        c.emission = c.absorption.adjoint();
        c.emission_heat = c.absorption_heat.adjoint();
        c.emission_heat *= -1.0;
        chans.push_back(std::move(c));
    }
    return CountingLiouvillian(hamiltonian, std::move(chans), opts.prune_tol);
}

SteadyState steady_state(const CountingLiouvillian& L, int k_rho, const SteadyStateOptions& opts) {
    if (k_rho < 0) throw DomainError("K_rho must be non-negative");
    const Eigen::Index d = L.dimension();
    const Eigen::Index d2 = d * d;
    const int nb = 2 * k_rho + 1;
    const Eigen::Index n_total = nb * d2;
    const double w = L.omegaL();
    const Eigen::Index border_row = k_rho * d2;  // element (0,0) of rho_0

    std::vector<Triplet> trip;
    const int kmax = std::min(2 * k_rho, L.support());
    for (int q = -kmax; q <= kmax; ++q) {
        const SparseMatrix lq = L.superoperator(q);
        if (lq.nonZeros() == 0) continue;
        for (int n = -k_rho; n <= k_rho; ++n) {
            const int np = n - q;
            if (np < -k_rho || np > k_rho) continue;
            const Eigen::Index ro = (n + k_rho) * d2, co = (np + k_rho) * d2;
            for (Eigen::Index j = 0; j < lq.outerSize(); ++j)
                for (SparseMatrix::InnerIterator it(lq, j); it; ++it) {
                    const Eigen::Index r = ro + it.row();
                    if (r == border_row) continue;
                    trip.emplace_back(r, co + it.col(), it.value());
                }
        }
    }
    for (int n = -k_rho; n <= k_rho; ++n) {
        if (n == 0) continue;
        for (Eigen::Index i = 0; i < d2; ++i) {
            const Eigen::Index r = (n + k_rho) * d2 + i;
            trip.emplace_back(r, r, cplx(0.0, -n * w));
        }
    }
    for (Eigen::Index i = 0; i < d; ++i) trip.emplace_back(border_row, k_rho * d2 + i + i * d, 1.0);

    SparseMatrix m(n_total, n_total);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();

    Eigen::UmfPackLU<SparseMatrix> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success)
        throw DegeneracyError("periodic steady state is not unique (bordered block system singular)");
    Vector rhs = Vector::Zero(n_total);
    rhs(border_row) = 1.0;
    Vector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite())
        throw DegeneracyError("periodic steady state solve failed");

    SteadyState out;
    auto& diag = out.diagnostics;
    diag.system_size = n_total;
    PeriodicOperator rho(d, d, -k_rho, k_rho, w);
    for (int n = -k_rho; n <= k_rho; ++n)
        rho.at_harmonic(n) = Eigen::Map<const Matrix>(x.data() + (n + k_rho) * d2, d, d);

    // Residual of the full (unbordered) truncated equations, matrix-free.
    for (int n = -k_rho; n <= k_rho; ++n) {
        Matrix r = cplx(0.0, -n * w) * rho.component(n);
        for (int np = -k_rho; np <= k_rho; ++np) {
            const int q = n - np;
            if (std::abs(q) > L.support()) continue;
            r += L.apply_harmonic(q, rho.component(np));
        }
        diag.residual = std::max(diag.residual, r.cwiseAbs().maxCoeff());
    }

    for (int n = -k_rho; n <= k_rho; ++n) {
        const cplx tr = rho.component(n).trace();
        diag.trace_error = std::max(diag.trace_error, std::abs(tr - (n == 0 ? 1.0 : 0.0)));
        diag.hermiticity_error =
            std::max(diag.hermiticity_error,
                     (rho.component(-n) - rho.component(n).adjoint()).cwiseAbs().maxCoeff());
    }
    for (int n = 0; n <= k_rho; ++n) {
        const Matrix sym = 0.5 * (rho.component(n) + rho.component(-n).adjoint());
        rho.at_harmonic(n) = sym;
        rho.at_harmonic(-n) = sym.adjoint();
    }

    const double period = 2.0 * std::numbers::pi / w;
    diag.min_eigenvalue = 1.0;
    for (int s = 0; s < opts.positivity_samples; ++s) {
        const Matrix rt = rho.at(period * s / opts.positivity_samples);
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rt + rt.adjoint()), Eigen::EigenvaluesOnly);
        diag.min_eigenvalue = std::min(diag.min_eigenvalue, es.eigenvalues().minCoeff());
    }

    if (opts.gap_iterations > 0) {
        Vector v = Vector::Ones(n_total).normalized();
        double inv = 0.0;
        for (int it = 0; it < opts.gap_iterations; ++it) {
            Vector y = lu.solve(v);
            inv = y.norm();
            if (!(inv > 0.0) || !std::isfinite(inv)) break;
            v = y / inv;
        }
        diag.gap_estimate = inv > 0.0 ? 1.0 / inv : 0.0;
    }

    out.rho.harmonics = std::move(rho);

    std::ostringstream os;
    if (diag.trace_error > opts.trace_tol) os << "trace error " << diag.trace_error << "; ";
    if (diag.hermiticity_error > opts.hermiticity_tol)
        os << "hermiticity error " << diag.hermiticity_error << "; ";
    if (diag.min_eigenvalue < -opts.positivity_tol)
        os << "negative eigenvalue " << diag.min_eigenvalue << "; ";
    if (!os.str().empty())
        throw ConvergenceError("steady state invariants violated (" + os.str() +
                               "increase K_rho, n_fock or K_ext)");
    return out;
}

double HeatCurrent::at(double t, double omegaL) const {
    cplx s = 0.0;
    for (int q = -k; q <= k; ++q)
        s += harmonics[static_cast<std::size_t>(q + k)] * std::polar(1.0, q * omegaL * t);
    return s.real();
}

HeatCurrent heat_current(const CountingLiouvillian& L, const PeriodicDensityMatrix& rho,
                         std::size_t channel) {
    const auto& c = L.channels().at(channel);
    const int kr = rho.k_rho();
    const int lo = std::min(c.absorption_heat.min_harmonic(), c.emission_heat.min_harmonic());
    const int hi = std::max(c.absorption_heat.max_harmonic(), c.emission_heat.max_harmonic());
    std::vector<Matrix> kernel;  // B'_k S - S A'_k
    for (int k = lo; k <= hi; ++k)
        kernel.push_back(c.emission_heat.component(k) * c.coupling -
                         c.coupling * c.absorption_heat.component(k));

    HeatCurrent hc;
    hc.k = kr;
    for (int q = -kr; q <= kr; ++q) {
        cplx s = 0.0;
        for (int k = lo; k <= hi; ++k) {
            const int n = q - k;
            if (n < -kr || n > kr) continue;
            const Matrix& m = kernel[static_cast<std::size_t>(k - lo)];
            s += (m.transpose().cwiseProduct(rho.harmonics.component(n))).sum();
        }
        hc.harmonics.push_back(-s);
    }
    hc.average = hc.harmonics[static_cast<std::size_t>(kr)].real();
    return hc;
}

double heat_current_average_superop(const CountingLiouvillian& L, const PeriodicDensityMatrix& rho,
                                    std::size_t channel) {
    const Eigen::Index d = L.dimension();
    const int kr = rho.k_rho();
    cplx s = 0.0;
    for (int k = -kr; k <= kr; ++k) {
        const SparseMatrix lp = L.derivative_superoperator(channel, k);
        const Matrix r = rho.harmonics.component(-k);
        const Vector v = lp * Eigen::Map<const Vector>(r.data(), d * d);
        s += Eigen::Map<const Matrix>(v.data(), d, d).trace();
    }
    return -s.real();
}

cplx average_rate_of_change(const CountingLiouvillian& L, const PeriodicDensityMatrix& rho,
                            const Matrix& observable) {
    const int kr = rho.k_rho();
    cplx s = 0.0;
    for (int k = -kr; k <= kr; ++k) {
        if (std::abs(k) > L.support()) continue;
        s += (observable * L.apply_harmonic(k, rho.harmonics.component(-k))).trace();
    }
    return s;
}

SecularResult secular_steady_state(const floquet::FloquetSolution& fs,
                                   const std::vector<BathChannel>& baths, double zero_delta_tol) {
    const Eigen::Index d = fs.dimension();
    // rate[r -> r'] summed over baths; an entry (r, r', n) transfers r -> r' at
    // 2 J(D)[1 + N(D)] |amp|^2 and hands D to the bath.
    Eigen::MatrixXd rate = Eigen::MatrixXd::Zero(d, d);
    for (const auto& b : baths)
        for (const auto& e : b.jumps.entries)
            rate(e.bra, e.ket) += 2.0 *
                                  bath::emission_rate(b.density, b.beta, e.delta, zero_delta_tol) *
                                  std::norm(e.amplitude);

    Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index rp = 0; rp < d; ++rp) {
            if (r == rp) continue;
            gen(rp, r) += rate(r, rp);
            gen(r, r) -= rate(r, rp);
        }
    gen.row(0).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d);
    rhs(0) = 1.0;
    const Eigen::VectorXd p = gen.fullPivLu().solve(rhs);

    SecularResult out;
    out.populations.assign(p.data(), p.data() + d);
    for (const auto& b : baths) {
        double q = 0.0;
        for (const auto& e : b.jumps.entries)
            q -= p(e.bra) * 2.0 * bath::emission_rate(b.density, b.beta, e.delta, zero_delta_tol) *
                 std::norm(e.amplitude) * e.delta;
        out.heat.push_back(q);
    }
    return out;
}

} // namespace fcc::generator
