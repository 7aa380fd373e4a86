// bath.cpp: Spectral densities, collective-coordinate mapping and Bose occupations

#include "fcc/bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fcc/errors.hpp"

namespace fcc::bath {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << "spectral density parameter " << what << " must be positive and finite, got " << v;
        throw DomainError(os.str());
    }
}


struct PanelResult {
    double value{};
    double error{};
};

template <class F>
double gk_panel(const F& f, double a, double b) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0);
}

// Bisects until a panel and the sum of its halves agree. The library's own
// estimate has an absolute floor that never clears on narrow panels.
template <class F>
PanelResult integrate_panel(const F& f, double a, double b, double whole, double rel_tol,
                            int depth = 0) {
    const double mid = 0.5 * (a + b);
    const double left = gk_panel(f, a, mid), right = gk_panel(f, mid, b);
    const double split = left + right;
    const double diff = std::abs(split - whole);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * (std::abs(left) + std::abs(right));
    if (diff <= std::max(rel_tol * std::abs(split), floor) || depth >= 40) return {split, diff};
    const auto l = integrate_panel(f, a, mid, left, rel_tol, depth + 1);
    const auto r = integrate_panel(f, mid, b, right, rel_tol, depth + 1);
    return {l.value + r.value, l.error + r.error};
}

template <class F>
PanelResult integrate_panel(const F& f, double a, double b, double rel_tol) {
    return integrate_panel(f, a, b, gk_panel(f, a, b), rel_tol);
}

} // namespace

SpectralDensity::SpectralDensity(StructuredPeak p) : model_(p) {
    require_positive(p.d_c, "d_c");
    require_positive(p.gamma, "gamma");
    require_positive(p.omega_res, "omega_res");
}

SpectralDensity::SpectralDensity(Ohmic p) : model_(p) {
    require_positive(p.d, "d");
    require_positive(p.omega_ref, "omega_ref");
}

double SpectralDensity::evaluate(double omega) const {
    if (omega < 0.0) throw DomainError("spectral density evaluated at negative frequency");
    return evaluate_odd(omega);
}

double SpectralDensity::evaluate_odd(double w) const {
    if (const auto* p = std::get_if<StructuredPeak>(&model_)) {
        const double detune = w * w - p->omega_res * p->omega_res;
        return p->d_c * p->d_c * p->gamma * w / (detune * detune + p->gamma * p->gamma * w * w);
    }
    const auto& o = std::get<Ohmic>(model_);
    return o.d * w / o.omega_ref;
}

double SpectralDensity::slope_at_zero() const {
    if (const auto* p = std::get_if<StructuredPeak>(&model_)) {
        const double w2 = p->omega_res * p->omega_res;
        return p->d_c * p->d_c * p->gamma / (w2 * w2);
    }
    const auto& o = std::get<Ohmic>(model_);
    return o.d / o.omega_ref;
}

const StructuredPeak& SpectralDensity::peak() const {
    if (!is_structured()) throw DomainError("spectral density is not a structured peak");
    return std::get<StructuredPeak>(model_);
}

const Ohmic& SpectralDensity::ohmic_params() const {
    if (!is_ohmic()) throw DomainError("spectral density is not ohmic");
    return std::get<Ohmic>(model_);
}

SpectralDensity SpectralDensity::scaled(double alpha) const {
    require_positive(alpha, "scale factor");
    if (const auto* p = std::get_if<StructuredPeak>(&model_))
        return SpectralDensity(StructuredPeak{p->d_c * std::sqrt(alpha), p->gamma, p->omega_res});
    auto o = std::get<Ohmic>(model_);
    o.d *= alpha;
    return SpectralDensity(o);
}

CCMapping map_collective_coordinate(const SpectralDensity& J) {
    if (!J.is_structured())
        throw MappingError("closed-form collective-coordinate mapping needs a structured peak");
    const auto& p = J.peak();
    if (!(4.0 * p.omega_res * p.omega_res > p.gamma * p.gamma)) {
        std::ostringstream os;
        os << "mapping requires 4 omega_res^2 > gamma^2 (omega_res=" << p.omega_res
           << ", gamma=" << p.gamma << ")";
        throw MappingError(os.str());
    }
    CCMapping m;
    m.lambda0 = p.d_c;
    m.omega_cc = p.omega_res;
    m.delta_omega0 = p.d_c / p.omega_res;
    m.residual = SpectralDensity::linear(p.gamma);
    return m;
}

double default_cutoff(const StructuredPeak& p) { return p.omega_res + 1.0e6 * p.gamma; }

MappingIntegrals mapping_integrals_numeric(const SpectralDensity& J, double cutoff, double rel_tol) {
    require_positive(cutoff, "cutoff");

    // Breakpoints resolve the peak and then grow geometrically toward the cutoff.
    std::vector<double> pts{0.0};
    if (J.is_structured()) {
        const auto& p = J.peak();
        for (double k : {-2000.0, -200.0, -50.0, -20.0, -5.0, -2.0, -0.5, 0.0, 0.5, 2.0, 5.0, 20.0,
                         50.0, 200.0, 2000.0}) {
            const double x = p.omega_res + k * p.gamma;
            if (x > pts.back() && x < cutoff) pts.push_back(x);
        }
    }
    double x = std::max(pts.back() * 2.0, cutoff * 1e-6);
    while (x < cutoff) {
        pts.push_back(x);
        x *= 2.0;
    }
    pts.push_back(cutoff);

    double first = 0.0, inverse = 0.0, err_first = 0.0, err_inverse = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i], b = pts[i + 1];
        if (!(b > a)) continue;
        const auto f1 = integrate_panel([&](double w) { return w * J.evaluate(w); }, a, b, rel_tol);
        const auto f2 = integrate_panel(
            [&](double w) { return w > 0.0 ? J.evaluate(w) / w : J.slope_at_zero(); }, a, b, rel_tol);
        first += f1.value;
        inverse += f2.value;
        err_first += f1.error;
        err_inverse += f2.error;
    }
    const double rel_err = std::max(err_first / std::abs(first), err_inverse / std::abs(inverse));
    if (!(rel_err <= std::max(100.0 * rel_tol, 1e-13)) || !std::isfinite(first) ||
        !std::isfinite(inverse)) {
        std::ostringstream os;
        os << "mapping quadrature did not converge (relative error estimate " << rel_err << ")";
        throw NumericalError(os.str());
    }

    MappingIntegrals out;
    const double lambda2 = 2.0 / std::numbers::pi * first;
    const double dw2 = 2.0 / std::numbers::pi * inverse;
    out.lambda0 = std::sqrt(lambda2);
    out.delta_omega0 = std::sqrt(dw2);
    out.omega_cc = std::sqrt(lambda2 / dw2);
    out.error_estimate = rel_err;
    return out;
}

double bose_occupation(double omega, double beta) {
    if (!(beta > 0.0)) throw DomainError("inverse temperature must be positive");
    if (omega == 0.0) throw DomainError("Bose occupation is singular at zero frequency");
    return 1.0 / std::expm1(beta * omega);
}

double absorption_rate(const SpectralDensity& J, double beta, double delta, double zero_tol) {
    if (std::abs(delta) < zero_tol) return J.slope_at_zero() / beta;
    const double x = beta * delta;
    // exp overflow: absorption vanishes for large positive x, -J(D) (1 + N) -> J(|D|) for large negative x.
    if (x > 700.0) return 0.0;
    return J.evaluate_odd(delta) * bose_occupation(delta, beta);
}

double emission_rate(const SpectralDensity& J, double beta, double delta, double zero_tol) {
    return absorption_rate(J, beta, -delta, zero_tol);
}

} // namespace fcc::bath
