// thermo.cpp: Work, entropy production, CC temperature, operating regimes and performance

#include "fcc/thermo.hpp"

#include <cmath>
#include <sstream>

#include "fcc/errors.hpp"
#include "fcc/model.hpp"

namespace fcc::thermo {

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::HeatEngine: return "heat_engine";
    case Regime::WorkAssistedPump: return "work_assisted_pump";
    case Regime::Dissipator: return "dissipator";
    case Regime::Refrigerator: return "refrigerator";
    case Regime::Boundary: return "boundary";
    }
    return "unknown";
}

std::string regime_tag(Regime r) {
    switch (r) {
    case Regime::HeatEngine: return "I";
    case Regime::WorkAssistedPump: return "II";
    case Regime::Dissipator: return "III";
    case Regime::Refrigerator: return "IV";
    case Regime::Boundary: return "B";
    }
    return "?";
}

double first_law_work(double qbar_c, double qbar_h) { return -qbar_c - qbar_h; }

EntropyProduction entropy_production(double qbar_c, double qbar_h, double beta_c, double beta_h,
                                     double violation_tol) {
    if (!(beta_h > 0.0) || !(beta_c > 0.0)) throw DomainError("inverse temperatures must be positive");
    const double s = -beta_h * qbar_h - beta_c * qbar_c;
    return {s, s < -violation_tol};
}

double effective_cc_temperature(double n_mean, double omega_cc) {
    if (n_mean < 0.0) throw DomainError("occupation must be non-negative");
    if (!(omega_cc > 0.0)) throw DomainError("CC frequency must be positive");
    if (n_mean == 0.0) return std::numeric_limits<double>::infinity();
    return std::log1p(1.0 / n_mean) / omega_cc;
}

Regime classify_regime(double qc, double qh, double w, double tol) {
    if (std::abs(qc) <= tol || std::abs(qh) <= tol || std::abs(w) <= tol) return Regime::Boundary;
    if (w < 0.0 && qh > 0.0 && qc < 0.0) return Regime::HeatEngine;
    if (qc > 0.0 && w > 0.0 && qh < 0.0) return Regime::Refrigerator;
    if (w > 0.0 && qh > 0.0 && qc < 0.0) return Regime::WorkAssistedPump;
    if (w > 0.0 && qh < 0.0 && qc < 0.0) return Regime::Dissipator;
    std::ostringstream os;
    os << "flows (Q_c, Q_h, W) = (" << qc << ", " << qh << ", " << w
       << ") match no operating regime";
    throw InconsistencyError(os.str());
}

double carnot_efficiency(double beta_c, double beta_h) {
    if (!(beta_c > beta_h) || !(beta_h > 0.0)) throw DomainError("need beta_c > beta_h > 0");
    return (beta_c - beta_h) / beta_c;
}

double carnot_cop(double beta_c, double beta_h) {
    if (!(beta_c > beta_h) || !(beta_h > 0.0)) throw DomainError("need beta_c > beta_h > 0");
    return beta_h / (beta_c - beta_h);
}

Performance performance(double qc, double qh, double w, double beta_c, double beta_h, double tol) {
    switch (classify_regime(qc, qh, w, tol)) {
    case Regime::HeatEngine:
        return {Performance::Kind::Efficiency, -w / qh, carnot_efficiency(beta_c, beta_h)};
    case Regime::Refrigerator:
        return {Performance::Kind::Cop, qc / w, carnot_cop(beta_c, beta_h)};
    default:
        throw UndefinedResult("efficiency and COP are only defined for engines and refrigerators");
    }
}

OccupationStatistics occupation_statistics(const Matrix& rho0, int n_fock) {
    const Matrix n = model::number_operator(n_fock);
    OccupationStatistics s;
    s.n_mean = std::real((n * rho0).trace());
    const double n2 = std::real((n * n * rho0).trace());
    s.n_var = n2 - s.n_mean * s.n_mean;
    s.thermal_residual =
        std::abs(s.n_var - s.n_mean * (1.0 + s.n_mean)) / std::max(s.n_var, 1e-300);
    return s;
}

OccupationStatistics occupation_statistics(const generator::PeriodicDensityMatrix& rho, int n_fock) {
    return occupation_statistics(rho.average(), n_fock);
}

ThermoReport make_report(double qc, double qh, double beta_c, double beta_h,
                         const OccupationStatistics& occ, double omega_cc, double regime_tol) {
    ThermoReport r;
    r.qbar_c = qc;
    r.qbar_h = qh;
    r.wbar = first_law_work(qc, qh);
    const auto ep = entropy_production(qc, qh, beta_c, beta_h);
    r.sigma_bar = ep.sigma;
    r.second_law_violation = ep.violation;
    r.n_mean = occ.n_mean;
    r.n_var = occ.n_var;
    r.thermal_residual = occ.thermal_residual;
    r.beta_cc = effective_cc_temperature(std::max(occ.n_mean, 0.0), omega_cc);
    r.regime = classify_regime(qc, qh, r.wbar, regime_tol);
    if (beta_c > beta_h) {
        r.eta_carnot = carnot_efficiency(beta_c, beta_h);
        r.kappa_carnot = carnot_cop(beta_c, beta_h);
    }
    if (r.regime == Regime::HeatEngine) r.eta = -r.wbar / qh;
    if (r.regime == Regime::Refrigerator) r.kappa = qc / r.wbar;
    return r;
}

} // namespace fcc::thermo
