// thermo.hpp: Work, entropy production, CC temperature, operating regimes and performance

#pragma once

#include <limits>
#include <string>

#include "fcc/generator.hpp"

namespace fcc::thermo {

enum class Regime {
    HeatEngine,           // I: work extracted
    WorkAssistedPump,     // II: work pushes heat from hot to cold
    Dissipator,           // III: work dumped into both baths
    Refrigerator,         // IV: heat drawn from the cold bath
    Boundary,             // some flow within tolerance of zero
};

std::string regime_name(Regime r);
// Roman numeral tag used in tables ("I".."IV", "B").
std::string regime_tag(Regime r);

// W = -Q_c - Q_h; negative when work is extracted.
double first_law_work(double qbar_c, double qbar_h);

struct EntropyProduction {
    double sigma{};
    bool violation{};  // sigma below -violation_tol
};

// sigma = -beta_h Q_h - beta_c Q_c.
EntropyProduction entropy_production(double qbar_c, double qbar_h, double beta_c, double beta_h,
                                     double violation_tol = 1e-10);

// Inverse of n = 1/(exp(beta w) - 1); +infinity for n = 0.
double effective_cc_temperature(double n_mean, double omega_cc);

Regime classify_regime(double qbar_c, double qbar_h, double wbar, double tol = 1e-12);

double carnot_efficiency(double beta_c, double beta_h);
double carnot_cop(double beta_c, double beta_h);

struct Performance {
    enum class Kind { Efficiency, Cop } kind{};
    double value{};   // eta = -W/Q_h or kappa = Q_c/W
    double carnot{};  // matching Carnot bound
};

// Efficiency in regime I, coefficient of performance in regime IV; UndefinedResult otherwise.
Performance performance(double qbar_c, double qbar_h, double wbar, double beta_c, double beta_h,
                        double tol = 1e-12);

struct OccupationStatistics {
    double n_mean{};
    double n_var{};
    double thermal_residual{};  // |var - n(1+n)| / var
};

// Period-averaged CC occupation and variance.
OccupationStatistics occupation_statistics(const generator::PeriodicDensityMatrix& rho, int n_fock);
OccupationStatistics occupation_statistics(const Matrix& rho0, int n_fock);

struct ThermoReport {
    double qbar_c{};
    double qbar_h{};
    double wbar{};
    double sigma_bar{};
    bool second_law_violation{};
    double beta_cc{};
    double n_mean{};
    double n_var{};
    double thermal_residual{};
    Regime regime{Regime::Boundary};
    double eta{std::numeric_limits<double>::quiet_NaN()};
    double kappa{std::numeric_limits<double>::quiet_NaN()};
    double eta_carnot{};
    double kappa_carnot{};
};

ThermoReport make_report(double qbar_c, double qbar_h, double beta_c, double beta_h,
                         const OccupationStatistics& occ, double omega_cc, double regime_tol = 1e-12);

} // namespace fcc::thermo
