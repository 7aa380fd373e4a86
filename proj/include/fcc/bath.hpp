// bath.hpp: Spectral densities, collective-coordinate mapping and Bose occupations

#pragma once

#include <variant>

namespace fcc::bath {

// Lorentzian-type peak J(w) = d_c^2 gamma w / ((w^2 - w_res^2)^2 + gamma^2 w^2).
struct StructuredPeak {
    double d_c{};        // coupling amplitude [energy^2]
    double gamma{};      // width [energy]
    double omega_res{};  // peak frequency [energy]
};

// Linear density J(w) = d * w / omega_ref.
struct Ohmic {
    double d{};          // coupling amplitude [energy^2] (or slope*omega_ref)
    double omega_ref{1.0};
};

class SpectralDensity {
public:
    SpectralDensity(StructuredPeak p);
    SpectralDensity(Ohmic p);

    static SpectralDensity structured(double d_c, double gamma, double omega_res) {
        return SpectralDensity(StructuredPeak{d_c, gamma, omega_res});
    }
    static SpectralDensity ohmic(double d, double omega_ref) {
        return SpectralDensity(Ohmic{d, omega_ref});
    }
    // J(w) = slope * w, the residual density left by the mapping.
    static SpectralDensity linear(double slope) { return SpectralDensity(Ohmic{slope, 1.0}); }

    // J(w) for w >= 0; throws DomainError for negative w.
    double evaluate(double omega) const;
    // Odd extension J(-w) = -J(w), defined on the whole real line.
    double evaluate_odd(double omega) const;
    // dJ/dw at w = 0, used for the zero-frequency rate limit.
    double slope_at_zero() const;

    bool is_structured() const { return std::holds_alternative<StructuredPeak>(model_); }
    bool is_ohmic() const { return std::holds_alternative<Ohmic>(model_); }
    const StructuredPeak& peak() const;
    const Ohmic& ohmic_params() const;

    // Rescale the overall coupling, J -> alpha * J.
    SpectralDensity scaled(double alpha) const;

private:
    std::variant<StructuredPeak, Ohmic> model_;
};

struct CCMapping {
    double lambda0{};        // system-CC coupling
    double omega_cc{};       // CC frequency
    double delta_omega0{};   // reorganization frequency, omega_cc^2 * delta_omega0^2 = lambda0^2
    SpectralDensity residual = SpectralDensity::linear(1.0);
};

// Closed-form mapping of a structured peak; requires 4 w_res^2 > gamma^2.
CCMapping map_collective_coordinate(const SpectralDensity& J);

struct MappingIntegrals {
    double lambda0{};
    double delta_omega0{};
    double omega_cc{};
    double error_estimate{};  // relative quadrature error bound
};

// lambda0^2 = (2/pi) int_0^cutoff w J(w) dw, delta_omega0^2 = (2/pi) int_0^cutoff J(w)/w dw.
MappingIntegrals mapping_integrals_numeric(const SpectralDensity& J, double cutoff,
                                           double rel_tol = 1e-10);

// Default hard cutoff used when none is configured.
double default_cutoff(const StructuredPeak& p);

// 1/(exp(beta w) - 1); analytic continuation for w < 0. w == 0 is a DomainError.
double bose_occupation(double omega, double beta);

// Absorption kernel J(D) N(D) with the odd-extended J; the emission kernel is
// J(D)[1 + N(D)] = absorption_rate(-D). |D| below zero_tol takes the limit J'(0)/beta.
double absorption_rate(const SpectralDensity& J, double beta, double delta,
                       double zero_tol = 1e-12);
double emission_rate(const SpectralDensity& J, double beta, double delta,
                     double zero_tol = 1e-12);

} // namespace fcc::bath
