// report.cpp: CSV and JSON emission of pipeline results

#include "fcc/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace fcc::report {

const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> c = {
        "omegaL", "omega_cc", "d_c",    "gamma",  "g",      "beta_c",  "beta_h",
        "qbar_c", "qbar_h",   "wbar",   "sigma_bar", "beta_cc", "n_mean", "n_var",
        "regime", "eta",      "kappa",  "converged"};
    return c;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 11);
    return std::string(buf, r.ptr);
}

void write_csv(std::ostream& out, const std::vector<pipeline::PointResult>& rows) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    if (!rows.empty())
        for (const auto& e : rows.front().extra) out << "," << e.first;
    out << "\n";
    for (const auto& r : rows) {
        const auto& t = r.report;
        const auto& c = r.cfg;
        const double fields[] = {c.omegaL, r.mapping.omega_cc, c.d_c, c.gamma, c.g, c.beta_c,
                                 c.beta_h, t.qbar_c, t.qbar_h, t.wbar, t.sigma_bar, t.beta_cc,
                                 t.n_mean, t.n_var};
        bool first = true;
        for (double v : fields) {
            out << (first ? "" : ",") << format_number(v);
            first = false;
        }
        out << "," << (r.error.empty() ? thermo::regime_tag(t.regime) : "fail");
        out << "," << format_number(t.eta) << "," << format_number(t.kappa);
        out << "," << (r.converged ? "true" : "false");
        for (const auto& e : r.extra) out << "," << format_number(e.second);
        out << "\n";
    }
}

namespace {

nlohmann::json num(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

} // namespace

nlohmann::json point_json(const pipeline::PointResult& r) {
    const auto& t = r.report;
    const auto& d = r.diagnostics;
    nlohmann::json j;
    j["omegaL"] = r.cfg.omegaL;
    j["omega_res"] = num(r.omega_res);
    j["mapping"] = {{"lambda0", num(r.mapping.lambda0)},
                    {"omega_cc", num(r.mapping.omega_cc)},
                    {"delta_omega0", num(r.mapping.delta_omega0)}};
    j["d_c"] = r.cfg.d_c;
    j["gamma"] = r.cfg.gamma;
    j["g"] = r.cfg.g;
    j["qbar_c"] = num(t.qbar_c);
    j["qbar_h"] = num(t.qbar_h);
    j["wbar"] = num(t.wbar);
    j["sigma_bar"] = num(t.sigma_bar);
    j["second_law_violation"] = t.second_law_violation;
    j["beta_cc"] = num(t.beta_cc);
    j["n_mean"] = num(t.n_mean);
    j["n_var"] = num(t.n_var);
    j["thermal_residual"] = num(t.thermal_residual);
    j["regime"] = r.error.empty() ? thermo::regime_name(t.regime) : "fail";
    j["eta"] = num(t.eta);
    j["kappa"] = num(t.kappa);
    j["eta_carnot"] = num(t.eta_carnot);
    j["kappa_carnot"] = num(t.kappa_carnot);
    j["converged"] = r.converged;
    if (!r.error.empty()) j["error"] = r.error;
    j["diagnostics"] = {{"n_fock", d.n_fock},
                        {"k_ext", d.k_ext},
                        {"k_rho", d.k_rho},
                        {"edge_weight", num(d.edge_weight)},
                        {"residual", num(d.residual)},
                        {"trace_error", num(d.trace_error)},
                        {"hermiticity_error", num(d.hermiticity_error)},
                        {"min_eigenvalue", num(d.min_eigenvalue)},
                        {"gap_estimate", num(d.gap_estimate)},
                        {"fock_top_population", num(d.fock_top_population)},
                        {"fock_pass", d.fock_pass},
                        {"cc_energy_rate", num(d.cc_energy_rate)},
                        {"secular", d.secular}};
    for (const auto& e : r.extra) j["extra"][e.first] = num(e.second);
    return j;
}

nlohmann::json results_json(const config::RunConfig& cfg, const std::string& mode,
                            const std::vector<pipeline::PointResult>& rows) {
    nlohmann::json j;
    j["mode"] = mode;
    j["config"] = config::to_json(cfg);
    j["points"] = nlohmann::json::array();
    for (const auto& r : rows) j["points"].push_back(point_json(r));
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

} // namespace fcc::report
