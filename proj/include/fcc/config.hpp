// config.hpp: Run configuration: flat key=value files, validation, JSON echo

#pragma once

#include <istream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace fcc::config {

struct RunConfig {
    // system
    double omega0{1.0};
    double g{1e-3};
    double omegaL{0.9};
    std::string coupling_form{"sinusoidal"};  // sinusoidal | static
    bool allow_any_temperatures{false};

    // structured cold bath and its residual
    double d_c{1e-3};
    double gamma{4e-4};
    double omega_res{0.1};  // ignored when resonance_lock is on
    double beta_c{25.0};
    double cutoff{0.0};     // 0 selects the default hard cutoff
    std::string mapping{"analytic"};  // analytic | numeric
    bool residual{true};    // false decouples the residual bath

    // hot Ohmic bath
    double d_h{5e-3};
    double omega_ref{1.0};
    double beta_h{2.22};
    bool hot{true};

    // solver
    int n_fock{12};
    int max_fock{24};
    bool auto_fock{true};
    int k_ext{8};
    int max_k_ext{16};
    int k_rho{2};
    double amplitude_floor{1e-12};
    double fock_threshold{1e-6};
    double regime_tol{1e-12};
    double trace_tol{1e-10};
    double hermiticity_tol{1e-10};
    double positivity_tol{1e-8};
    double max_edge_weight{1e-8};
    double prune_tol{1e-12};
    bool secular{false};

    // sweeps
    std::string sweep_variable{"omegaL"};  // omegaL | d_c | gamma | delta
    double sweep_from{0.82};
    double sweep_to{0.96};
    int sweep_steps{15};
    bool resonance_lock{true};
    std::string sweep_y_variable{"d_c"};
    double sweep_y_from{1e-3};
    double sweep_y_to{5e-3};
    int sweep_y_steps{5};

    // output ("" = none; "-" = stdout)
    std::string csv;
    std::string json;

    // Throws ConfigError on the first violated constraint.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

using FieldRef = std::variant<double RunConfig::*, int RunConfig::*, bool RunConfig::*,
                              std::string RunConfig::*>;

struct Field {
    std::string key;  // e.g. "bath.cold.d_c"
    FieldRef ref;
    std::string help;
};

// Every configurable key, in canonical order.
const std::vector<Field>& fields();

// Sets one key from its textual value; unknown keys and malformed values throw ConfigError.
void set_value(RunConfig& cfg, const std::string& key, const std::string& value);
std::string get_value(const RunConfig& cfg, const std::string& key);

// Parses "key = value" lines; '#' starts a comment. Later lines override earlier ones.
void apply_stream(RunConfig& cfg, std::istream& in, const std::string& source = "<input>");
RunConfig load_file(const std::string& path);

// Canonical key=value text for the whole config.
std::string to_text(const RunConfig& cfg);

nlohmann::json to_json(const RunConfig& cfg);
RunConfig from_json(const nlohmann::json& j);

// Linearly spaced grid; steps == 1 gives {from}.
std::vector<double> grid(double from, double to, int steps);

} // namespace fcc::config
