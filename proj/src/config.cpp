// config.cpp: Run configuration: flat key=value files, validation, JSON echo

#include "fcc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fcc/errors.hpp"

namespace fcc::config {

const std::vector<Field>& fields() {
    using R = RunConfig;
    static const std::vector<Field> f = {
        {"system.omega0", &R::omega0, "qubit splitting"},
        {"system.g", &R::g, "drive amplitude"},
        {"system.omegaL", &R::omegaL, "drive frequency"},
        {"system.coupling_form", &R::coupling_form, "cold coupling: sinusoidal | static"},
        {"system.allow_any_temperatures", &R::allow_any_temperatures, "skip the beta_h < beta_c check"},
        {"bath.cold.d_c", &R::d_c, "structured peak coupling amplitude"},
        {"bath.cold.gamma", &R::gamma, "structured peak width"},
        {"bath.cold.omega_res", &R::omega_res, "peak frequency (unused with resonance lock)"},
        {"bath.cold.beta", &R::beta_c, "cold inverse temperature"},
        {"bath.cold.cutoff", &R::cutoff, "hard cutoff for numeric mapping, 0 = default"},
        {"bath.cold.mapping", &R::mapping, "analytic | numeric"},
        {"bath.cold.residual", &R::residual, "couple the CC to its residual bath"},
        {"bath.hot.d_h", &R::d_h, "Ohmic hot-bath coupling"},
        {"bath.hot.omega_ref", &R::omega_ref, "Ohmic reference frequency"},
        {"bath.hot.beta", &R::beta_h, "hot inverse temperature"},
        {"bath.hot.enabled", &R::hot, "couple the qubit to the hot bath"},
        {"solver.n_fock", &R::n_fock, "initial Fock truncation"},
        {"solver.max_fock", &R::max_fock, "upper limit for automatic Fock growth"},
        {"solver.auto_fock", &R::auto_fock, "grow n_fock by 4 while the truncation check fails"},
        {"solver.k_ext", &R::k_ext, "initial Floquet harmonic window"},
        {"solver.max_k_ext", &R::max_k_ext, "upper limit for automatic K_ext growth"},
        {"solver.k_rho", &R::k_rho, "steady-state harmonic window"},
        {"solver.amplitude_floor", &R::amplitude_floor, "drop jump amplitudes below this"},
        {"solver.fock_threshold", &R::fock_threshold, "allowed population of the top two Fock levels"},
        {"solver.regime_tol", &R::regime_tol, "zero band for regime classification"},
        {"solver.trace_tol", &R::trace_tol, "steady-state trace tolerance"},
        {"solver.hermiticity_tol", &R::hermiticity_tol, "steady-state hermiticity tolerance"},
        {"solver.positivity_tol", &R::positivity_tol, "allowed negative eigenvalue of rho(t)"},
        {"solver.max_edge_weight", &R::max_edge_weight, "Floquet truncation weight gate"},
        {"solver.prune_tol", &R::prune_tol, "drop generator entries below this magnitude"},
        {"solver.secular", &R::secular, "approximate secular (Pauli) solver instead of the full generator"},
        {"sweep.variable", &R::sweep_variable, "omegaL | d_c | gamma | delta"},
        {"sweep.from", &R::sweep_from, "first value"},
        {"sweep.to", &R::sweep_to, "last value"},
        {"sweep.steps", &R::sweep_steps, "number of points"},
        {"sweep.resonance_lock", &R::resonance_lock, "set omega_res = omega0 - omegaL at every point"},
        {"sweep.y_variable", &R::sweep_y_variable, "second axis of the phase grid"},
        {"sweep.y_from", &R::sweep_y_from, "first value on the second axis"},
        {"sweep.y_to", &R::sweep_y_to, "last value on the second axis"},
        {"sweep.y_steps", &R::sweep_y_steps, "points on the second axis"},
        {"output.csv", &R::csv, "CSV path, - for stdout"},
        {"output.json", &R::json, "JSON path, - for stdout"},
    };
    return f;
}

namespace {

const Field& find_field(const std::string& key) {
    for (const auto& f : fields())
        if (f.key == key) return f;
    throw ConfigError("unknown configuration key '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    const char* b = text.data();
    const char* e = b + text.size();
    if (!text.empty() && *b == '+') ++b;
    const auto r = std::from_chars(b, e, v);
    if (r.ec != std::errc() || r.ptr != e)
        throw ConfigError("key '" + key + "': cannot parse '" + text + "' as a number");
    return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "off" || text == "no") return false;
    throw ConfigError("key '" + key + "': expected a boolean, got '" + text + "'");
}

} // namespace

void set_value(RunConfig& cfg, const std::string& key, const std::string& raw) {
    const Field& f = find_field(key);
    const std::string v = trim(raw);
    std::visit(
        [&](auto ptr) {
            using T = std::remove_reference_t<decltype(cfg.*ptr)>;
            if constexpr (std::is_same_v<T, double>) {
                const double x = parse_number<double>(key, v);
                if (!std::isfinite(x)) throw ConfigError("key '" + key + "' must be finite");
                cfg.*ptr = x;
            } else if constexpr (std::is_same_v<T, int>) {
                cfg.*ptr = parse_number<int>(key, v);
            } else if constexpr (std::is_same_v<T, bool>) {
                cfg.*ptr = parse_bool(key, v);
            } else {
                cfg.*ptr = v;
            }
        },
        f.ref);
}

std::string get_value(const RunConfig& cfg, const std::string& key) {
    const Field& f = find_field(key);
    return std::visit(
        [&](auto ptr) -> std::string {
            const auto& x = cfg.*ptr;
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) return format_double(x);
            else if constexpr (std::is_same_v<T, int>) return std::to_string(x);
            else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else return x;
        },
        f.ref);
}

void apply_stream(RunConfig& cfg, std::istream& in, const std::string& source) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected key = value");
        try {
            set_value(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

RunConfig load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open configuration file '" + path + "'");
    RunConfig cfg;
    apply_stream(cfg, in, path);
    return cfg;
}

std::string to_text(const RunConfig& cfg) {
    std::string out;
    for (const auto& f : fields()) out += f.key + " = " + get_value(cfg, f.key) + "\n";
    return out;
}

nlohmann::json to_json(const RunConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& f : fields())
        std::visit([&](auto ptr) { j[f.key] = cfg.*ptr; }, f.ref);
    return j;
}

RunConfig from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("configuration JSON must be an object");
    RunConfig cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const Field& f = find_field(it.key());
        try {
            std::visit([&](auto ptr) { it.value().get_to(cfg.*ptr); }, f.ref);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("key '" + it.key() + "': " + e.what());
        }
    }
    return cfg;
}

void RunConfig::validate() const {
    auto fail = [](const std::string& m) { throw ConfigError("invalid configuration: " + m); };
    auto positive = [&](double v, const char* name) {
        if (!(v > 0.0)) fail(std::string(name) + " must be positive");
    };
    positive(omega0, "system.omega0");
    positive(omegaL, "system.omegaL");
    if (!(g >= 0.0)) fail("system.g must be non-negative");
    if (coupling_form != "sinusoidal" && coupling_form != "static")
        fail("system.coupling_form must be sinusoidal or static");
    positive(d_c, "bath.cold.d_c");
    positive(gamma, "bath.cold.gamma");
    if (!resonance_lock) positive(omega_res, "bath.cold.omega_res");
    positive(beta_c, "bath.cold.beta");
    if (cutoff < 0.0) fail("bath.cold.cutoff must be non-negative");
    if (mapping != "analytic" && mapping != "numeric") fail("bath.cold.mapping must be analytic or numeric");
    positive(d_h, "bath.hot.d_h");
    positive(omega_ref, "bath.hot.omega_ref");
    positive(beta_h, "bath.hot.beta");
    if (!allow_any_temperatures && !(beta_h < beta_c))
        fail("hot bath must be hotter than the cold bath (bath.hot.beta < bath.cold.beta)");
    if (n_fock < 2) fail("solver.n_fock must be at least 2");
    if (max_fock < n_fock) fail("solver.max_fock must be at least solver.n_fock");
    if (k_ext < 1) fail("solver.k_ext must be at least 1");
    if (max_k_ext < k_ext) fail("solver.max_k_ext must be at least solver.k_ext");
    if (k_rho < 0) fail("solver.k_rho must be non-negative");
    if (amplitude_floor < 0.0) fail("solver.amplitude_floor must be non-negative");
    positive(fock_threshold, "solver.fock_threshold");
    positive(regime_tol, "solver.regime_tol");
    positive(trace_tol, "solver.trace_tol");
    positive(hermiticity_tol, "solver.hermiticity_tol");
    positive(positivity_tol, "solver.positivity_tol");
    positive(max_edge_weight, "solver.max_edge_weight");
    if (prune_tol < 0.0) fail("solver.prune_tol must be non-negative");
    const std::vector<std::string> vars = {"omegaL", "d_c", "gamma", "delta"};
    if (std::find(vars.begin(), vars.end(), sweep_variable) == vars.end())
        fail("sweep.variable must be one of omegaL, d_c, gamma, delta");
    if (std::find(vars.begin(), vars.end(), sweep_y_variable) == vars.end())
        fail("sweep.y_variable must be one of omegaL, d_c, gamma, delta");
    if (sweep_steps < 1 || sweep_y_steps < 1) fail("sweep step counts must be at least 1");
}

std::vector<double> grid(double from, double to, int steps) {
    if (steps < 1) throw ConfigError("grid needs at least one point");
    std::vector<double> out;
    for (int i = 0; i < steps; ++i)
        out.push_back(steps == 1 ? from : from + (to - from) * i / (steps - 1));
    return out;
}

} // namespace fcc::config
