#include "critom/config.hpp"

#include "critom/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace critom {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &value) {
    char *end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw ConfigError("value of '" + key + "' is not a number: '" + value + "'");
    return v;
}

} // namespace

std::map<std::string, std::string> parse_key_value_text(const std::string &text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + " has an empty key or value");
        if (kv.count(key))
            throw ConfigError("duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

std::map<std::string, std::string> load_key_value_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_key_value_text(buf.str());
}

std::vector<std::string> preset_names() { return {"fig2", "fig3", "fig4", "sensing"}; }

bool is_physical_preset(const std::string &name) { return name == "sensing"; }

SystemParams preset_system_params(const std::string &name) {
    SystemParams p;
    if (name == "fig2") {
        p.kappa_a = 0.6;
        p.kappa_b = 4.0;
        p.kappa_ex = 4.0;
        p.delta = 20.0;
        p.Delta = 0.0;
        p.g1 = 0.03;
        p.g2 = 4.0;
        p.omega_m = 1.0;
        p.gamma_m = 0.1;
        p.I_in = 1.1e5;
    } else if (name == "fig3") {
        p.kappa_a = 0.1;
        p.kappa_b = 0.0002;
        p.kappa_ex = 0.1;
        p.delta = 0.0;
        p.Delta = 0.0;
        p.g1 = 0.001;
        p.g2 = 0.02;
        p.omega_m = 1.0;
        p.gamma_m = 0.001;
        p.I_in = 1.0;
    } else if (name == "fig4") {
        p.kappa_a = 0.1;
        p.kappa_b = 0.00002;
        p.kappa_ex = 0.1;
        p.delta = 0.0;
        p.Delta = 0.0;
        p.g1 = 0.001;
        p.g2 = 0.01;
        p.omega_m = 1.0;
        p.gamma_m = 0.1;
        p.I_in = 0.1;
    } else if (name == "sensing") {
        return preset_physical_params(name).to_normalized();
    } else {
        throw ConfigError("unknown preset '" + name + "'");
    }
    return p;
}

PhysicalParams preset_physical_params(const std::string &name) {
    if (name != "sensing")
        throw ConfigError("preset '" + name + "' has no physical parameter set");
    PhysicalParams p;
    p.omega_m_si = 2e7;    // rad/s
    p.mass = 9e-15;        // kg
    p.gamma_m_si = 40.0;   // rad/s
    p.g1_si = 3e15;        // rad/s per m (3 MHz/nm)
    p.g2_si = 4.6e6;       // rad/s
    p.kappa_a_si = 1e6;    // rad/s
    p.kappa_b_si = 1e4;    // rad/s
    p.kappa_ex_si = 2e8;   // rad/s
    p.input_power = 10e-6; // W
    p.temperature = 300.0; // K
    return p;
}

void apply_override(SystemParams &p, const std::string &key, const std::string &value) {
    const double v = parse_double(key, value);
    if (key == "kappa_a") p.kappa_a = v;
    else if (key == "kappa_b") p.kappa_b = v;
    else if (key == "kappa_ex") p.kappa_ex = v;
    else if (key == "delta") p.delta = v;
    else if (key == "Delta") p.Delta = v;
    else if (key == "g1") p.g1 = v;
    else if (key == "g2") p.g2 = v;
    else if (key == "omega_m") p.omega_m = v;
    else if (key == "gamma_m") p.gamma_m = v;
    else if (key == "I_in") p.I_in = v;
    else throw ConfigError("unknown parameter key '" + key + "'");
}

void apply_override(PhysicalParams &p, const std::string &key, const std::string &value) {
    const double v = parse_double(key, value);
    if (key == "omega_m_si") p.omega_m_si = v;
    else if (key == "mass") p.mass = v;
    else if (key == "gamma_m_si") p.gamma_m_si = v;
    else if (key == "g1_si") p.g1_si = v;
    else if (key == "g2_si") p.g2_si = v;
    else if (key == "kappa_a_si") p.kappa_a_si = v;
    else if (key == "kappa_b_si") p.kappa_b_si = v;
    else if (key == "kappa_ex_si") p.kappa_ex_si = v;
    else if (key == "input_power") p.input_power = v;
    else if (key == "temperature") p.temperature = v;
    else if (key == "laser_omega_si") p.laser_omega_si = v;
    else throw ConfigError("unknown physical parameter key '" + key + "'");
}

std::vector<std::pair<std::string, double>> to_key_values(const SystemParams &p) {
    return {{"kappa_a", p.kappa_a}, {"kappa_b", p.kappa_b}, {"kappa_ex", p.kappa_ex},
            {"delta", p.delta},     {"Delta", p.Delta},     {"g1", p.g1},
            {"g2", p.g2},           {"omega_m", p.omega_m}, {"gamma_m", p.gamma_m},
            {"I_in", p.I_in}};
}

std::vector<std::pair<std::string, double>> to_key_values(const PhysicalParams &p) {
    return {{"omega_m_si", p.omega_m_si},   {"mass", p.mass},
            {"gamma_m_si", p.gamma_m_si},   {"g1_si", p.g1_si},
            {"g2_si", p.g2_si},             {"kappa_a_si", p.kappa_a_si},
            {"kappa_b_si", p.kappa_b_si},   {"kappa_ex_si", p.kappa_ex_si},
            {"input_power", p.input_power}, {"temperature", p.temperature},
            {"laser_omega_si", p.laser_omega_si}};
}

SystemParams system_params_from_config(const std::map<std::string, std::string> &kv,
                                       const std::string &preset) {
    SystemParams p;
    bool any = false;
    const std::string prefix = preset + ".";
    for (const auto &[key, value] : kv) {
        if (key.rfind(prefix, 0) != 0)
            continue;
        apply_override(p, key.substr(prefix.size()), value);
        any = true;
    }
    if (!any)
        throw ConfigError("preset '" + preset + "' not found in config");
    return p;
}

PhysicalParams physical_params_from_config(const std::map<std::string, std::string> &kv,
                                           const std::string &preset) {
    PhysicalParams p;
    bool any = false;
    const std::string prefix = preset + ".";
    for (const auto &[key, value] : kv) {
        if (key.rfind(prefix, 0) != 0)
            continue;
        apply_override(p, key.substr(prefix.size()), value);
        any = true;
    }
    if (!any)
        throw ConfigError("preset '" + preset + "' not found in config");
    return p;
}

} // namespace critom
