#pragma once

#include "critom/params.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace critom {

// Flat key-value config text: one `key = value` pair per line, `#` comments.
// Preset files prefix keys with the preset name (`fig2.kappa_a = 0.6`).
std::map<std::string, std::string> parse_key_value_text(const std::string &text);
std::map<std::string, std::string> load_key_value_file(const std::string &path);

// Named parameter sets from the paper's figure captions plus the physical
// sensing list. Built-in values are identical to presets/presets.cfg.
std::vector<std::string> preset_names();
bool is_physical_preset(const std::string &name);
SystemParams preset_system_params(const std::string &name);
PhysicalParams preset_physical_params(const std::string &name); // sensing only

// Applies `key=value` overrides to a parameter set; unknown keys throw
// ConfigError. Valid keys: kappa_a kappa_b kappa_ex delta Delta g1 g2 omega_m
// gamma_m I_in.
void apply_override(SystemParams &p, const std::string &key, const std::string &value);
void apply_override(PhysicalParams &p, const std::string &key, const std::string &value);

// Serialization used by provenance headers and preset round-trip checks.
std::vector<std::pair<std::string, double>> to_key_values(const SystemParams &p);
std::vector<std::pair<std::string, double>> to_key_values(const PhysicalParams &p);

// Loads a preset from a parsed preset file (same schema as the built-ins).
SystemParams system_params_from_config(const std::map<std::string, std::string> &kv,
                                       const std::string &preset);
PhysicalParams physical_params_from_config(const std::map<std::string, std::string> &kv,
                                           const std::string &preset);

} // namespace critom
