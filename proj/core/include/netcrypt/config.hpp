#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "netcrypt/sim.hpp"

namespace netcrypt {

// Rationals in configs are strings: "1/10", "20", or a decimal like "0.5"
// (which must be exactly representable, i.e. a finite decimal). Plain JSON
// integers are also accepted.
mpq_class rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const mpq_class& q);

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

RunConfig load_config_file(const std::string& path);
void save_config_file(const RunConfig& c, const std::string& path);

// Apply a dotted-path override like "grid.m=9" or "flags.shadow=false" to
// the JSON tree before it is parsed into a RunConfig.
void apply_override(nlohmann::json& j, const std::string& key_equals_value);

}  // namespace netcrypt
