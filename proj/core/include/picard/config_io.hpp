#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "picard/core_model.hpp"

namespace picard {

struct CaseConfig {
  ReactorConfig reactor;
  PinGeometry pin;
};

// Parses `key = value` lines. Keys are the ReactorConfig / PinGeometry field
// names; `#` starts a comment. Unknown keys, duplicates, malformed numbers and
// giving both q_prime_0 and delta_t_fc raise ConfigError. The parsed case is
// validated before it is returned.
CaseConfig parse_config(std::istream& in);
CaseConfig load_config(const std::filesystem::path& path);

// Writes every key, one per line, in a form parse_config reads back exactly.
void write_config(std::ostream& out, const CaseConfig& config);

}  // namespace picard
