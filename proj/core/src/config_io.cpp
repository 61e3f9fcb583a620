#include "picard/config_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string_view>

#include "picard/errors.hpp"

namespace picard {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "not a number: '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(std::string_view key, std::string_view text) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "not an integer: '" + std::string(text) + "'");
  }
  return v;
}

using Setter = std::function<void(CaseConfig&, std::string_view key, std::string_view value)>;

Setter real(double ReactorConfig::*member) {
  return [member](CaseConfig& c, std::string_view k, std::string_view v) {
    c.reactor.*member = parse_double(k, v);
  };
}

Setter real(double PinGeometry::*member) {
  return [member](CaseConfig& c, std::string_view k, std::string_view v) {
    c.pin.*member = parse_double(k, v);
  };
}

Setter optional_real(std::optional<double> ReactorConfig::*member) {
  return [member](CaseConfig& c, std::string_view k, std::string_view v) {
    c.reactor.*member = parse_double(k, v);
  };
}

Setter integer(int ReactorConfig::*member) {
  return [member](CaseConfig& c, std::string_view k, std::string_view v) {
    c.reactor.*member = parse_int(k, v);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"sigma_t0", real(&ReactorConfig::sigma_t0)},
      {"c0", real(&ReactorConfig::c0)},
      {"nu_sigma_f0", real(&ReactorConfig::nu_sigma_f0)},
      {"r_sigma_f1", real(&ReactorConfig::r_sigma_f1)},
      {"r_sigma_a1", real(&ReactorConfig::r_sigma_a1)},
      {"nu", real(&ReactorConfig::nu)},
      {"kappa", real(&ReactorConfig::kappa)},
      {"q_prime_0", optional_real(&ReactorConfig::q_prime_0)},
      {"delta_t_fc", optional_real(&ReactorConfig::delta_t_fc)},
      {"t_m", real(&ReactorConfig::t_m)},
      {"core_height_L", real(&ReactorConfig::core_height_L)},
      {"n_cells", integer(&ReactorConfig::n_cells)},
      {"n_angles", integer(&ReactorConfig::n_angles)},
      {"bc_mode",
       [](CaseConfig& c, std::string_view k, std::string_view v) {
         if (v == "reflective") {
           c.reactor.bc_mode = BoundaryCondition::kReflective;
         } else if (v == "periodic") {
           c.reactor.bc_mode = BoundaryCondition::kPeriodic;
         } else {
           throw ConfigError(std::string(k), "expected reflective or periodic");
         }
       }},
      {"coolant_mode",
       [](CaseConfig& c, std::string_view k, std::string_view v) {
         if (v == "constant") {
           c.reactor.coolant_mode = CoolantMode::kConstant;
         } else if (v == "axial") {
           c.reactor.coolant_mode = CoolantMode::kAxial;
         } else {
           throw ConfigError(std::string(k), "expected constant or axial");
         }
       }},
      {"mdot_cp", optional_real(&ReactorConfig::mdot_cp)},
      {"r_fo", real(&PinGeometry::r_fo)},
      {"r_ci", real(&PinGeometry::r_ci)},
      {"r_co", real(&PinGeometry::r_co)},
      {"k_f", real(&PinGeometry::k_f)},
      {"k_c", real(&PinGeometry::k_c)},
      {"h_g", real(&PinGeometry::h_g)},
      {"h", real(&PinGeometry::h)},
  };
  return table;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CaseConfig parse_config(std::istream& in) {
  CaseConfig config;
  std::set<std::string, std::less<>> seen;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;

    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError(std::string(key), "unknown key");
    if (!seen.emplace(key).second) throw ConfigError(std::string(key), "given more than once");
    if (value.empty()) throw ConfigError(std::string(key), "missing value");
    it->second(config, key, value);
  }

  // The reference default carries delta_t_fc; an explicit q_prime_0 replaces it.
  const bool has_q = seen.contains("q_prime_0");
  const bool has_dt = seen.contains("delta_t_fc");
  if (has_q && has_dt) {
    throw ConfigError("q_prime_0", "exactly one of q_prime_0 and delta_t_fc must be given");
  }
  if (has_q) config.reactor.delta_t_fc.reset();

  config.reactor.validate();
  config.pin.validate();
  return config;
}

CaseConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open configuration file");
  return parse_config(in);
}

void write_config(std::ostream& out, const CaseConfig& config) {
  const ReactorConfig& r = config.reactor;
  const PinGeometry& p = config.pin;
  auto kv = [&out](const char* key, const std::string& value) { out << key << " = " << value << '\n'; };
  kv("sigma_t0", format_double(r.sigma_t0));
  kv("c0", format_double(r.c0));
  kv("nu_sigma_f0", format_double(r.nu_sigma_f0));
  kv("r_sigma_f1", format_double(r.r_sigma_f1));
  kv("r_sigma_a1", format_double(r.r_sigma_a1));
  kv("nu", format_double(r.nu));
  kv("kappa", format_double(r.kappa));
  if (r.q_prime_0) kv("q_prime_0", format_double(*r.q_prime_0));
  if (r.delta_t_fc) kv("delta_t_fc", format_double(*r.delta_t_fc));
  kv("t_m", format_double(r.t_m));
  kv("core_height_L", format_double(r.core_height_L));
  kv("n_cells", std::to_string(r.n_cells));
  kv("n_angles", std::to_string(r.n_angles));
  kv("bc_mode", r.bc_mode == BoundaryCondition::kReflective ? "reflective" : "periodic");
  kv("coolant_mode", r.coolant_mode == CoolantMode::kConstant ? "constant" : "axial");
  if (r.mdot_cp) kv("mdot_cp", format_double(*r.mdot_cp));
  kv("r_fo", format_double(p.r_fo));
  kv("r_ci", format_double(p.r_ci));
  kv("r_co", format_double(p.r_co));
  kv("k_f", format_double(p.k_f));
  kv("k_c", format_double(p.k_c));
  kv("h_g", format_double(p.h_g));
  kv("h", format_double(p.h));
}

}  // namespace picard
