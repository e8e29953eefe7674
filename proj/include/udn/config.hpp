// SPDX-License-Identifier: Apache-2.0
//
// udn-coop: Monte Carlo simulator for joint transmission in ultra-dense networks
// Copyright (C) 2026 The udn-coop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace udn {

inline constexpr double kSpeedOfLight = 2.998e8; // m/s
inline constexpr double kPerKm2 = 1e6;            // m^2 per km^2

struct PathLossParams {
  double alpha1 = 2.0; // near-field exponent
  double alpha2 = 4.0; // far-field exponent
  double r_b = 1.0;    // bounded-region radius [m]
  double r_c = 70.0;   // critical distance [m]
  double tau = 0.0;    // r_c^(alpha2 - alpha1), filled by validate()

  static double continuity_factor(double r_c, double alpha1, double alpha2) {
    return std::pow(r_c, alpha2 - alpha1);
  }

  bool operator==(const PathLossParams&) const = default;
};

struct PowerParams {
  double p_t = 1.0;   // active-mode power [W]
  double theta = 0.5; // sleep-to-active ratio P_s / P_t

  bool operator==(const PowerParams&) const = default;
};

enum class CsiMode { Perfect, Delayed };

struct CsiParams {
  CsiMode mode = CsiMode::Perfect;
  double f_c = 2e9;     // carrier [Hz]
  double v_kmh = 3.0;   // user speed as configured [km/h]
  double t_s = 0.01;    // feedback delay [s]
  double c = kSpeedOfLight;
  double v = 0.0;       // user speed [m/s], filled by validate()

  bool operator==(const CsiParams&) const = default;
};

/// All scenario parameters. Densities and speed are kept in the external
/// units they were configured in (per km^2, km/h); validate() derives the SI
/// fields used by the simulation so that serialization round-trips exactly.
struct SimulationConfig {
  double lambda_b_per_km2 = 4000.0;
  double lambda_u_per_km2 = 200.0;
  int n_coop = 5;
  PathLossParams path_loss;
  PowerParams power;
  CsiParams csi;
  double window_side = 1000.0; // [m]
  long n_drops = 1000;
  std::uint64_t seed = 1;
  double sir_cap = 1e10;

  // derived by validate()
  double lambda_b = 0.0; // per m^2
  double lambda_u = 0.0; // per m^2

  bool operator==(const SimulationConfig&) const = default;
};

struct ValidationResult {
  SimulationConfig config;
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Thrown for malformed or invalid configuration input.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), errors_(std::move(errors)) {}
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errs) {
    std::string out;
    for (const auto& e : errs) {
      if (!out.empty()) out += "; ";
      out += e;
    }
    return out;
  }
  std::vector<std::string> errors_;
};

/// Checks every invariant (errors are collected, not short-circuited) and
/// fills the derived fields.
inline ValidationResult validate(const SimulationConfig& in) {
  ValidationResult r{in, {}, {}};
  auto& c = r.config;
  auto& err = r.errors;
  const auto& pl = c.path_loss;

  if (!(pl.alpha1 >= 2.0)) err.emplace_back("alpha1 below 2");
  if (!(pl.alpha1 <= pl.alpha2)) err.emplace_back("alpha1 exceeds alpha2");
  if (!(pl.r_b > 0.0)) err.emplace_back("r_b must be positive");
  if (!(pl.r_b <= pl.r_c)) err.emplace_back("r_b exceeds r_c");
  if (!(c.power.p_t > 0.0)) err.emplace_back("p_t must be positive");
  if (!(c.power.theta > 0.0 && c.power.theta <= 1.0)) err.emplace_back("theta outside (0, 1]");
  if (!(c.csi.f_c >= 0.0)) err.emplace_back("f_c negative");
  if (!(c.csi.v_kmh >= 0.0)) err.emplace_back("v negative");
  if (!(c.csi.t_s >= 0.0)) err.emplace_back("t_s negative");
  if (!(c.lambda_u_per_km2 > 0.0)) err.emplace_back("lambda_u must be positive");
  if (!(c.lambda_b_per_km2 > c.lambda_u_per_km2)) err.emplace_back("lambda_b must exceed lambda_u");
  if (c.n_coop < 1) err.emplace_back("n_coop below 1");
  if (c.n_drops < 1) err.emplace_back("n_drops below 1");
  if (!(c.window_side > 0.0) || !std::isfinite(c.window_side)) err.emplace_back("window_side must be positive");
  if (!(c.sir_cap > 0.0)) err.emplace_back("sir_cap must be positive");

  if (err.empty() && c.lambda_b_per_km2 < 2.0 * c.lambda_u_per_km2)
    r.warnings.emplace_back("lambda_b / lambda_u below 2: not an ultra-dense regime");

  c.path_loss.tau = PathLossParams::continuity_factor(pl.r_c, pl.alpha1, pl.alpha2);
  c.csi.v = c.csi.v_kmh / 3.6;
  c.lambda_b = c.lambda_b_per_km2 / kPerKm2;
  c.lambda_u = c.lambda_u_per_km2 / kPerKm2;
  return r;
}

inline SimulationConfig validated(const SimulationConfig& in) {
  auto r = validate(in);
  if (!r.ok()) throw ConfigError(std::move(r.errors));
  return r.config;
}

// ---------------------------------------------------------------------------
// Flat "key = value" text format

inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  auto res = std::from_chars(s.data(), s.data() + s.size(), out);
  return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

} // namespace detail

inline const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "lambda_b_per_km2", "lambda_u_per_km2", "n_coop", "alpha1", "alpha2", "r_b_m",
      "r_c_m", "p_t_w", "theta", "csi_mode", "f_c_hz", "v_kmh", "t_s_s",
      "window_side_m", "n_drops", "seed", "sir_cap"};
  return keys;
}

/// Sets one external key. Returns an error message, empty on success.
inline std::string set_config_key(SimulationConfig& c, std::string_view key, std::string_view value) {
  auto num = [&](double& field) -> std::string {
    if (!detail::parse_number(value, field)) return "bad number for " + std::string(key) + ": '" + std::string(value) + "'";
    return {};
  };
  if (key == "lambda_b_per_km2") return num(c.lambda_b_per_km2);
  if (key == "lambda_u_per_km2") return num(c.lambda_u_per_km2);
  if (key == "alpha1") return num(c.path_loss.alpha1);
  if (key == "alpha2") return num(c.path_loss.alpha2);
  if (key == "r_b_m") return num(c.path_loss.r_b);
  if (key == "r_c_m") return num(c.path_loss.r_c);
  if (key == "p_t_w") return num(c.power.p_t);
  if (key == "theta") return num(c.power.theta);
  if (key == "f_c_hz") return num(c.csi.f_c);
  if (key == "v_kmh") return num(c.csi.v_kmh);
  if (key == "t_s_s") return num(c.csi.t_s);
  if (key == "window_side_m") return num(c.window_side);
  if (key == "sir_cap") return num(c.sir_cap);
  if (key == "n_coop") {
    if (!detail::parse_number(value, c.n_coop)) return "bad integer for n_coop: '" + std::string(value) + "'";
    return {};
  }
  if (key == "n_drops") {
    if (!detail::parse_number(value, c.n_drops)) return "bad integer for n_drops: '" + std::string(value) + "'";
    return {};
  }
  if (key == "seed") {
    if (!detail::parse_number(value, c.seed)) return "bad integer for seed: '" + std::string(value) + "'";
    return {};
  }
  if (key == "csi_mode") {
    if (value == "perfect") c.csi.mode = CsiMode::Perfect;
    else if (value == "delayed") c.csi.mode = CsiMode::Delayed;
    else return "csi_mode must be 'perfect' or 'delayed'";
    return {};
  }
  return "unknown key: " + std::string(key);
}

/// Splits flat key=value text into ordered pairs. Blank lines and '#'
/// comments are skipped.
inline std::vector<std::pair<std::string, std::string>> parse_key_values(std::string_view text,
                                                                        std::vector<std::string>& errors) {
  std::vector<std::pair<std::string, std::string>> out;
  std::map<std::string, int> seen;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected key = value");
      continue;
    }
    std::string key(detail::trim(line.substr(0, eq)));
    std::string value(detail::trim(line.substr(eq + 1)));
    if (seen[key]++ > 0) errors.push_back("duplicate key: " + key);
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

/// Applies `key = value` lines on top of `c`; missing keys keep their
/// current values, unknown keys are errors. Does not validate.
inline SimulationConfig apply_config_text(SimulationConfig c, std::string_view text) {
  std::vector<std::string> errors;
  for (const auto& [k, v] : parse_key_values(text, errors))
    if (auto e = set_config_key(c, k, v); !e.empty()) errors.push_back(e);
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

/// Parses and validates a config document.
inline SimulationConfig parse_config(std::string_view text) { return validated(apply_config_text({}, text)); }

inline std::string config_value(const SimulationConfig& c, std::string_view key) {
  if (key == "lambda_b_per_km2") return format_double(c.lambda_b_per_km2);
  if (key == "lambda_u_per_km2") return format_double(c.lambda_u_per_km2);
  if (key == "n_coop") return std::to_string(c.n_coop);
  if (key == "alpha1") return format_double(c.path_loss.alpha1);
  if (key == "alpha2") return format_double(c.path_loss.alpha2);
  if (key == "r_b_m") return format_double(c.path_loss.r_b);
  if (key == "r_c_m") return format_double(c.path_loss.r_c);
  if (key == "p_t_w") return format_double(c.power.p_t);
  if (key == "theta") return format_double(c.power.theta);
  if (key == "csi_mode") return c.csi.mode == CsiMode::Perfect ? "perfect" : "delayed";
  if (key == "f_c_hz") return format_double(c.csi.f_c);
  if (key == "v_kmh") return format_double(c.csi.v_kmh);
  if (key == "t_s_s") return format_double(c.csi.t_s);
  if (key == "window_side_m") return format_double(c.window_side);
  if (key == "n_drops") return std::to_string(c.n_drops);
  if (key == "seed") return std::to_string(c.seed);
  if (key == "sir_cap") return format_double(c.sir_cap);
  throw std::invalid_argument("unknown key: " + std::string(key));
}

inline std::string serialize_config(const SimulationConfig& c) {
  std::string out;
  for (const auto& k : config_keys()) out += k + " = " + config_value(c, k) + "\n";
  return out;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::system_error(std::make_error_code(std::errc::no_such_file_or_directory), path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace udn
