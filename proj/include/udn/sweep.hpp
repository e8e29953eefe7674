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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "random.hpp"

namespace udn {

enum class Scheme { Single, NonCoherent, Coherent };

struct SchemeSet {
  bool single = true;
  bool noncoherent = true;
  bool coherent = true;

  bool contains(Scheme s) const {
    switch (s) {
      case Scheme::Single: return single;
      case Scheme::NonCoherent: return noncoherent;
      case Scheme::Coherent: return coherent;
    }
    return false;
  }
  std::string to_string() const {
    std::string out;
    auto add = [&](bool on, const char* name) {
      if (!on) return;
      if (!out.empty()) out += ",";
      out += name;
    };
    add(single, "single");
    add(noncoherent, "noncoherent");
    add(coherent, "coherent");
    return out;
  }
};

inline const std::vector<std::string>& sweep_axes() {
  static const std::vector<std::string> axes = {"r_c", "alpha1", "lambda_u", "lambda_b", "f_c", "n_coop", "theta"};
  return axes;
}

/// One-dimensional parameter sweep around a base configuration. Axis values
/// use the external units of the config file (per km^2, Hz, m).
struct SweepSpec {
  SimulationConfig base;
  std::string axis;
  std::vector<double> values;
  SchemeSet schemes;
};

/// Sets the swept parameter on an (unvalidated) config.
inline void apply_axis(SimulationConfig& c, std::string_view axis, double value) {
  if (axis == "r_c") c.path_loss.r_c = value;
  else if (axis == "alpha1") c.path_loss.alpha1 = value;
  else if (axis == "lambda_u") c.lambda_u_per_km2 = value;
  else if (axis == "lambda_b") c.lambda_b_per_km2 = value;
  else if (axis == "f_c") c.csi.f_c = value;
  else if (axis == "theta") c.power.theta = value;
  else if (axis == "n_coop") {
    if (value != std::floor(value)) throw ConfigError({"n_coop axis value not an integer"});
    c.n_coop = static_cast<int>(value);
  } else {
    throw ConfigError({"unknown sweep axis: " + std::string(axis)});
  }
}

inline std::vector<std::string> check_sweep(const SweepSpec& s) {
  std::vector<std::string> errs;
  if (std::find(sweep_axes().begin(), sweep_axes().end(), s.axis) == sweep_axes().end())
    errs.push_back("unknown sweep axis: " + s.axis);
  if (s.values.empty()) errs.emplace_back("sweep values empty");
  bool up = true, down = true;
  for (std::size_t i = 1; i < s.values.size(); ++i) {
    up = up && s.values[i] > s.values[i - 1];
    down = down && s.values[i] < s.values[i - 1];
  }
  if (!up && !down) errs.emplace_back("sweep values not strictly ordered");
  if (!s.schemes.single) errs.emplace_back("schemes must include single (the gain baseline)");
  return errs;
}

/// Validated config of sweep point `index`, seeded with hash(base seed, index).
inline SimulationConfig sweep_point(const SweepSpec& s, std::size_t index) {
  SimulationConfig c = s.base;
  apply_axis(c, s.axis, s.values.at(index));
  c.seed = derive_seed(s.base.seed, {index});
  return validated(c);
}

inline std::vector<SimulationConfig> sweep_points(const SweepSpec& s) {
  if (auto errs = check_sweep(s); !errs.empty()) throw ConfigError(std::move(errs));
  std::vector<SimulationConfig> out;
  for (std::size_t i = 0; i < s.values.size(); ++i) out.push_back(sweep_point(s, i));
  return out;
}

inline SchemeSet parse_schemes(std::string_view text) {
  SchemeSet set{false, false, false};
  std::vector<std::string> errs;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    auto item = detail::trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
    pos = comma == std::string_view::npos ? text.size() + 1 : comma + 1;
    if (item == "single") set.single = true;
    else if (item == "noncoherent") set.noncoherent = true;
    else if (item == "coherent") set.coherent = true;
    else errs.push_back("unknown scheme: '" + std::string(item) + "'");
  }
  if (!errs.empty()) throw ConfigError(std::move(errs));
  return set;
}

/// Sweep file: the config keys plus `axis`, `values` (comma list) and
/// optionally `schemes` (comma list, default all three).
inline SweepSpec parse_sweep(std::string_view text) {
  std::vector<std::string> errors;
  SweepSpec s;
  bool have_axis = false, have_values = false;
  for (const auto& [k, v] : parse_key_values(text, errors)) {
    if (k == "axis") {
      s.axis = v;
      have_axis = true;
    } else if (k == "values") {
      have_values = true;
      std::string_view rest = v;
      std::size_t pos = 0;
      while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        auto item = detail::trim(rest.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        pos = comma == std::string_view::npos ? rest.size() + 1 : comma + 1;
        if (item.empty()) continue;
        double x = 0.0;
        if (!detail::parse_number(item, x)) errors.push_back("bad sweep value: '" + std::string(item) + "'");
        else s.values.push_back(x);
      }
    } else if (k == "schemes") {
      try {
        s.schemes = parse_schemes(v);
      } catch (const ConfigError& e) {
        errors.insert(errors.end(), e.errors().begin(), e.errors().end());
      }
    } else if (auto e = set_config_key(s.base, k, v); !e.empty()) {
      errors.push_back(e);
    }
  }
  if (!have_axis) errors.emplace_back("sweep spec missing 'axis'");
  if (!have_values) errors.emplace_back("sweep spec missing 'values'");
  if (!errors.empty()) throw ConfigError(std::move(errors));
  sweep_points(s); // every point must validate
  return s;
}

// ---------------------------------------------------------------------------
// Figure presets. Fixed parameters follow the figure captions; the swept
// ranges bracket the values discussed in the text and are our own choice.

enum class FigureId { Fig3 = 3, Fig4, Fig5, Fig6, Fig7, Fig8 };

inline FigureId parse_figure_id(std::string_view name) {
  if (name.size() == 4 && name.substr(0, 3) == "fig" && name[3] >= '3' && name[3] <= '8')
    return static_cast<FigureId>(name[3] - '0');
  throw ConfigError({"unknown figure id: '" + std::string(name) + "' (expected fig3 .. fig8)"});
}

inline std::string figure_name(FigureId id) { return "fig" + std::to_string(static_cast<int>(id)); }

struct FigurePreset {
  FigureId id;
  std::string title;
  std::vector<SweepSpec> series;
};

namespace detail {

inline SimulationConfig caption_defaults() {
  SimulationConfig c;
  c.lambda_b_per_km2 = 4000.0;
  c.lambda_u_per_km2 = 200.0;
  c.path_loss.alpha1 = 2.0;
  c.path_loss.alpha2 = 4.0;
  c.path_loss.r_b = 1.0;
  c.path_loss.r_c = 70.0;
  c.n_coop = 5;
  return c;
}

} // namespace detail

/// Sweeps reproducing one figure. Series i gets base seed
/// hash(seed, figure, i); points inside a series derive from that.
inline FigurePreset figure_preset(FigureId id, std::uint64_t seed = 1, long n_drops = 1000) {
  FigurePreset p{id, {}, {}};
  auto base = detail::caption_defaults();
  base.n_drops = n_drops;
  auto add = [&](SimulationConfig c, std::string axis, std::vector<double> values, SchemeSet schemes = {}) {
    c.seed = derive_seed(seed, {static_cast<std::uint64_t>(id), p.series.size()});
    p.series.push_back({c, std::move(axis), std::move(values), schemes});
  };
  switch (id) {
    case FigureId::Fig3:
      p.title = "SE vs critical distance, [alpha1, alpha2] = [2, 4]";
      for (int n : {2, 3, 4, 5}) {
        auto c = base;
        c.n_coop = n;
        add(c, "r_c", {10, 30, 50, 70, 90, 110, 130, 150});
      }
      break;
    case FigureId::Fig4:
      p.title = "SE vs near-field exponent, alpha2 = 4, R_c = 70 m";
      for (int n : {2, 3, 4, 5}) {
        auto c = base;
        c.n_coop = n;
        add(c, "alpha1", {2.0, 2.5, 3.0, 3.5, 4.0});
      }
      break;
    case FigureId::Fig5:
      p.title = "cooperation gain vs user density, N = 5";
      add(base, "lambda_u", {50, 100, 150, 200, 300, 400});
      break;
    case FigureId::Fig6:
      p.title = "cooperation gain vs BS density, N = 5";
      add(base, "lambda_b", {1e3, 2e3, 5e3, 1e4, 2e4, 5e4, 1e5, 2e5, 5e5, 1e6});
      break;
    case FigureId::Fig7: {
      p.title = "cooperation gain vs carrier frequency, T_s = 10 ms, v = 3 km/h, N = 5";
      auto c = base;
      c.csi.mode = CsiMode::Delayed;
      c.csi.t_s = 0.01;
      c.csi.v_kmh = 3.0;
      add(c, "f_c", {0.5e9, 1e9, 2e9, 3e9, 4e9, 5e9, 6e9});
      break;
    }
    case FigureId::Fig8: {
      p.title = "network EE gain vs cooperation number";
      std::vector<double> ns = {1, 2, 3, 4, 5, 6, 7, 8};
      SchemeSet sc{true, false, true};
      for (double theta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        auto c = base;
        c.power.theta = theta;
        add(c, "n_coop", ns, sc);
      }
      auto far = base;
      far.power.theta = 0.5;
      far.path_loss.r_c = 150.0;
      add(far, "n_coop", ns, sc);
      auto delayed = base;
      delayed.power.theta = 0.5;
      delayed.csi.mode = CsiMode::Delayed;
      delayed.csi.f_c = 4e9;
      add(delayed, "n_coop", ns, sc);
      break;
    }
  }
  return p;
}

/// All validated configs of a figure, series by series.
inline std::vector<SimulationConfig> figure_configs(FigureId id, std::uint64_t seed = 1, long n_drops = 1000) {
  std::vector<SimulationConfig> out;
  for (const auto& s : figure_preset(id, seed, n_drops).series)
    for (auto& c : sweep_points(s)) out.push_back(std::move(c));
  return out;
}

} // namespace udn
