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

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "config.hpp"
#include "geometry.hpp"
#include "metrics.hpp"
#include "sweep.hpp"

namespace udn {

inline constexpr std::string_view kVersionTag = "udn-coop 1.0.0";

/// RFC 4180 field quoting.
inline std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

inline void write_csv_line(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << csv_field(fields[i]);
  }
  os << "\r\n";
}

/// Where a result row sits inside a sweep; empty for single runs.
struct RowContext {
  std::string series;
  std::string axis;
  std::optional<double> axis_value;
  SchemeSet schemes;
};

inline std::vector<std::string> result_columns() {
  std::vector<std::string> cols = {"version", "series", "axis", "axis_value", "schemes"};
  for (const auto& k : config_keys()) cols.push_back(k);
  for (const char* k : {"rho", "rho_clamped", "drops", "users",
                        "se_single", "se_single_stderr", "se_nj", "se_nj_stderr", "se_cj", "se_cj_stderr",
                        "gain_nj", "gain_nj_stderr", "gain_cj", "gain_cj_stderr",
                        "n_effective", "p_area_single", "p_area_coop", "p_area_single_realized",
                        "p_area_coop_realized", "ee_single", "ee_coop", "ee_gain", "ee_gain_stderr",
                        "ee_gain_realized", "zero_interference", "sir_clamped", "empty_cell_users",
                        "degenerate_precoders", "resampled_drops", "nearest_mismatch_users",
                        "approx_users", "delta_se_sim", "delta_se_approx", "delta_se_mad"})
    cols.emplace_back(k);
  return cols;
}

inline std::vector<std::string> result_row(const SimulationConfig& c, const MetricsReport& m, const RowContext& ctx) {
  const auto f = format_double;
  const auto u = [](std::size_t v) { return std::to_string(v); };
  const bool nj = ctx.schemes.noncoherent;
  const bool cj = ctx.schemes.coherent;
  auto opt = [](bool on, double v) { return on ? format_double(v) : std::string(); };

  std::vector<std::string> row = {std::string(kVersionTag), ctx.series, ctx.axis,
                                  ctx.axis_value ? f(*ctx.axis_value) : std::string(), ctx.schemes.to_string()};
  for (const auto& k : config_keys()) row.push_back(config_value(c, k));
  for (auto& v : std::vector<std::string>{
           f(m.rho), m.rho_clamped ? "1" : "0", u(m.drops), u(m.users),
           f(m.se_single.mean), f(m.se_single.stderr_), opt(nj, m.se_nj.mean), opt(nj, m.se_nj.stderr_),
           opt(cj, m.se_cj.mean), opt(cj, m.se_cj.stderr_),
           opt(nj, m.gain_nj.mean), opt(nj, m.gain_nj.stderr_), opt(cj, m.gain_cj.mean), opt(cj, m.gain_cj.stderr_),
           f(m.n_effective), f(m.p_area_single), f(m.p_area_coop), f(m.p_area_single_realized),
           f(m.p_area_coop_realized), f(m.ee_single), opt(cj, m.ee_coop), opt(cj, m.ee_gain.mean),
           opt(cj, m.ee_gain.stderr_), opt(cj, m.ee_gain_realized),
           u(m.zero_interference), u(m.sir_clamped), u(m.empty_cell_users), u(m.degenerate_precoders),
           u(m.resampled_drops), u(m.nearest_mismatch_users), u(m.approx_users),
           opt(cj, m.delta_se_sim), opt(cj, m.delta_se_approx), opt(cj, m.delta_se_mad)})
    row.push_back(std::move(v));
  return row;
}

/// Positions and assignments of one drop, for plotting. One row per node:
/// kind (bs|user), index, x, y, serving user (empty if dormant) and rank in
/// that user's cooperation set.
inline void write_drop_dump(std::ostream& os, const Deployment& dep, const CooperationAssignment& a) {
  write_csv_line(os, {"kind", "index", "x", "y", "serving_user", "coop_rank"});
  std::vector<std::string> serving(dep.bs_positions.size()), rank(dep.bs_positions.size());
  for (std::size_t user = 0; user < a.n_users(); ++user) {
    auto set = a.coop_set(user);
    for (std::size_t k = 0; k < set.size(); ++k) {
      serving[set[k]] = std::to_string(user);
      rank[set[k]] = std::to_string(k);
    }
  }
  for (std::size_t b = 0; b < dep.bs_positions.size(); ++b)
    write_csv_line(os, {"bs", std::to_string(b), format_double(dep.bs_positions[b].x),
                        format_double(dep.bs_positions[b].y), serving[b], rank[b]});
  for (std::size_t i = 0; i < dep.user_positions.size(); ++i)
    write_csv_line(os, {"user", std::to_string(i), format_double(dep.user_positions[i].x),
                        format_double(dep.user_positions[i].y), "", ""});
}

} // namespace udn
