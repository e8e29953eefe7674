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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>

#include "config.hpp"

namespace udn {

/// Shannon spectral efficiency [bit/s/Hz].
inline double spectral_efficiency(double sir) { return std::log1p(sir) / std::numbers::ln2; }

class UndefinedGain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative SE gain of cooperation over the single-association baseline.
inline double se_gain(double se_coop, double se_base) {
  if (!(se_base > 0.0)) throw UndefinedGain("se_gain: baseline SE is zero");
  return (se_coop - se_base) / se_base;
}

/// Area power with `n_active_per_user` transmitting BSs per user and the rest
/// asleep: P_t (n lambda_u + theta (lambda_b - n lambda_u)). Densities per m^2.
inline double area_power_formula(const SimulationConfig& c, double n_active_per_user) {
  const double active = n_active_per_user * c.lambda_u;
  if (active > c.lambda_b * (1.0 + 1e-12))
    throw std::logic_error("area_power: active BS density exceeds lambda_b");
  return c.power.p_t * (active + c.power.theta * (c.lambda_b - active));
}

/// The same expression without the density check. With N lambda_u above
/// lambda_b it is only a formula value, not a feasible network.
inline double area_power_literal(const SimulationConfig& c, double n) {
  const double active = n * c.lambda_u;
  return c.power.p_t * (active + c.power.theta * (c.lambda_b - active));
}

struct AreaPower {
  double literal = 0.0;  // with the configured N
  double realized = 0.0; // with the measured mean active BSs per user
};

inline AreaPower area_power(const SimulationConfig& c, double n_effective) {
  return {area_power_literal(c, c.n_coop), area_power_formula(c, n_effective)};
}

/// Area SE over area power.
inline double energy_efficiency(double se_mean, double lambda_u, double p_area) {
  if (!(p_area > 0.0)) throw std::domain_error("energy_efficiency: area power must be positive");
  return lambda_u * se_mean / p_area;
}

/// Sufficient statistics of one drop.
struct DropSummary {
  std::size_t users = 0;        // eligible users (cell size >= 1)
  std::size_t total_users = 0;
  std::size_t bs_count = 0;
  std::size_t active_single = 0;
  std::size_t active_coop = 0;
  double sum_se_single = 0.0;
  double sum_se_nj = 0.0;
  double sum_se_cj = 0.0;
  std::size_t zero_interference = 0;
  std::size_t sir_clamped = 0;
  std::size_t degenerate_precoders = 0;
  std::size_t resampled = 0;
  std::size_t nearest_mismatch = 0;
  // closed-form diagnostics
  std::size_t approx_users = 0;
  double sum_delta_sim = 0.0;
  double sum_delta_approx = 0.0;
  double sum_delta_absdiff = 0.0;
};

struct Estimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct MetricsReport {
  std::size_t drops = 0;
  std::size_t users = 0;
  Estimate se_single, se_nj, se_cj;
  Estimate gain_nj, gain_cj;
  double p_area_single = 0.0, p_area_coop = 0.0;
  double p_area_single_realized = 0.0, p_area_coop_realized = 0.0;
  double n_effective = 0.0; // mean active BSs per user under cooperation
  double ee_single = 0.0, ee_coop = 0.0;
  Estimate ee_gain;
  double ee_gain_realized = 0.0;
  double rho = 1.0;
  bool rho_clamped = false;
  std::size_t zero_interference = 0;
  std::size_t sir_clamped = 0;
  std::size_t empty_cell_users = 0;
  std::size_t degenerate_precoders = 0;
  std::size_t resampled_drops = 0;
  std::size_t nearest_mismatch_users = 0;
  std::size_t approx_users = 0;
  double delta_se_sim = 0.0;
  double delta_se_approx = 0.0;
  double delta_se_mad = 0.0;
};

namespace detail {

// pooled mean of y over n with drop-batched standard error (ratio estimator)
template <typename Y>
Estimate batched_mean(std::span<const DropSummary> drops, Y y) {
  double sy = 0.0, sn = 0.0;
  for (const auto& d : drops) {
    sy += y(d);
    sn += static_cast<double>(d.users);
  }
  Estimate e{sy / sn, 0.0};
  const auto b = drops.size();
  if (b < 2) return e;
  double ss = 0.0;
  for (const auto& d : drops) {
    const double r = y(d) - e.mean * static_cast<double>(d.users);
    ss += r * r;
  }
  e.stderr_ = std::sqrt(static_cast<double>(b) / static_cast<double>(b - 1) * ss) / sn;
  return e;
}

// paired ratio Y_coop / Y_base - 1 with drop-batched standard error
template <typename A, typename B>
Estimate batched_gain(std::span<const DropSummary> drops, A coop, B base) {
  double sc = 0.0, sb = 0.0;
  for (const auto& d : drops) {
    sc += coop(d);
    sb += base(d);
  }
  Estimate e{se_gain(sc, sb), 0.0};
  const auto n = drops.size();
  if (n < 2) return e;
  const double ratio = sc / sb;
  double ss = 0.0;
  for (const auto& d : drops) {
    const double z = coop(d) - ratio * base(d);
    ss += z * z;
  }
  e.stderr_ = std::sqrt(static_cast<double>(n) / static_cast<double>(n - 1) * ss) / sb;
  return e;
}

} // namespace detail

/// Pools drop summaries into scheme-level SE, gains and energy efficiency.
/// Gains are ratios of pooled means.
inline MetricsReport aggregate(std::span<const DropSummary> drops, const SimulationConfig& c, double rho = 1.0,
                               bool rho_clamped = false) {
  MetricsReport m;
  m.drops = drops.size();
  std::size_t total_users = 0, active_single = 0, active_coop = 0;
  for (const auto& d : drops) {
    m.users += d.users;
    total_users += d.total_users;
    active_single += d.active_single;
    active_coop += d.active_coop;
    m.zero_interference += d.zero_interference;
    m.sir_clamped += d.sir_clamped;
    m.empty_cell_users += d.total_users - d.users;
    m.degenerate_precoders += d.degenerate_precoders;
    m.resampled_drops += d.resampled;
    m.nearest_mismatch_users += d.nearest_mismatch;
    m.approx_users += d.approx_users;
    m.delta_se_sim += d.sum_delta_sim;
    m.delta_se_approx += d.sum_delta_approx;
    m.delta_se_mad += d.sum_delta_absdiff;
  }
  if (m.users == 0) throw std::runtime_error("aggregate: no eligible users in any drop");
  if (m.approx_users > 0) {
    const double n = static_cast<double>(m.approx_users);
    m.delta_se_sim /= n;
    m.delta_se_approx /= n;
    m.delta_se_mad /= n;
  }

  auto single = [](const DropSummary& d) { return d.sum_se_single; };
  auto nj = [](const DropSummary& d) { return d.sum_se_nj; };
  auto cj = [](const DropSummary& d) { return d.sum_se_cj; };
  m.se_single = detail::batched_mean(drops, single);
  m.se_nj = detail::batched_mean(drops, nj);
  m.se_cj = detail::batched_mean(drops, cj);
  m.gain_nj = detail::batched_gain(drops, nj, single);
  m.gain_cj = detail::batched_gain(drops, cj, single);
  // keep the exact identity with the reported means
  m.gain_nj.mean = se_gain(m.se_nj.mean, m.se_single.mean);
  m.gain_cj.mean = se_gain(m.se_cj.mean, m.se_single.mean);

  const double users_all = static_cast<double>(total_users);
  m.n_effective = static_cast<double>(active_coop) / users_all;
  m.p_area_single = area_power_literal(c, 1.0);
  m.p_area_coop = area_power_literal(c, c.n_coop);
  m.p_area_single_realized = area_power_formula(c, static_cast<double>(active_single) / users_all);
  m.p_area_coop_realized = area_power_formula(c, m.n_effective);

  m.ee_single = energy_efficiency(m.se_single.mean, c.lambda_u, m.p_area_single);
  m.ee_coop = energy_efficiency(m.se_cj.mean, c.lambda_u, m.p_area_coop);
  m.ee_gain.mean = m.ee_coop / m.ee_single;
  m.ee_gain.stderr_ = m.gain_cj.stderr_ * m.p_area_single / m.p_area_coop;
  m.ee_gain_realized = energy_efficiency(m.se_cj.mean, c.lambda_u, m.p_area_coop_realized) /
                       energy_efficiency(m.se_single.mean, c.lambda_u, m.p_area_single_realized);
  m.rho = rho;
  m.rho_clamped = rho_clamped;
  return m;
}

} // namespace udn
