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
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "channel.hpp"
#include "config.hpp"
#include "geometry.hpp"

namespace udn {

namespace detail {

inline std::size_t require_column(const ChannelRealization& ch, std::uint32_t bs) {
  auto c = ch.column_of(bs);
  if (c == ChannelRealization::npos) throw std::invalid_argument("BS has no channel draw (not active)");
  return c;
}

} // namespace detail

/// Power-summed desired signal, unit precoders.
inline double signal_power_noncoherent(std::span<const std::uint32_t> coop, const ChannelRealization& ch,
                                       std::size_t user) {
  double s = 0.0;
  for (auto bs : coop) {
    auto k = ch.pair(user, detail::require_column(ch, bs));
    s += std::norm(ch.h_true[k]) * ch.loss[k];
  }
  return s;
}

/// Coherent desired signal with MRT precoders built from the delayed
/// estimate: |sum_x h_true * conj(h_est) / |h_est| * sqrt(loss)|^2.
/// A zero estimate falls back to w = 1 and is counted in `degenerate`.
inline double signal_power_coherent(std::span<const std::uint32_t> coop, const ChannelRealization& ch,
                                    std::size_t user, std::size_t* degenerate = nullptr) {
  std::complex<double> amp{0.0, 0.0};
  for (auto bs : coop) {
    auto k = ch.pair(user, detail::require_column(ch, bs));
    const double mag = std::abs(ch.h_est[k]);
    std::complex<double> w{1.0, 0.0};
    if (mag > 0.0) w = std::conj(ch.h_est[k]) / mag;
    else if (degenerate) ++*degenerate;
    amp += ch.h_true[k] * w * std::sqrt(ch.loss[k]);
  }
  return std::norm(amp);
}

/// Interference from every active BS outside the user's own set.
inline double interference_power(std::span<const std::uint32_t> active_set, std::span<const std::uint32_t> coop,
                                 const ChannelRealization& ch, std::size_t user) {
  double i = 0.0;
  for (auto bs : active_set) {
    if (std::find(coop.begin(), coop.end(), bs) != coop.end()) continue;
    auto k = ch.pair(user, detail::require_column(ch, bs));
    i += std::norm(ch.h_true[k]) * ch.loss[k];
  }
  return i;
}

struct LinkBudget {
  bool eligible = false; // user has at least one BS in its cell
  double s_single = 0.0, s_nj = 0.0, s_cj = 0.0;
  double i_single = 0.0, i_coop = 0.0;
  double sir_single = 0.0, sir_nj = 0.0, sir_cj = 0.0;
};

struct LinkReport {
  std::vector<LinkBudget> users;
  std::size_t zero_interference = 0; // SIRs clamped because no interferer was active
  std::size_t sir_clamped = 0;       // SIRs clamped at sir_cap with nonzero interference
  std::size_t degenerate_precoders = 0;
};

inline double clamp_sir(double signal, double interference, double cap, LinkReport& rep) {
  if (interference <= 0.0) {
    ++rep.zero_interference;
    return cap;
  }
  double s = signal / interference;
  if (s > cap) {
    ++rep.sir_clamped;
    return cap;
  }
  return s;
}

/// Per-user SIR for single association (baseline, N = 1) and for both joint
/// transmission schemes. `ch` must cover the cooperation active set, which
/// contains the baseline active set, so shared links reuse the same draws.
inline LinkReport compute_link_budgets(const CooperationAssignment& baseline, const CooperationAssignment& coop,
                                       const ChannelRealization& ch, const SimulationConfig& config) {
  constexpr auto none = std::numeric_limits<std::uint32_t>::max();
  const auto n_cols = ch.n_active();
  if (coop.active_set != ch.active_bs) throw std::invalid_argument("channels not realized on the cooperation active set");

  std::vector<std::uint32_t> coop_user(coop.serving_user.begin(), coop.serving_user.end());
  std::vector<std::uint32_t> base_user(n_cols, none);
  for (std::size_t i = 0; i < baseline.active_set.size(); ++i)
    base_user[detail::require_column(ch, baseline.active_set[i])] = baseline.serving_user[i];

  LinkReport rep;
  rep.users.resize(ch.n_users);
  for (std::size_t u = 0; u < ch.n_users; ++u) {
    auto& lb = rep.users[u];
    if (coop.cell_sizes[u] == 0) continue;
    lb.eligible = true;
    const auto uid = static_cast<std::uint32_t>(u);
    const auto* h = &ch.h_true[ch.pair(u, 0)];
    const auto* loss = &ch.loss[ch.pair(u, 0)];
    for (std::size_t c = 0; c < n_cols; ++c) {
      const bool own_coop = coop_user[c] == uid;
      const bool base_interferer = base_user[c] != none && base_user[c] != uid;
      if (own_coop && !base_interferer) continue;
      const double p = std::norm(h[c]) * loss[c];
      if (!own_coop) lb.i_coop += p;
      if (base_interferer) lb.i_single += p;
    }
    lb.s_single = signal_power_noncoherent(baseline.coop_set(u), ch, u);
    lb.s_nj = signal_power_noncoherent(coop.coop_set(u), ch, u);
    lb.s_cj = signal_power_coherent(coop.coop_set(u), ch, u, &rep.degenerate_precoders);
    lb.sir_single = clamp_sir(lb.s_single, lb.i_single, config.sir_cap, rep);
    lb.sir_nj = clamp_sir(lb.s_nj, lb.i_coop, config.sir_cap, rep);
    lb.sir_cj = clamp_sir(lb.s_cj, lb.i_coop, config.sir_cap, rep);
  }
  return rep;
}

} // namespace udn
