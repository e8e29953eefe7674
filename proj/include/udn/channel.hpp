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
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "bessel.hpp"
#include "config.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace udn {

/// Bounded dual-slope path loss: 1 inside r_b, d^-alpha1 up to r_c and
/// tau * d^-alpha2 beyond.
class PathLossLaw {
 public:
  explicit PathLossLaw(const PathLossParams& p)
      : params_(p),
        tau_(PathLossParams::continuity_factor(p.r_c, p.alpha1, p.alpha2)),
        r_b2_(p.r_b * p.r_b),
        r_c2_(p.r_c * p.r_c),
        half1_(p.alpha1 / 2.0),
        half2_(p.alpha2 / 2.0) {}

  double operator()(double d) const { return from_squared(d * d); }

  /// Same law evaluated from a squared distance, avoiding the sqrt.
  double from_squared(double d2) const {
    if (d2 <= r_b2_) return 1.0;
    if (d2 <= r_c2_) return inverse_power(d2, half1_);
    return tau_ * inverse_power(d2, half2_);
  }

  const PathLossParams& params() const { return params_; }
  double tau() const { return tau_; }

 private:
  static double inverse_power(double d2, double half_exp) {
    if (half_exp == 1.0) return 1.0 / d2;
    if (half_exp == 2.0) return 1.0 / (d2 * d2);
    return std::pow(d2, -half_exp);
  }

  PathLossParams params_;
  double tau_, r_b2_, r_c2_, half1_, half2_;
};

inline double path_loss(double d, const PathLossLaw& law) { return law(d); }

struct Correlation {
  double rho = 1.0;
  bool clamped = false; // J0 went negative and was clamped to 0
};

inline double doppler_frequency(const CsiParams& csi) { return csi.f_c * csi.v / csi.c; }

/// Correlation between the channel at transmission time and the delayed
/// estimate: J0(2 pi f_d T_s), clamped to [0, 1].
inline Correlation correlation_coefficient(const CsiParams& csi) {
  if (csi.mode == CsiMode::Perfect) return {1.0, false};
  double rho = bessel_j0(2.0 * std::numbers::pi * doppler_frequency(csi) * csi.t_s);
  if (rho < 0.0) return {0.0, true};
  return {std::min(rho, 1.0), false};
}

/// Fading and path loss for every (active BS, user) pair of one drop.
/// Row-major: pair (user, column) at user * n_active + column, where column
/// indexes `active_bs`.
struct ChannelRealization {
  std::size_t n_users = 0;
  std::vector<std::uint32_t> active_bs;
  double rho = 1.0;
  std::vector<double> loss;
  std::vector<std::complex<double>> h_true;
  std::vector<std::complex<double>> h_est;

  std::size_t n_active() const { return active_bs.size(); }
  std::size_t pair(std::size_t user, std::size_t column) const { return user * active_bs.size() + column; }
  /// Column of a BS in `active_bs`, or npos for dormant BSs.
  std::size_t column_of(std::uint32_t bs) const {
    auto it = std::lower_bound(active_bs.begin(), active_bs.end(), bs);
    if (it == active_bs.end() || *it != bs) return npos;
    return static_cast<std::size_t>(it - active_bs.begin());
  }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Draws the delayed estimate h_est ~ CN(0,1) and the transmission-time
/// channel h_true = rho * h_est + e, e ~ CN(0, 1 - rho^2), for every user
/// against every BS in `active_bs` (ascending). Estimates are drawn
/// user-major, followed by the innovations in the same order.
inline ChannelRealization realize_channels(const Deployment& dep, std::span<const std::uint32_t> active_bs,
                                           const PathLossLaw& law, double rho, Rng& rng) {
  ChannelRealization ch;
  ch.n_users = dep.user_positions.size();
  ch.active_bs.assign(active_bs.begin(), active_bs.end());
  ch.rho = rho;
  const auto n = ch.n_users * ch.n_active();
  ch.loss.resize(n);
  ch.h_true.resize(n);
  ch.h_est.resize(n);

  const TorusMetric metric{dep.window_side};
  ComplexNormal unit(1.0);
  std::size_t k = 0;
  for (std::size_t u = 0; u < ch.n_users; ++u) {
    const Point up = dep.user_positions[u];
    for (auto bs : ch.active_bs) {
      ch.loss[k] = law.from_squared(metric.squared_distance(up, dep.bs_positions[bs]));
      ch.h_est[k] = unit(rng);
      ++k;
    }
  }
  if (rho == 1.0) {
    ch.h_true = ch.h_est;
  } else {
    // innovations come after all estimates, so the estimates of a drop do
    // not depend on rho
    ComplexNormal innovation(std::max(0.0, 1.0 - rho * rho));
    for (std::size_t i = 0; i < n; ++i) ch.h_true[i] = rho * ch.h_est[i] + innovation(rng);
  }
  return ch;
}

inline ChannelRealization realize_channels(const Deployment& dep, const CooperationAssignment& assignment,
                                           const PathLossLaw& law, double rho, Rng& rng) {
  return realize_channels(dep, assignment.active_set, law, rho, rng);
}

} // namespace udn
