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
#include <span>
#include <stdexcept>
#include <vector>

#include "config.hpp"

namespace udn {

/// Raised when an approximation is asked for outside its validity regime.
class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Geometry and fading of one user's cooperating BSs, nearest first.
struct ApproxInputs {
  std::vector<double> distances;   // [m], ascending
  std::vector<double> fading_mags; // |h_j|
  int k_near = 0;                  // BSs with d <= r_c
  PathLossParams law;
};

inline ApproxInputs make_approx_inputs(std::vector<double> distances, std::vector<double> fading_mags,
                                       const PathLossParams& law) {
  if (distances.size() != fading_mags.size()) throw std::invalid_argument("distances and fading sizes differ");
  if (!std::is_sorted(distances.begin(), distances.end())) throw std::invalid_argument("distances not ascending");
  ApproxInputs in{std::move(distances), std::move(fading_mags), 0, law};
  in.k_near = static_cast<int>(std::count_if(in.distances.begin(), in.distances.end(),
                                             [&](double d) { return d <= law.r_c; }));
  return in;
}

namespace detail {

// |h| * sqrt(l(d)) with the unbounded dual-slope law
inline double approx_amplitude(double mag, double d, const PathLossParams& law) {
  if (d <= law.r_c) return mag * std::pow(d, -law.alpha1 / 2.0);
  const double tau = PathLossParams::continuity_factor(law.r_c, law.alpha1, law.alpha2);
  return mag * std::sqrt(tau) * std::pow(d, -law.alpha2 / 2.0);
}

} // namespace detail

/// SE difference under the high-SIR and linear-interference approximations:
/// log2(S^J / (N S^o)), with coherent S^J built from K near-field and N - K
/// far-field amplitudes.
inline double approx_delta_se(const ApproxInputs& in) {
  if (in.distances.empty()) throw std::invalid_argument("approx_delta_se: empty cooperation set");
  if (in.distances.front() <= in.law.r_b) throw RegimeError("approx_delta_se: nearest BS inside the bounded region");
  double sum = 0.0;
  for (std::size_t j = 0; j < in.distances.size(); ++j)
    sum += detail::approx_amplitude(in.fading_mags[j], in.distances[j], in.law);
  const double a1 = detail::approx_amplitude(in.fading_mags[0], in.distances[0], in.law);
  const double n = static_cast<double>(in.distances.size());
  return std::log2(sum * sum / (n * a1 * a1));
}

inline double approx_gain(const ApproxInputs& in, double se_baseline) {
  if (!(se_baseline > 0.0)) throw std::invalid_argument("approx_gain: baseline SE must be positive");
  return approx_delta_se(in) / se_baseline;
}

/// True when the all-near-field SE difference is the same for every critical
/// distance in `r_c_values` (relative 1e-12).
inline bool rc_independence_check(const ApproxInputs& in, std::span<const double> r_c_values) {
  if (r_c_values.empty()) throw std::invalid_argument("rc_independence_check: no r_c values");
  const double min_rc = *std::min_element(r_c_values.begin(), r_c_values.end());
  if (in.distances.empty() || in.distances.back() > min_rc)
    throw std::invalid_argument("rc_independence_check: a cooperating BS lies beyond the smallest r_c");
  double ref = 0.0;
  bool first = true;
  for (double rc : r_c_values) {
    ApproxInputs v = in;
    v.law.r_c = rc;
    v.law.tau = PathLossParams::continuity_factor(rc, v.law.alpha1, v.law.alpha2);
    v.k_near = static_cast<int>(v.distances.size());
    const double d = approx_delta_se(v);
    if (first) {
      ref = d;
      first = false;
    } else if (std::abs(d - ref) > 1e-12 * std::max(std::abs(ref), 1e-300) && d != ref) {
      return false;
    }
  }
  return true;
}

} // namespace udn
