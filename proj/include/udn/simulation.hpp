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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "analysis.hpp"
#include "channel.hpp"
#include "config.hpp"
#include "geometry.hpp"
#include "link.hpp"
#include "metrics.hpp"
#include "random.hpp"

namespace udn {

/// Everything produced by one drop; kept for tests and drop dumps.
struct DropArtifacts {
  Deployment deployment;
  CellPartition partition;
  CooperationAssignment baseline;
  CooperationAssignment coop;
  ChannelRealization channels;
  LinkReport links;
};

inline Rng drop_stream(const SimulationConfig& c, std::uint64_t drop, std::uint64_t purpose) {
  return Rng(derive_seed(c.seed, {drop, purpose}));
}

/// Geometry and fading use separate streams, so the same seed yields the
/// same deployment regardless of CSI settings.
inline DropArtifacts realize_drop(const SimulationConfig& c, const PathLossLaw& law, double rho, std::uint64_t drop) {
  DropArtifacts a;
  const TorusMetric metric{c.window_side};
  auto geo = drop_stream(c, drop, 0);
  auto fading = drop_stream(c, drop, 1);
  a.deployment = sample_deployment(c, geo);
  a.partition = partition_cells(a.deployment, metric, static_cast<std::size_t>(c.n_coop));
  a.baseline = assign_cooperation(a.partition, 1);
  a.coop = assign_cooperation(a.partition, c.n_coop);
  a.channels = realize_channels(a.deployment, a.coop, law, rho, fading);
  a.links = compute_link_budgets(a.baseline, a.coop, a.channels, c);
  return a;
}

inline DropSummary summarize_drop(const DropArtifacts& a, const SimulationConfig& c) {
  DropSummary s;
  s.total_users = a.deployment.user_positions.size();
  s.bs_count = a.deployment.bs_positions.size();
  s.active_single = a.baseline.active_set.size();
  s.active_coop = a.coop.active_set.size();
  s.zero_interference = a.links.zero_interference;
  s.sir_clamped = a.links.sir_clamped;
  s.degenerate_precoders = a.links.degenerate_precoders;
  s.resampled = static_cast<std::size_t>(a.deployment.resampled);
  s.nearest_mismatch = a.partition.nearest_mismatch_users;

  std::vector<double> dist, mags;
  for (std::size_t u = 0; u < a.links.users.size(); ++u) {
    const auto& lb = a.links.users[u];
    if (!lb.eligible) continue;
    ++s.users;
    const double se_o = spectral_efficiency(lb.sir_single);
    const double se_cj = spectral_efficiency(lb.sir_cj);
    s.sum_se_single += se_o;
    s.sum_se_nj += spectral_efficiency(lb.sir_nj);
    s.sum_se_cj += se_cj;

    auto set = a.coop.coop_set(u);
    if (set.size() != static_cast<std::size_t>(c.n_coop)) continue;
    const auto base = a.partition.offsets[u];
    dist.clear();
    mags.clear();
    for (std::size_t k = 0; k < set.size(); ++k) {
      dist.push_back(std::sqrt(a.partition.member_sq_distances[base + k]));
      mags.push_back(std::abs(a.channels.h_true[a.channels.pair(u, a.channels.column_of(set[k]))]));
    }
    if (dist.front() <= c.path_loss.r_b) continue;
    const double approx = approx_delta_se(make_approx_inputs(dist, mags, c.path_loss));
    const double sim = se_cj - se_o;
    ++s.approx_users;
    s.sum_delta_sim += sim;
    s.sum_delta_approx += approx;
    s.sum_delta_absdiff += std::abs(sim - approx);
  }
  return s;
}

struct SimulationResult {
  MetricsReport metrics;
  std::vector<DropSummary> drops;
};

/// Runs all drops of a validated config on `jobs` threads. Drop i always
/// uses the streams derived from (seed, i) and the reduction runs in drop
/// order, so the result does not depend on `jobs`.
inline SimulationResult simulate(const SimulationConfig& c, unsigned jobs = 1) {
  const PathLossLaw law(c.path_loss);
  const auto corr = correlation_coefficient(c.csi);
  const auto n = static_cast<std::size_t>(c.n_drops);
  SimulationResult res;
  res.drops.resize(n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < n; i = next++)
        res.drops[i] = summarize_drop(realize_drop(c, law, corr.rho, i), c);
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = n;
    }
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  res.metrics = aggregate(res.drops, c, corr.rho, corr.clamped);
  return res;
}

} // namespace udn
