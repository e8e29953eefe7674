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
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "config.hpp"
#include "random.hpp"

namespace udn {

struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

/// Square torus of side `window_side`; distances wrap on both axes.
struct TorusMetric {
  double window_side = 1000.0;

  double squared_distance(Point a, Point b) const {
    double dx = std::abs(a.x - b.x);
    double dy = std::abs(a.y - b.y);
    dx = std::min(dx, window_side - dx);
    dy = std::min(dy, window_side - dy);
    return dx * dx + dy * dy;
  }
  double distance(Point a, Point b) const { return std::sqrt(squared_distance(a, b)); }
};

inline double toroidal_distance(Point a, Point b, const TorusMetric& metric) { return metric.distance(a, b); }

struct Nearest {
  std::uint32_t index = 0;
  double squared_distance = std::numeric_limits<double>::infinity();
};

/// Uniform bucket grid over points on a torus for nearest-neighbour queries.
/// Ties are resolved toward the lower point index.
class TorusGrid {
 public:
  TorusGrid(std::span<const Point> points, const TorusMetric& metric, double target_cell)
      : points_(points), metric_(metric) {
    const double side = metric.window_side;
    double n = target_cell > 0.0 ? std::floor(side / target_cell) : 1.0;
    cells_ = static_cast<int>(std::clamp(n, 1.0, 4096.0));
    cell_width_ = side / cells_;
    cell_start_.assign(static_cast<std::size_t>(cells_) * cells_ + 1, 0);
    std::vector<std::uint32_t> cell_of(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      cell_of[i] = cell_index(points[i]);
      ++cell_start_[cell_of[i] + 1];
    }
    std::partial_sum(cell_start_.begin(), cell_start_.end(), cell_start_.begin());
    members_.resize(points.size());
    std::vector<std::uint32_t> fill(cell_start_.begin(), cell_start_.end() - 1);
    for (std::size_t i = 0; i < points.size(); ++i) members_[fill[cell_of[i]]++] = static_cast<std::uint32_t>(i);
  }

  Nearest nearest(Point p) const {
    Nearest best;
    if (points_.empty()) return best;
    const int cx = axis_cell(p.x);
    const int cy = axis_cell(p.y);
    const double fx = p.x - cx * cell_width_;
    const double fy = p.y - cy * cell_width_;
    const double gap = std::max(0.0, std::min({fx, cell_width_ - fx, fy, cell_width_ - fy}));
    for (int r = 0;; ++r) {
      if (2 * r + 1 > cells_) {
        // ring wraps onto itself: finish with a plain scan
        for (std::uint32_t i = 0; i < points_.size(); ++i) consider(p, i, best);
        return best;
      }
      for (int dy = -r; dy <= r; ++dy) {
        const bool edge_row = (dy == -r || dy == r);
        for (int dx = -r; dx <= r; dx += (edge_row ? 1 : 2 * r)) {
          scan_cell(p, wrap(cx + dx), wrap(cy + dy), best);
          if (r == 0) break;
        }
      }
      // anything outside the scanned block lies at least this far away
      const double bound = r * cell_width_ + gap;
      if (best.squared_distance < bound * bound) return best;
    }
  }

  int cells_per_axis() const { return cells_; }

 private:
  int axis_cell(double v) const {
    int c = static_cast<int>(v / cell_width_);
    return std::clamp(c, 0, cells_ - 1);
  }
  std::uint32_t cell_index(Point p) const {
    return static_cast<std::uint32_t>(axis_cell(p.y) * cells_ + axis_cell(p.x));
  }
  int wrap(int c) const { return ((c % cells_) + cells_) % cells_; }

  void consider(Point p, std::uint32_t i, Nearest& best) const {
    double d2 = metric_.squared_distance(p, points_[i]);
    if (d2 < best.squared_distance || (d2 == best.squared_distance && i < best.index)) best = {i, d2};
  }
  void scan_cell(Point p, int cx, int cy, Nearest& best) const {
    auto c = static_cast<std::size_t>(cy) * cells_ + cx;
    for (auto k = cell_start_[c]; k < cell_start_[c + 1]; ++k) consider(p, members_[k], best);
  }

  std::span<const Point> points_;
  TorusMetric metric_;
  int cells_ = 1;
  double cell_width_ = 0.0;
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> members_;
};

/// One sampled realization of BS and user positions.
struct Deployment {
  std::vector<Point> bs_positions;
  std::vector<Point> user_positions;
  double window_side = 0.0;
  int resampled = 0; // attempts discarded because they had no users
};

inline std::vector<Point> sample_uniform_points(std::size_t count, double side, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> pts(count);
  for (auto& p : pts) {
    p.x = u(rng);
    p.y = u(rng);
    if (p.x >= side) p.x = 0.0;
    if (p.y >= side) p.y = 0.0;
  }
  return pts;
}

/// Draws independent homogeneous PPPs for BSs and users on the torus.
/// Drops without any user are redrawn (at most 100 attempts).
inline Deployment sample_deployment(const SimulationConfig& config, Rng& rng) {
  const double area = config.window_side * config.window_side;
  Deployment dep;
  dep.window_side = config.window_side;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::poisson_distribution<long> n_bs(config.lambda_b * area);
    std::poisson_distribution<long> n_users(config.lambda_u * area);
    auto nb = static_cast<std::size_t>(n_bs(rng));
    auto nu = static_cast<std::size_t>(n_users(rng));
    if (nu == 0) {
      ++dep.resampled;
      continue;
    }
    dep.bs_positions = sample_uniform_points(nb, config.window_side, rng);
    dep.user_positions = sample_uniform_points(nu, config.window_side, rng);
    return dep;
  }
  throw std::runtime_error("sample_deployment: no users after 100 attempts; increase lambda_u or window_side");
}

/// User-centric Voronoi partition: every BS belongs to its nearest user.
/// The first `sorted_prefix` candidates of each user are sorted by distance
/// (ties by BS index); the remainder of a cell is unordered.
struct CellPartition {
  std::vector<std::uint32_t> owner;          // per BS: nearest user
  std::vector<std::uint32_t> offsets;        // per user, CSR into members
  std::vector<std::uint32_t> members;        // BS indices, nearest first within a user
  std::vector<double> member_sq_distances;   // parallel to members
  std::size_t nearest_mismatch_users = 0;    // users whose nearest BS overall lies in another cell

  std::size_t n_users() const { return offsets.size() - 1; }
  std::size_t cell_size(std::size_t user) const { return offsets[user + 1] - offsets[user]; }
};

inline CellPartition partition_cells(const Deployment& dep, const TorusMetric& metric,
                                     std::size_t sorted_prefix = std::numeric_limits<std::size_t>::max()) {
  const auto nu = dep.user_positions.size();
  const auto nb = dep.bs_positions.size();
  CellPartition part;
  part.owner.resize(nb);
  part.offsets.assign(nu + 1, 0);

  const double user_spacing = metric.window_side / std::sqrt(static_cast<double>(std::max<std::size_t>(nu, 1)));
  TorusGrid user_grid(dep.user_positions, metric, user_spacing);
  std::vector<double> owner_d2(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    auto n = user_grid.nearest(dep.bs_positions[b]);
    part.owner[b] = n.index;
    owner_d2[b] = n.squared_distance;
    ++part.offsets[n.index + 1];
  }
  std::partial_sum(part.offsets.begin(), part.offsets.end(), part.offsets.begin());
  part.members.resize(nb);
  part.member_sq_distances.resize(nb);
  std::vector<std::uint32_t> fill(part.offsets.begin(), part.offsets.end() - 1);
  for (std::uint32_t b = 0; b < nb; ++b) part.members[fill[part.owner[b]]++] = b;

  for (std::size_t u = 0; u < nu; ++u) {
    auto first = part.members.begin() + part.offsets[u];
    auto last = part.members.begin() + part.offsets[u + 1];
    auto closer = [&](std::uint32_t a, std::uint32_t b) {
      return owner_d2[a] != owner_d2[b] ? owner_d2[a] < owner_d2[b] : a < b;
    };
    auto middle = first + static_cast<std::ptrdiff_t>(std::min<std::size_t>(sorted_prefix, last - first));
    std::partial_sort(first, middle, last, closer);
    for (auto k = part.offsets[u]; k < part.offsets[u + 1]; ++k) part.member_sq_distances[k] = owner_d2[part.members[k]];
  }

  if (nb > 0) {
    const double bs_spacing = metric.window_side / std::sqrt(static_cast<double>(nb));
    TorusGrid bs_grid(dep.bs_positions, metric, bs_spacing);
    for (std::size_t u = 0; u < nu; ++u) {
      auto n = bs_grid.nearest(dep.user_positions[u]);
      if (part.owner[n.index] != u) ++part.nearest_mismatch_users;
    }
  }
  return part;
}

/// Per-user cooperation sets: the min(M, N) nearest BSs of each user's own
/// Voronoi cell. Stored as CSR; `active_set` is sorted by BS index.
struct CooperationAssignment {
  int n_coop = 1;
  std::vector<std::uint32_t> offsets;      // per user, into coop_members
  std::vector<std::uint32_t> coop_members; // BS indices, nearest first
  std::vector<std::uint32_t> cell_sizes;   // M per user
  std::vector<std::uint32_t> active_set;   // union of coop sets, ascending
  std::vector<std::uint32_t> serving_user; // parallel to active_set

  std::size_t n_users() const { return cell_sizes.size(); }
  std::span<const std::uint32_t> coop_set(std::size_t user) const {
    return {coop_members.data() + offsets[user], offsets[user + 1] - offsets[user]};
  }
  std::size_t empty_cell_users() const {
    return static_cast<std::size_t>(std::count(cell_sizes.begin(), cell_sizes.end(), 0u));
  }
};

inline CooperationAssignment assign_cooperation(const CellPartition& part, int n_coop) {
  const auto nu = part.n_users();
  if (n_coop < 1) throw std::invalid_argument("assign_cooperation: n_coop below 1");
  CooperationAssignment a;
  a.n_coop = n_coop;
  a.offsets.assign(nu + 1, 0);
  a.cell_sizes.resize(nu);
  for (std::size_t u = 0; u < nu; ++u) {
    a.cell_sizes[u] = static_cast<std::uint32_t>(part.cell_size(u));
    auto k = std::min<std::size_t>(a.cell_sizes[u], static_cast<std::size_t>(n_coop));
    a.offsets[u + 1] = a.offsets[u] + static_cast<std::uint32_t>(k);
  }
  a.coop_members.resize(a.offsets[nu]);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> active; // (bs, user)
  active.reserve(a.offsets[nu]);
  for (std::size_t u = 0; u < nu; ++u) {
    for (std::uint32_t k = 0; k < a.offsets[u + 1] - a.offsets[u]; ++k) {
      auto bs = part.members[part.offsets[u] + k];
      a.coop_members[a.offsets[u] + k] = bs;
      active.emplace_back(bs, static_cast<std::uint32_t>(u));
    }
  }
  std::sort(active.begin(), active.end());
  a.active_set.reserve(active.size());
  a.serving_user.reserve(active.size());
  for (auto [bs, u] : active) {
    a.active_set.push_back(bs);
    a.serving_user.push_back(u);
  }
  return a;
}

inline CooperationAssignment assign_cooperation(const Deployment& dep, int n_coop, const TorusMetric& metric) {
  return assign_cooperation(partition_cells(dep, metric, static_cast<std::size_t>(std::max(n_coop, 1))), n_coop);
}

} // namespace udn
