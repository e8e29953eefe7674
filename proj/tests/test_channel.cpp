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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "udn/channel.hpp"

using namespace udn;
using Catch::Approx;

namespace {

PathLossParams params(double a1, double a2, double rb, double rc) {
  return {a1, a2, rb, rc, PathLossParams::continuity_factor(rc, a1, a2)};
}

ChannelRealization grid_channels(std::size_t users, std::size_t bss, double rho, std::uint64_t seed) {
  std::mt19937_64 pos_rng(seed);
  std::uniform_real_distribution<double> pos(0.0, 500.0);
  Deployment dep;
  dep.window_side = 500.0;
  dep.user_positions.resize(users);
  dep.bs_positions.resize(bss);
  for (auto& p : dep.user_positions) p = {pos(pos_rng), pos(pos_rng)};
  for (auto& p : dep.bs_positions) p = {pos(pos_rng), pos(pos_rng)};
  std::vector<std::uint32_t> active(bss);
  std::iota(active.begin(), active.end(), 0u);
  Rng rng(seed + 1);
  return realize_channels(dep, active, PathLossLaw(params(2, 4, 1, 70)), rho, rng);
}

} // namespace

TEST_CASE("path loss branches") {
  PathLossLaw law(params(2, 4, 1, 70));
  CHECK(path_loss(0.5, law) == 1.0);
  CHECK(path_loss(0.0, law) == 1.0);
  CHECK(path_loss(1.0, law) == 1.0);
  CHECK(path_loss(70.0, law) == Approx(1.0 / 4900.0).epsilon(1e-14));
  CHECK(4900.0 * std::pow(70.0, -4.0) == Approx(1.0 / 4900.0).epsilon(1e-14));
  CHECK(path_loss(140.0, law) == Approx(1.2755102040816e-5).epsilon(1e-12));
  CHECK(path_loss(10.0, law) == Approx(0.01).epsilon(1e-14));
  CHECK(law.from_squared(140.0 * 140.0) == path_loss(140.0, law));

  PathLossLaw odd(params(2.5, 3.7, 1, 30));
  CHECK(odd(10.0) == Approx(std::pow(10.0, -2.5)).epsilon(1e-14));
  CHECK(odd(50.0) == Approx(std::pow(30.0, 1.2) * std::pow(50.0, -3.7)).epsilon(1e-13));
}

TEST_CASE("path loss is monotone, bounded and continuous (property)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const double a1 = 2.0 + 3.0 * u(rng);
    const double a2 = a1 + 3.0 * u(rng);
    const double rb = 1.0 + 2.0 * u(rng);
    const double rc = rb + 200.0 * u(rng);
    PathLossLaw law(params(a1, a2, rb, rc));
    double prev = 2.0;
    for (int i = 0; i < 200; ++i) {
      const double d = 0.02 * i * i;
      const double l = law(d);
      REQUIRE(l > 0.0);
      REQUIRE(l <= 1.0);
      REQUIRE(l <= prev);
      prev = l;
    }
    const double eps = 1e-9;
    REQUIRE(law(rc - eps) == Approx(law(rc + eps)).epsilon(1e-6));
    // exact continuity at r_b only holds when r_b = 1 (d^-alpha1 = 1 there)
  }
  PathLossLaw unit_rb(params(3, 4, 1, 50));
  CHECK(unit_rb(1.0 + 1e-9) == Approx(unit_rb(1.0 - 1e-9)).epsilon(1e-6));
}

TEST_CASE("bessel_j0 reference values") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(std::abs(bessel_j0(2.404825557695773)) < 1e-10);
  CHECK(oracle::j0(0.34907) == Approx(0.96977).margin(1e-5));
  CHECK(bessel_j0(0.34907) == Approx(0.96977).margin(1e-5));
  CHECK(bessel_j0(-1.5) == bessel_j0(1.5));
}

TEST_CASE("bessel_j0 matches the series oracle to 1e-10") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = 30.0 * i / 999.0;
    worst = std::max(worst, std::abs(bessel_j0(x) - oracle::j0(x)));
  }
  CHECK(worst <= 1e-10);
  // the asymptotic branch beyond the grid
  for (double x = 30.0; x <= 100.0; x += 0.37) REQUIRE(std::abs(bessel_j0(x) - oracle::j0(x)) <= 1e-10);
}

TEST_CASE("correlation coefficient") {
  CsiParams csi;
  csi.mode = CsiMode::Delayed;
  csi.f_c = 2e9;
  csi.v = 0.0;
  csi.t_s = 0.01;
  CHECK(correlation_coefficient(csi).rho == 1.0);

  csi.v = 3.0 / 3.6;
  const double x = 2.0 * std::numbers::pi * (2e9 * csi.v / kSpeedOfLight) * 0.01;
  const auto c = correlation_coefficient(csi);
  CHECK(c.rho == Approx(oracle::j0(x)).margin(1e-12));
  CHECK_FALSE(c.clamped);
  // the quoted 0.96977 takes c = 3e8 (argument 0.34907)
  auto rounded = csi;
  rounded.c = 3e8;
  CHECK(correlation_coefficient(rounded).rho == Approx(0.96977).margin(1e-5));
  CHECK(c.rho == Approx(0.969729).margin(1e-6));

  csi.mode = CsiMode::Perfect;
  csi.f_c = 60e9;
  CHECK(correlation_coefficient(csi).rho == 1.0);

  // past the first zero of J0 the coefficient is clamped to 0
  csi.mode = CsiMode::Delayed;
  csi.f_c = 2e9;
  csi.v = 3.0 / (2.0 * std::numbers::pi * 0.01) * kSpeedOfLight / 2e9; // argument 3
  const auto neg = correlation_coefficient(csi);
  CHECK(neg.rho == 0.0);
  CHECK(neg.clamped);
}

TEST_CASE("perfect CSI leaves the estimate equal to the channel") {
  auto ch = grid_channels(20, 30, 1.0, 4);
  CHECK(ch.h_true == ch.h_est);
}

TEST_CASE("estimates do not depend on rho") {
  auto a = grid_channels(10, 10, 1.0, 8);
  auto b = grid_channels(10, 10, 0.7, 8);
  CHECK(a.h_est == b.h_est);
  CHECK(a.h_true != b.h_true);
}

TEST_CASE("Gauss-Markov aging statistics") {
  for (double rho : {0.0, 0.5, 0.9, 1.0}) {
    auto ch = grid_channels(100, 1000, rho, 21 + static_cast<std::uint64_t>(rho * 10)); // 1e5 pairs
    const double n = static_cast<double>(ch.h_true.size());
    std::complex<double> cross = 0.0;
    double var_true = 0.0, var_est = 0.0, var_re = 0.0;
    double fourth = 0.0;
    for (std::size_t i = 0; i < ch.h_true.size(); ++i) {
      cross += ch.h_true[i] * std::conj(ch.h_est[i]);
      var_true += std::norm(ch.h_true[i]);
      var_est += std::norm(ch.h_est[i]);
      var_re += ch.h_true[i].real() * ch.h_true[i].real();
      fourth += std::norm(ch.h_true[i]) * std::norm(ch.h_true[i]);
    }
    cross /= n;
    var_true /= n;
    var_est /= n;
    var_re /= n;
    INFO("rho = " << rho);
    CHECK(std::abs(cross.real() - rho) < 0.01);
    CHECK(std::abs(cross.imag()) < 0.01);
    // |h|^2 ~ Exp(1): variance of the sample mean is 1/n
    const double se = std::sqrt((fourth / n - var_true * var_true) / n);
    CHECK(std::abs(var_true - 1.0) < 3.0 * se);
    CHECK(std::abs(var_est - 1.0) < 3.0 / std::sqrt(n)); // Var(Exp(1)) = 1
    CHECK(std::abs(var_re - 0.5) < 0.01);
  }
}

TEST_CASE("realized path loss matches the law on the torus") {
  auto ch = grid_channels(5, 7, 1.0, 31);
  // regenerate the same positions to check
  std::mt19937_64 pos_rng(31);
  std::uniform_real_distribution<double> pos(0.0, 500.0);
  std::vector<Point> users(5), bss(7);
  for (auto& p : users) p = {pos(pos_rng), pos(pos_rng)};
  for (auto& p : bss) p = {pos(pos_rng), pos(pos_rng)};
  PathLossLaw law(params(2, 4, 1, 70));
  TorusMetric m{500.0};
  for (std::size_t u = 0; u < 5; ++u)
    for (std::size_t b = 0; b < 7; ++b)
      REQUIRE(ch.loss[ch.pair(u, b)] == Approx(law(m.distance(users[u], bss[b]))).epsilon(1e-12));
  CHECK(ch.column_of(3) == 3);
}
