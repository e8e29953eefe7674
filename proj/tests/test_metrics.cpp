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
#include <numbers>
#include <random>
#include <vector>

#include "udn/metrics.hpp"

using namespace udn;
using Catch::Approx;

namespace {

SimulationConfig defaults(double theta = 0.5, double p_t = 1.0) {
  SimulationConfig c;
  c.power.theta = theta;
  c.power.p_t = p_t;
  return validated(c);
}

// One drop summary from per-user SIR triples.
DropSummary drop_of(const std::vector<double>& single, const std::vector<double>& nj, const std::vector<double>& cj) {
  DropSummary d;
  d.users = d.total_users = single.size();
  d.active_single = single.size();
  d.active_coop = 5 * single.size();
  for (std::size_t i = 0; i < single.size(); ++i) {
    d.sum_se_single += spectral_efficiency(single[i]);
    d.sum_se_nj += spectral_efficiency(nj[i]);
    d.sum_se_cj += spectral_efficiency(cj[i]);
  }
  return d;
}

} // namespace

TEST_CASE("spectral efficiency") {
  CHECK(spectral_efficiency(0.0) == 0.0);
  CHECK(spectral_efficiency(1.0) == 1.0);
  CHECK(spectral_efficiency(255.0) == Approx(8.0).epsilon(1e-15));
}

TEST_CASE("SE gain") {
  CHECK(se_gain(2.0, 2.0) == 0.0);
  CHECK(se_gain(1.196 * 3.0, 3.0) == Approx(0.196).epsilon(1e-12));
  CHECK(se_gain(1.23 * 2.5, 2.5) == Approx(0.23).epsilon(1e-12));
  CHECK_THROWS_AS(se_gain(1.0, 0.0), UndefinedGain);
}

TEST_CASE("area power") {
  auto full = defaults(1.0);
  CHECK(area_power(full, 5).literal == Approx(full.lambda_b).epsilon(1e-15));
  CHECK(area_power(full, 2.3).realized == Approx(full.lambda_b).epsilon(1e-15));

  auto c = defaults(0.1);
  CHECK(area_power(c, 5).literal * kPerKm2 == Approx(1300.0).epsilon(1e-12));
  CHECK(area_power_formula(c, 1) * kPerKm2 == Approx(200.0 + 0.1 * 3800.0).epsilon(1e-12));
  CHECK(area_power(c, 4.2).realized * kPerKm2 == Approx(840.0 + 0.1 * 3160.0).epsilon(1e-12));
  CHECK_THROWS_AS(area_power_formula(c, 25.0), std::logic_error);
  CHECK(area_power_literal(c, 25.0) * kPerKm2 == Approx(5000.0 - 0.1 * 1000.0).epsilon(1e-12));
}

TEST_CASE("energy efficiency") {
  auto a = defaults(0.5, 1.0), b = defaults(0.5, 2.0);
  const double ea = energy_efficiency(3.0, a.lambda_u, area_power_formula(a, 5));
  const double eb = energy_efficiency(3.0, b.lambda_u, area_power_formula(b, 5));
  CHECK(eb == Approx(ea / 2.0).epsilon(1e-15));
  CHECK_THROWS_AS(energy_efficiency(1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE("aggregate pools users across drops") {
  auto c = defaults();
  SECTION("identical SIRs") {
    std::vector<DropSummary> drops;
    for (int i = 0; i < 50; ++i) drops.push_back(drop_of({15, 15, 15}, {7, 7, 7}, {31, 31, 31}));
    auto m = aggregate(drops, c);
    CHECK(m.se_single.mean == Approx(4.0).epsilon(1e-14));
    CHECK(m.se_single.stderr_ == Approx(0.0).margin(1e-12));
    CHECK(m.se_cj.mean == Approx(5.0).epsilon(1e-14));
    CHECK(m.gain_cj.mean == Approx(0.25).epsilon(1e-13));
    CHECK(m.gain_nj.mean == Approx(-0.25).epsilon(1e-13));
    CHECK(m.users == 150);
  }
  SECTION("batch means 1 and 2 pool to 1.5, user-weighted otherwise") {
    std::vector<DropSummary> equal = {drop_of({1, 1}, {1, 1}, {1, 1}), drop_of({3, 3}, {3, 3}, {3, 3})};
    CHECK(aggregate(equal, c).se_single.mean == Approx(1.5));
    std::vector<DropSummary> weighted = {drop_of({1}, {1}, {1}), drop_of({3, 3, 3}, {3, 3, 3}, {3, 3, 3})};
    CHECK(aggregate(weighted, c).se_single.mean == Approx((1.0 + 6.0) / 4.0));
  }
  SECTION("no eligible users") {
    std::vector<DropSummary> none(3);
    CHECK_THROWS_AS(aggregate(none, c), std::runtime_error);
  }
}

TEST_CASE("aggregate matches a quadrature oracle for lognormal SIRs") {
  // SIR = exp(X), X ~ N(mu, sigma^2); E[log2(1 + SIR)] by trapezoid rule
  const double mu = 1.5, sigma = 1.2;
  double expected = 0.0;
  const int steps = 200000;
  const double lo = mu - 12 * sigma, hi = mu + 12 * sigma, h = (hi - lo) / steps;
  for (int i = 0; i <= steps; ++i) {
    const double x = lo + h * i;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    const double pdf = std::exp(-0.5 * (x - mu) * (x - mu) / (sigma * sigma)) / (sigma * std::sqrt(2 * std::numbers::pi));
    expected += w * h * pdf * std::log2(1.0 + std::exp(x));
  }
  std::mt19937_64 rng(99);
  std::normal_distribution<double> x(mu, sigma);
  std::vector<DropSummary> drops;
  for (int d = 0; d < 400; ++d) {
    std::vector<double> s(25);
    for (auto& v : s) v = std::exp(x(rng));
    drops.push_back(drop_of(s, s, s));
  }
  auto m = aggregate(drops, defaults());
  CHECK(std::abs(m.se_single.mean - expected) < 3.0 * m.se_single.stderr_);
  CHECK(m.se_single.stderr_ > 0.0);
}

TEST_CASE("EE gain equals the SE ratio when sleeping costs full power") {
  auto c = defaults(1.0);
  std::mt19937_64 rng(3);
  std::exponential_distribution<double> e(0.01);
  std::vector<DropSummary> drops;
  for (int d = 0; d < 20; ++d) {
    std::vector<double> a(10), b(10), cj(10);
    for (int i = 0; i < 10; ++i) {
      a[i] = e(rng);
      b[i] = e(rng);
      cj[i] = e(rng);
    }
    drops.push_back(drop_of(a, b, cj));
  }
  auto m = aggregate(drops, c);
  CHECK(std::abs(m.ee_gain.mean - m.se_cj.mean / m.se_single.mean) <= 1e-12 * m.ee_gain.mean);
  CHECK(m.p_area_single == Approx(m.p_area_coop).epsilon(1e-14));
}

TEST_CASE("aggregate properties") {
  std::mt19937_64 rng(8);
  std::exponential_distribution<double> e(0.02);
  std::uniform_real_distribution<double> bump(0.0, 5.0);
  auto c = defaults();
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<DropSummary> lo, hi;
    for (int d = 0; d < 5; ++d) {
      std::vector<double> a(8), b(8);
      for (int i = 0; i < 8; ++i) {
        a[i] = e(rng);
        b[i] = a[i] + bump(rng);
      }
      lo.push_back(drop_of(a, a, b));
      hi.push_back(drop_of(b, b, a));
    }
    auto ml = aggregate(lo, c), mh = aggregate(hi, c);
    // monotone SE map
    REQUIRE(ml.se_single.mean <= mh.se_single.mean);
    // sign consistency and the exact gain identity
    REQUIRE((ml.gain_cj.mean > 0) == (ml.se_cj.mean > ml.se_single.mean));
    REQUIRE((mh.gain_cj.mean > 0) == (mh.se_cj.mean > mh.se_single.mean));
    REQUIRE(ml.gain_cj.mean == (ml.se_cj.mean - ml.se_single.mean) / ml.se_single.mean);
    REQUIRE(ml.se_single.stderr_ >= 0.0);
    REQUIRE(ml.gain_cj.stderr_ >= 0.0);
    REQUIRE(ml.ee_single >= 0.0);
  }
}
