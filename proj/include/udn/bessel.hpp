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
#include <numbers>

namespace udn {

namespace detail {

// Ascending series sum_k (-x^2/4)^k / (k!)^2 in extended precision. The
// largest term grows like exp(x)/x, so the cancellation error stays below
// 1e-12 up to the switch-over point.
inline double bessel_j0_series(double x) {
  const long double q = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * k);
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) && std::fabs(term) < 1e-22L) break;
  }
  return static_cast<double>(sum);
}

// Hankel asymptotic expansion, truncated at the smallest term.
inline double bessel_j0_asymptotic(double x) {
  double p = 0.0, q = 0.0;
  double a = 1.0; // a_k / x^k
  double prev = INFINITY;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) a *= (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
    if (std::abs(a) >= prev) break;
    prev = std::abs(a);
    switch (k % 4) {
      case 0: p += a; break;
      case 1: q -= a; break;
      case 2: p -= a; break;
      case 3: q += a; break;
    }
    if (a < 1e-18) break;
  }
  const double phase = x - std::numbers::pi / 4.0;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(phase) - q * std::sin(phase));
}

} // namespace detail

/// Bessel function of the first kind, order zero. Even in x.
inline double bessel_j0(double x) {
  x = std::abs(x);
  if (x < 20.0) return detail::bessel_j0_series(x);
  return detail::bessel_j0_asymptotic(x);
}

} // namespace udn
