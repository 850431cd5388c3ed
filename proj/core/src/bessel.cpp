// Copyright 2026 The fcs Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "fcs/errors.hpp"
#include "fcs/floquet.hpp"

namespace fcs {

namespace {

// Ascending series; only used for |x| < 1 where its terms shrink by at
// least 4x per step and nothing cancels.
double small_argument_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;
  double sum = term;
  const double q = -half * half;
  for (int m = 1; m < 40; ++m) {
    term *= q / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

// Miller's downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, started well
// above max(n, x). The unnormalized sequence is scaled by
// J_0^2 + 2 sum J_k^2 = 1, whose terms are all positive; the sign of the scale
// comes from J_0 + 2 sum J_2k = 1.
double bessel_j(int n, double x) {
  if (std::abs(n) > kMaxBesselOrder || !(std::abs(x) <= 50.0)) throw InvalidArgument("bessel_j: need |n| <= 64 and |x| <= 50");
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2 != 0) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2 != 0) sign = -sign;
  }
  if (x == 0.0) return n == 0 ? sign : 0.0;
  if (x < 1.0) return sign * small_argument_series(n, x);

  const int top = std::max(n, static_cast<int>(x));
  int start = top + 20 + static_cast<int>(std::sqrt(40.0 * top));
  start += start % 2;
  std::vector<double> j(static_cast<std::size_t>(start) + 2, 0.0);
  j[static_cast<std::size_t>(start)] = 1.0;
  for (int k = start; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    j[ku - 1] = (2.0 * k / x) * j[ku] - j[ku + 1];
    if (std::abs(j[ku - 1]) > 1e140) {
      for (std::size_t i = ku - 1; i <= static_cast<std::size_t>(start); ++i) j[i] *= 1e-140;
    }
  }
  double sum_sq = 0.0;
  double even_sum = j[0];
  for (int k = 1; k <= start; ++k) {
    const double v = j[static_cast<std::size_t>(k)];
    sum_sq += v * v;
    if (k % 2 == 0) even_sum += 2.0 * v;
  }
  const double scale = std::copysign(std::sqrt(j[0] * j[0] + 2.0 * sum_sq), even_sum);
  return sign * j[static_cast<std::size_t>(n)] / scale;
}

}  // namespace fcs
