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

#include "fcs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fcs/errors.hpp"

namespace fcs {

SpectrumPeak dominant_frequency(const std::vector<double>& times, const std::vector<double>& values,
                                const ExtractOptions& opts) {
  const std::size_t n = times.size();
  if (values.size() != n) throw InvalidArgument("spectrum: times and values differ in length");
  if (n < 64) throw InvalidArgument("spectrum: need at least 64 samples, got " + std::to_string(n));
  const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
  if (!(dt > 0.0)) throw InvalidArgument("spectrum: time grid must increase");
  for (std::size_t k = 1; k < n; ++k) {
    if (std::abs(times[k] - times[k - 1] - dt) > 1e-6 * dt) throw InvalidArgument("spectrum: time grid is not uniform");
  }
  const double span = times.back() - times.front();
  const double min_span = 1.5 / (2.0 * opts.min_geff_mhz);
  if (span < min_span * (1.0 - 1e-9)) {
    std::ostringstream msg;
    msg << "spectrum: grid spans " << span << " us; resolving g_eff = " << opts.min_geff_mhz
        << " MHz needs at least " << min_span << " us";
    throw InvalidArgument(msg.str());
  }

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double variance = 0.0;
  for (double v : values) variance += (v - mean) * (v - mean);
  variance /= static_cast<double>(n);

  SpectrumPeak peak;
  if (variance < 1e-12) return peak;

  // Zero-padded DFT, evaluated directly: the traces are a few hundred points.
  const std::size_t padded = n * static_cast<std::size_t>(std::max(1, opts.padding));
  const std::size_t half = padded / 2;
  const double df = 1.0 / (static_cast<double>(padded) * dt);
  std::vector<double> mag(half + 1);
  for (std::size_t k = 0; k <= half; ++k) {
    const double w = -kTwoPi * static_cast<double>(k) / static_cast<double>(padded);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double a = w * static_cast<double>(m);
      const double v = values[m] - mean;
      re += v * std::cos(a);
      im += v * std::sin(a);
    }
    mag[k] = std::hypot(re, im);
  }

  std::vector<double> sorted(mag.begin() + 1, mag.end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
  peak.noise_floor = sorted[sorted.size() / 2];

  const std::size_t k_limit = std::min<std::size_t>(
      half, std::isfinite(opts.max_frequency_mhz) ? static_cast<std::size_t>(opts.max_frequency_mhz / df) : half);
  // The global maximum of the band must be an interior peak: at the cutoff it
  // is the leakage tail of a faster component, below one cycle per span a
  // drift.
  std::size_t best = 1;
  for (std::size_t k = 2; k <= k_limit; ++k) {
    if (mag[k] > mag[best]) best = k;
  }
  if (k_limit < 2 || best == k_limit) return peak;

  double offset = 0.0;
  if (best < half) {
    const double a = std::log(std::max(mag[best - 1], 1e-300));
    const double b = std::log(std::max(mag[best], 1e-300));
    const double c = std::log(std::max(mag[best + 1], 1e-300));
    const double denom = a - 2.0 * b + c;
    if (denom < 0.0) offset = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
  }
  peak.frequency_mhz = (static_cast<double>(best) + offset) * df;
  peak.magnitude = mag[best];
  // A sinusoid of amplitude A peaks at N A / 2. Sidelobes of a strong
  // component outside the band clear the median floor easily but carry a
  // tiny fraction of the trace's own swing.
  const double amplitude = 2.0 * peak.magnitude / static_cast<double>(n);
  const double swing = std::sqrt(2.0 * variance);
  peak.resolved = peak.magnitude > 3.0 * peak.noise_floor && amplitude >= 0.25 * swing &&
                  peak.frequency_mhz >= 1.0 / span;
  return peak;
}

double extract_geff(const TimeSeries& series, const ExtractOptions& opts) {
  const SpectrumPeak peak = dominant_frequency(series.times, series.trace(opts.label), opts);
  return peak.resolved ? 0.5 * peak.frequency_mhz : 0.0;
}

}  // namespace fcs
