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

#pragma once

#include <limits>
#include <string>

#include "fcs/dynamics.hpp"

namespace fcs {

struct ExtractOptions {
  std::string label = "p_01";
  // Peaks above this frequency (MHz) are ignored, e.g. drive micromotion.
  double max_frequency_mhz = std::numeric_limits<double>::infinity();
  // Smallest coupling the grid has to resolve; sets the minimum span.
  double min_geff_mhz = 1.0;
  int padding = 16;
};

struct SpectrumPeak {
  double frequency_mhz = 0.0;  // refined peak of the population trace
  double magnitude = 0.0;
  double noise_floor = 0.0;
  bool resolved = false;
};

// Dominant oscillation frequency of a uniformly sampled trace.
SpectrumPeak dominant_frequency(const std::vector<double>& times, const std::vector<double>& values,
                                const ExtractOptions& opts = {});

// |g_eff| in MHz: half the dominant frequency of the |01>-population trace,
// or 0 when the peak does not clear three times the median spectral
// magnitude, has an amplitude under a quarter of the trace's sqrt(2) * rms
// swing, or sits below one cycle per span. Rejects fewer than 64 points, a
// non-uniform grid and spans shorter than 1.5 / (2 min_geff).
double extract_geff(const TimeSeries& series, const ExtractOptions& opts = {});

}  // namespace fcs
