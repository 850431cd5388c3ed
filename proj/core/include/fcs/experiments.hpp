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

// Pulse-sequence presets and the measurement pipeline. A run prepares basis
// states with ideal flips, applies the modulation window for each T on the
// grid and reads out the selected qubits. Qubits are named by device id; the
// register order is the order of the drives.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fcs/device.hpp"
#include "fcs/dynamics.hpp"
#include "fcs/spectrum.hpp"

namespace fcs {

struct PrepFlip {
  int qubit = 0;
  int level = 1;
};

struct PulseSequence {
  std::vector<PrepFlip> prep;     // unlisted qubits start in |0>
  std::vector<DriveSpec> drives;  // one per register qubit, delta = 0 when idle
  double duration_us = 0.0;       // T grid runs from 0 to duration_us
  std::vector<int> readout;       // empty: every register qubit
};

enum class Noise { kNone, kLindblad };

struct RunOptions {
  Noise noise = Noise::kNone;
  std::optional<int> shots;  // nullopt: exact probabilities
  std::uint64_t seed = 20260101;
  double step_us = 0.004;
  int levels = 0;  // 0 keeps the device's own truncation
  // Unitary runs use the exactly unitary Magnus stepper; Lindblad runs
  // always step with RK4 at the same dt.
  IntegratorConfig integrator{IntegratorConfig::Method::kPiecewiseExponential};
};

inline constexpr int kDefaultShots = 3000;

// Populations over the readout qubits, labelled p_<bits> with level >= 1
// reading as 1. With shots, every T point is sampled from the confusion-
// mapped distribution and corrected back; metadata records the largest
// clipped negative.
TimeSeries run_sequence(const DeviceModel& device, const PulseSequence& seq, const RunOptions& opts = {});

// Mean over `repeats` runs with seeds seed, seed+1, ...; stddev filled with
// the sample standard deviation.
TimeSeries run_repeated(const DeviceModel& device, const PulseSequence& seq, const RunOptions& opts, int repeats);

struct ScanSettings {
  int qubit_a = 0;
  int qubit_b = 1;
  double omega0_mhz = 4990.0;
  double nu_mhz = 100.0;
  double delta_mhz = 138.0;  // scan_dphi only
  double t_end_us = 1.0;
  RunOptions run;
  bool keep_traces = false;
};

struct ScanResult {
  std::string axis_name;  // dphi_rad or delta_mhz
  std::vector<double> axis;
  std::vector<double> geff_mhz;
  std::vector<double> analytic_mhz;  // |g J_0(...)|
  std::vector<TimeSeries> traces;    // filled when keep_traces
  std::map<std::string, std::string> metadata;

  double rms_error() const;
};

// Both qubits modulated with (delta, nu), phases 0 and dphi; prep |01>.
ScanResult scan_dphi(const DeviceModel& device, const ScanSettings& settings, const std::vector<double>& dphi_grid);
// qubit_a modulated with amplitude delta from the grid, qubit_b static at omega0.
ScanResult scan_delta_single(const DeviceModel& device, const ScanSettings& settings,
                             const std::vector<double>& delta_grid);

// Apex of the V formed by straight-line fits to the resolved flanks on each
// side of the smallest point of |g_eff| in [lo, hi]. Throws NumericalGuardError
// when either flank has fewer than two resolved points.
double locate_decoupling_zero(const ScanResult& scan, double lo, double hi);

enum class Excitation { kSingle, kDouble };

inline RunOptions chiral_run_options() {
  RunOptions o;
  o.step_us = 0.002;
  return o;
}

struct ChiralSettings {
  Excitation excitation = Excitation::kSingle;
  int levels = 2;
  double t_end_us = 0.8;
  RunOptions run = chiral_run_options();
  std::optional<std::vector<DriveSpec>> drives;  // defaults to chiral_drives()
};

// Drive presets: single excitation uses delta {138, 140, 136} MHz and the
// double excitation {135, 137, 133} MHz; both share
// phi = {-0.1, 2pi/3, 4pi/3 + 0.1}, offsets {0, 0.7, 0} MHz, nu = 100 MHz and
// omega0 = 4990 MHz, on qubits 0, 1, 2.
std::vector<DriveSpec> chiral_drives(Excitation excitation, double omega0_mhz = 4990.0, double nu_mhz = 100.0);

// Single: prep |001>. Double: prep |011>; with levels = 2 the run carries
// metadata warning=two_level_double.
TimeSeries chiral_experiment(const DeviceModel& device, const ChiralSettings& settings);

struct ChiralAnalysis {
  std::vector<std::string> route;  // initial label first
  std::vector<double> first_max_time;
  std::vector<double> first_max_value;
  double return_time = -1.0;  // first return maximum of route[0]; < 0 if none
  double return_value = 0.0;
  bool cyclic = false;  // maxima in route order, then the return

  double first_step_time() const { return first_max_time.size() > 1 ? first_max_time[1] : -1.0; }
};

inline constexpr double kMaximumThreshold = 0.3;
inline constexpr double kLobeClose = 0.2;

// Single excitation route p_001 -> p_100 -> p_010; double p_011 -> p_101 -> p_110.
std::vector<std::string> chiral_route(Excitation excitation);
// Maxima are read off the trace averaged over `smoothing_us` (one drive
// period removes the micromotion); 0 keeps the raw samples.
ChiralAnalysis analyze_chiral(const TimeSeries& series, const std::vector<std::string>& route,
                              double smoothing_us = 0.01);

// Worker count for scans: FCS_THREADS when set and positive, else hardware.
int scan_threads();
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fcs
