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

#include "fcs/calibrate.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <utility>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

// (|g_eff|, mean transferred population): |g_eff| decides, and inside the
// unresolved dip around a zero the residual transfer breaks the tie.
using Score = std::pair<double, double>;

Score pair_score(const DeviceModel& device, const std::vector<DriveSpec>& drives, int prepared,
                 const CalibrationOptions& opts) {
  PulseSequence seq;
  seq.drives = drives;
  seq.prep = {{prepared, 1}};
  seq.duration_us = opts.t_end_us;
  seq.readout = {drives[0].qubit, drives[1].qubit};
  RunOptions run;
  run.levels = 2;
  run.step_us = opts.step_us;
  run.integrator = opts.integrator;
  const TimeSeries trace = run_sequence(device, seq, run);
  ExtractOptions extract;
  extract.max_frequency_mhz = 0.4 * opts.nu_mhz;
  const double geff = extract_geff(trace, extract);
  double transfer = 0.0;
  for (double p : trace.trace("p_01")) transfer += 1.0 - p;
  return {geff, transfer / static_cast<double>(trace.times.size())};
}

double golden_section(const std::function<Score(double)>& f, double lo, double hi, double tol, int& evaluations,
                      const char* what) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  Score fc = f(c);
  Score fd = f(d);
  evaluations += 2;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  const double x = 0.5 * (a + b);
  const double margin = 0.01 * (hi - lo);
  if (x - lo < margin || hi - x < margin)
    throw NumericalGuardError(std::string("calibrate: ") + what + " minimum sits on the bracket edge; no decoupling point inside [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return x;
}

}  // namespace

double chiral_objective(const DeviceModel& device, const std::vector<DriveSpec>& drives, double t_end_us,
                        double step_us, const IntegratorConfig& integrator) {
  ChiralSettings settings;
  settings.excitation = Excitation::kSingle;
  settings.levels = 2;
  settings.t_end_us = t_end_us;
  settings.run.step_us = step_us;
  settings.run.integrator = integrator;
  settings.drives = drives;
  const TimeSeries trace = chiral_experiment(device, settings);
  const ChiralAnalysis a = analyze_chiral(trace, chiral_route(Excitation::kSingle));
  return (a.first_max_value[1] + a.first_max_value[2] + a.return_value) / 3.0;
}

CalibrationResult calibrate(const DeviceModel& device, const CalibrationOptions& opts) {
  if (!(opts.nu_mhz > 0.0)) throw InvalidArgument("calibrate: nu must be positive");
  if (!device.couplings.has(opts.qubit_a, opts.qubit_b))
    throw InvalidArgument("calibrate: the pair must be coupled");
  CalibrationResult result;
  const double nu = opts.nu_mhz;
  const double w0 = opts.omega0_mhz;

  // Step A: modulate qubit_a only.
  result.delta_single_mhz = golden_section(
      [&](double delta) {
        return pair_score(device, {{opts.qubit_a, w0, delta, nu, 0.0}, {opts.qubit_b, w0, 0.0, nu, 0.0}},
                          opts.qubit_b, opts);
      },
      1.8 * nu, 3.0 * nu, 0.02, result.evaluations, "single-modulation");

  // Step B: both modulated; sqrt(3) = 2 sin(pi/3) puts the zero at 2pi/3.
  result.delta_pair_mhz = result.delta_single_mhz / std::sqrt(3.0);
  result.dphi_rad = golden_section(
      [&](double dphi) {
        return pair_score(device,
                          {{opts.qubit_a, w0, result.delta_pair_mhz, nu, 0.0},
                           {opts.qubit_b, w0, result.delta_pair_mhz, nu, dphi}},
                          opts.qubit_b, opts);
      },
      0.4 * kPi, 0.9 * kPi, 2e-4, result.evaluations, "relative-phase");

  for (int j = 0; j < 3; ++j) {
    result.drives.push_back(DriveSpec{j, w0, result.delta_pair_mhz, nu, (j + 1) * result.dphi_rad}.normalized());
  }
  if (!opts.fine_tune) return result;
  for (int j = 0; j < 3; ++j) {
    if (!device.has_qubit(j)) throw InvalidArgument("calibrate: fine-tuning needs qubits 0, 1 and 2");
  }

  // Step C: coordinate search with shrinking steps.
  constexpr double kChiralEnd = 0.8;
  constexpr double kChiralStep = 0.002;
  auto objective = [&](const std::vector<DriveSpec>& d) {
    ++result.evaluations;
    return chiral_objective(device, d, kChiralEnd, kChiralStep, opts.integrator);
  };
  std::vector<DriveSpec> best = result.drives;
  double best_value = objective(best);
  result.objective_start = best_value;
  std::array<double, 3> steps{2.0, 0.08, 0.4};  // delta MHz, phi rad, offset MHz
  for (int round = 0; round < opts.fine_tune_rounds; ++round) {
    for (int param = 0; param < 3; ++param) {
      for (int j = 0; j < 3; ++j) {
        for (double sign : {1.0, -1.0}) {
          std::vector<DriveSpec> trial = best;
          DriveSpec& d = trial[static_cast<std::size_t>(j)];
          const double h = sign * steps[static_cast<std::size_t>(param)];
          if (param == 0) d.delta_mhz += h;
          if (param == 1) d.phi_rad += h;
          if (param == 2) d.omega0_mhz += h;
          d = d.normalized();
          const double v = objective(trial);
          if (v > best_value + 1e-6) {
            best = std::move(trial);
            best_value = v;
            break;
          }
        }
      }
    }
    for (double& s : steps) s *= 0.5;
  }
  result.drives = best;
  result.objective_final = best_value;
  return result;
}

}  // namespace fcs
