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

// Tune-up search. Step A finds the single-modulation decoupling amplitude on
// a pair, step B the relative phase that decouples the pair when both are
// modulated at delta_A / sqrt3, and step C fine-tunes (delta_j, phi_j,
// offset_j) of the three-qubit loop for the largest chiral maxima.

#include <vector>

#include "fcs/device.hpp"
#include "fcs/experiments.hpp"

namespace fcs {

struct CalibrationOptions {
  int qubit_a = 0;
  int qubit_b = 1;
  double omega0_mhz = 4990.0;
  double nu_mhz = 100.0;
  double t_end_us = 1.0;
  double step_us = 0.004;
  bool fine_tune = true;  // step C; needs qubits 0, 1, 2
  int fine_tune_rounds = 3;
  IntegratorConfig integrator{IntegratorConfig::Method::kPiecewiseExponential};
};

struct CalibrationResult {
  double delta_single_mhz = 0.0;  // step A
  double delta_pair_mhz = 0.0;    // delta_A / sqrt3
  double dphi_rad = 0.0;          // step B
  std::vector<DriveSpec> drives;  // step C output (or the symmetric start)
  double objective_start = 0.0;   // mean chiral first maximum before step C
  double objective_final = 0.0;
  int evaluations = 0;
};

// Throws NumericalGuardError when a step's minimum lands on its bracket edge.
CalibrationResult calibrate(const DeviceModel& device, const CalibrationOptions& opts = {});

// Mean of the three chiral first maxima (0 for a missing maximum); the step C objective.
double chiral_objective(const DeviceModel& device, const std::vector<DriveSpec>& drives, double t_end_us,
                        double step_us, const IntegratorConfig& integrator);

}  // namespace fcs
