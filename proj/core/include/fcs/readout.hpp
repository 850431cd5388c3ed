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

// Readout error model: each qubit has a 2x2 column-stochastic confusion
// matrix [[F0, 1 - F1], [1 - F0, F1]] acting on (P0, P1); the register map is
// their tensor product (site 0 is the most significant bit, as in labels).

#include <span>
#include <vector>

#include "fcs/device.hpp"
#include "fcs/qcore.hpp"

namespace fcs {

class ConfusionModel {
 public:
  struct Fidelity {
    double f0 = 1.0;
    double f1 = 1.0;
  };

  explicit ConfusionModel(std::vector<Fidelity> per_qubit);
  static ConfusionModel perfect(int num_qubits);
  static ConfusionModel from_device(const DeviceModel& device, std::span<const int> qubit_ids);

  int num_qubits() const { return static_cast<int>(fidelities_.size()); }
  const std::vector<Fidelity>& fidelities() const { return fidelities_; }
  Eigen::Matrix2d matrix(int qubit) const;
  // Explicit 2^n x 2^n map; for tests and small registers.
  Eigen::MatrixXd full_matrix() const;
  bool invertible() const;

 private:
  std::vector<Fidelity> fidelities_;
};

struct CorrectionResult {
  RealVector probabilities;
  double most_negative = 0.0;  // before clipping
  bool clipped = false;
};

// Throws InvalidArgument on negative entries or a sum away from 1 by > 1e-9.
RealVector apply_readout(const RealVector& probs, const ConfusionModel& model);

// Inverse map, then entries in (-0.05, 0) clipped to 0 and renormalized.
// Throws NumericalGuardError below -0.05 and InvalidArgument when the model
// is not invertible.
CorrectionResult correct_readout(const RealVector& measured, const ConfusionModel& model);

inline constexpr double kClipThreshold = -0.05;

}  // namespace fcs
