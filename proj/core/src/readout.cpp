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

#include "fcs/readout.hpp"

#include <cmath>
#include <string>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

// Applies one 2x2 matrix per qubit to a 2^n vector in place; qubit 0 is the
// most significant bit.
void apply_tensor(RealVector& v, const std::vector<Eigen::Matrix2d>& mats) {
  const int n = static_cast<int>(mats.size());
  const Eigen::Index dim = v.size();
  for (int q = 0; q < n; ++q) {
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
    const Eigen::Matrix2d& m = mats[static_cast<std::size_t>(q)];
    for (Eigen::Index base = 0; base < dim; ++base) {
      if (base & stride) continue;
      const double a = v(base);
      const double b = v(base + stride);
      v(base) = m(0, 0) * a + m(0, 1) * b;
      v(base + stride) = m(1, 0) * a + m(1, 1) * b;
    }
  }
}

void check_size(const RealVector& v, const ConfusionModel& model) {
  if (v.size() != (Eigen::Index{1} << model.num_qubits()))
    throw InvalidArgument("readout: distribution has " + std::to_string(v.size()) + " entries, model expects " +
                          std::to_string(1 << model.num_qubits()));
}

}  // namespace

ConfusionModel::ConfusionModel(std::vector<Fidelity> per_qubit) : fidelities_(std::move(per_qubit)) {
  if (fidelities_.empty() || fidelities_.size() > 16) throw InvalidArgument("ConfusionModel: 1 to 16 qubits");
  for (const auto& f : fidelities_) {
    if (!(f.f0 >= 0.0 && f.f0 <= 1.0 && f.f1 >= 0.0 && f.f1 <= 1.0))
      throw InvalidArgument("ConfusionModel: fidelities must lie in [0, 1]");
  }
}

ConfusionModel ConfusionModel::perfect(int num_qubits) {
  return ConfusionModel(std::vector<Fidelity>(static_cast<std::size_t>(num_qubits)));
}

ConfusionModel ConfusionModel::from_device(const DeviceModel& device, std::span<const int> qubit_ids) {
  std::vector<Fidelity> f;
  for (int id : qubit_ids) {
    const QubitSpec& q = device.qubit(id);
    f.push_back({q.f0, q.f1});
  }
  return ConfusionModel(std::move(f));
}

Eigen::Matrix2d ConfusionModel::matrix(int qubit) const {
  const Fidelity& f = fidelities_.at(static_cast<std::size_t>(qubit));
  Eigen::Matrix2d m;
  m << f.f0, 1.0 - f.f1, 1.0 - f.f0, f.f1;
  return m;
}

Eigen::MatrixXd ConfusionModel::full_matrix() const {
  Eigen::MatrixXd full = Eigen::MatrixXd::Ones(1, 1);
  for (int q = 0; q < num_qubits(); ++q) {
    const Eigen::Matrix2d m = matrix(q);
    Eigen::MatrixXd next(full.rows() * 2, full.cols() * 2);
    for (Eigen::Index r = 0; r < full.rows(); ++r)
      for (Eigen::Index c = 0; c < full.cols(); ++c) next.block<2, 2>(2 * r, 2 * c) = full(r, c) * m;
    full = std::move(next);
  }
  return full;
}

bool ConfusionModel::invertible() const {
  for (int q = 0; q < num_qubits(); ++q) {
    if (std::abs(matrix(q).determinant()) < 1e-6) return false;
  }
  return true;
}

RealVector apply_readout(const RealVector& probs, const ConfusionModel& model) {
  check_size(probs, model);
  if (probs.minCoeff() < 0.0) throw InvalidArgument("apply_readout: negative input probability");
  if (std::abs(probs.sum() - 1.0) > 1e-9) throw InvalidArgument("apply_readout: probabilities must sum to 1");
  std::vector<Eigen::Matrix2d> mats;
  for (int q = 0; q < model.num_qubits(); ++q) mats.push_back(model.matrix(q));
  RealVector out = probs;
  apply_tensor(out, mats);
  return out;
}

CorrectionResult correct_readout(const RealVector& measured, const ConfusionModel& model) {
  check_size(measured, model);
  if (!model.invertible()) throw InvalidArgument("correct_readout: confusion model is not invertible");
  std::vector<Eigen::Matrix2d> inv;
  for (int q = 0; q < model.num_qubits(); ++q) inv.push_back(model.matrix(q).inverse());
  CorrectionResult result;
  result.probabilities = measured;
  apply_tensor(result.probabilities, inv);
  result.most_negative = std::min(0.0, result.probabilities.minCoeff());
  if (result.most_negative < kClipThreshold) {
    throw NumericalGuardError("correct_readout: corrected probability " + std::to_string(result.most_negative) +
                              " is below the clipping threshold; data inconsistent with the confusion model");
  }
  for (Eigen::Index k = 0; k < result.probabilities.size(); ++k) {
    if (result.probabilities(k) < 0.0) {
      result.probabilities(k) = 0.0;
      result.clipped = true;
    }
  }
  const double sum = result.probabilities.sum();
  if (!(sum > 0.0)) throw NumericalGuardError("correct_readout: corrected distribution vanishes");
  result.probabilities /= sum;
  return result;
}

}  // namespace fcs
