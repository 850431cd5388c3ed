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


#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "fcs/device.hpp"
#include "fcs/errors.hpp"
#include "fcs/readout.hpp"

using namespace fcs;

namespace {

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

RealVector random_distribution(int size, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  RealVector p(size);
  for (int i = 0; i < size; ++i) p(i) = e(rng);
  return p / p.sum();
}

const std::vector<int> kIds{0, 1, 2};

}  // namespace

TEST_CASE("perfect readout is the identity") {
  std::mt19937_64 rng(1);
  const RealVector p = random_distribution(8, rng);
  CHECK((apply_readout(p, ConfusionModel::perfect(3)) - p).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("single-qubit excited-state fidelity") {
  const ConfusionModel m({{0.984, 0.939}});
  RealVector p(2);
  p << 0.0, 1.0;
  const RealVector out = apply_readout(p, m);
  CHECK(out(1) == doctest::Approx(0.939).epsilon(1e-15));
  CHECK(out(0) == doctest::Approx(0.061).epsilon(1e-13));
  CHECK(m.matrix(0).colwise().sum().isApproxToConstant(1.0, 1e-15));
}

TEST_CASE("three-qubit confusion matches an explicit tensor product") {
  const ConfusionModel m = ConfusionModel::from_device(reference_device(), kIds);
  CHECK(m.matrix(1)(0, 0) == 0.932);
  CHECK(m.matrix(2)(1, 1) == 0.938);
  CHECK(m.matrix(0)(0, 1) == doctest::Approx(1.0 - 0.939));
  const Eigen::MatrixXd oracle = kron(m.matrix(0), kron(m.matrix(1), m.matrix(2)));
  CHECK((m.full_matrix() - oracle).cwiseAbs().maxCoeff() < 1e-15);
  RealVector p = RealVector::Zero(8);
  p(1) = 1.0;  // |001>
  CHECK((apply_readout(p, m) - oracle * p).cwiseAbs().maxCoeff() < 1e-15);
  std::mt19937_64 rng(2);
  const RealVector q = random_distribution(8, rng);
  CHECK((apply_readout(q, m) - oracle * q).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(oracle.determinant() > 0.1);
  CHECK(m.invertible());
}

TEST_CASE("correction inverts the confusion map") {
  const ConfusionModel m = ConfusionModel::from_device(reference_device(), kIds);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const RealVector p = random_distribution(8, rng);
    const CorrectionResult r = correct_readout(apply_readout(p, m), m);
    CHECK((r.probabilities - p).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(!r.clipped);
  }
}

TEST_CASE("uniform distribution is a fixed point for symmetric fidelities") {
  const ConfusionModel m({{0.9, 0.9}, {0.95, 0.95}, {0.8, 0.8}});
  const RealVector u = RealVector::Constant(8, 0.125);
  CHECK((apply_readout(u, m) - u).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((correct_readout(u, m).probabilities - u).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("finite-shot data exercises the clipping path") {
  const ConfusionModel m = ConfusionModel::from_device(reference_device(), kIds);
  RealVector truth = RealVector::Zero(8);
  truth(1) = 1.0;
  const RealVector measured = apply_readout(truth, m);
  int clipped = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(seed);
    std::discrete_distribution<int> draw(measured.data(), measured.data() + measured.size());
    RealVector counts = RealVector::Zero(8);
    const int shots = 300;
    for (int s = 0; s < shots; ++s) counts(draw(rng)) += 1.0;
    const CorrectionResult r = correct_readout(counts / shots, m);
    CHECK(r.probabilities.minCoeff() >= 0.0);
    CHECK(std::abs(r.probabilities.sum() - 1.0) < 1e-12);
    CHECK(r.most_negative > kClipThreshold);
    if (r.clipped) {
      ++clipped;
      CHECK(r.most_negative < 0.0);
    }
  }
  CHECK(clipped > 0);
}

TEST_CASE("readout errors") {
  const ConfusionModel m = ConfusionModel::from_device(reference_device(), kIds);
  RealVector bad = RealVector::Constant(8, 0.125);
  bad(0) = -0.01;
  bad(1) += 0.01;
  CHECK_THROWS_AS(apply_readout(bad, m), InvalidArgument);
  CHECK_THROWS_AS(apply_readout(RealVector::Constant(4, 0.25), m), InvalidArgument);
  CHECK_THROWS_AS(apply_readout(RealVector::Constant(8, 0.2), m), InvalidArgument);

  const ConfusionModel coin({{0.5, 0.5}});
  CHECK(!coin.invertible());
  CHECK_THROWS_AS(correct_readout(RealVector::Constant(2, 0.5), coin), InvalidArgument);

  // far outside what the confusion model can produce
  const ConfusionModel poor({{0.8, 0.8}});
  RealVector edge(2);
  edge << 1.0, 0.0;
  CHECK_THROWS_AS(correct_readout(edge, poor), NumericalGuardError);
  CHECK_THROWS_AS(ConfusionModel({{1.2, 0.9}}), InvalidArgument);
}
