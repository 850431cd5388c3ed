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

#include "fcs/errors.hpp"
#include "fcs/qcore.hpp"

using namespace fcs;

namespace {

// Taylor series with scaling and squaring: an oracle independent of the eigensolver.
Matrix taylor_exp(const Matrix& a) {
  int squarings = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const Matrix scaled = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k < 30; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Operator random_hermitian(const HilbertSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(space.dim());
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
  return Operator(space, 0.5 * (m + m.adjoint()));
}

}  // namespace

TEST_CASE("basis labels put the first site in the most significant position") {
  const HilbertSpace q3 = HilbertSpace::qubits(3);
  CHECK(q3.dim() == 8);
  CHECK(q3.index_of("001") == 1);
  CHECK(q3.index_of("100") == 4);
  CHECK(q3.label_of(6) == "110");
  const HilbertSpace t2 = HilbertSpace::qutrits(2);
  CHECK(t2.dim() == 9);
  CHECK(t2.index_of("20") == 6);
  CHECK(t2.label_of(5) == "12");
  for (std::size_t i = 0; i < t2.dim(); ++i) CHECK(t2.index_of(t2.label_of(i)) == i);
  CHECK_THROWS_AS(q3.index_of("002"), InvalidArgument);
  CHECK_THROWS_AS(q3.index_of("01"), InvalidArgument);
  CHECK_THROWS_AS(HilbertSpace({4}), InvalidArgument);
}

TEST_CASE("pauli conventions") {
  const Matrix z = local::pauli_z();
  CHECK(z(0, 0).real() == -1.0);
  CHECK(z(1, 1).real() == 1.0);
  const Matrix x = local::pauli_x();
  const Matrix y = local::pauli_y();
  CHECK((x * x - Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((y * y - Matrix::Identity(2, 2)).norm() < 1e-15);
  CHECK((x * y + y * x).norm() < 1e-15);
  // sigma+ sigma- projects on |1>
  const Matrix n = local::raising(2) * local::lowering(2);
  CHECK(std::abs(n(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(n(0, 0)) < 1e-15);
  CHECK(std::abs(local::raising(3)(2, 1) - std::sqrt(2.0)) < 1e-15);
}

TEST_CASE("expm_hermitian agrees with a Taylor oracle") {
  for (const HilbertSpace& space : {HilbertSpace::qubits(3), HilbertSpace::qutrits(2)}) {
    const Operator h = random_hermitian(space, 7);
    for (double t : {0.0, 0.3, 2.5}) {
      const Matrix oracle = taylor_exp(Complex(0.0, -t) * h.matrix());
      CHECK((expm_hermitian(h, t).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-11);
    }
  }
}

TEST_CASE("HermitianEigen propagator and rejection of non-Hermitian input") {
  const HilbertSpace space = HilbertSpace::qubits(2);
  const Operator h = random_hermitian(space, 3);
  const HermitianEigen eig(h);
  const Operator u = eig.propagator(0.7);
  CHECK((u.matrix() * u.matrix().adjoint() - Matrix::Identity(4, 4)).norm() < 1e-12);
  CHECK(max_abs_diff(u, expm_hermitian(h, 0.7)) < 1e-12);
  Matrix bad = h.matrix();
  bad(0, 1) += Complex(0.5, 0.0);
  CHECK_THROWS_AS(HermitianEigen(Operator(space, bad)), InvalidArgument);
  CHECK_THROWS_AS(expm_hermitian(Operator(space, bad), 1.0), InvalidArgument);
}

TEST_CASE("site_permutation relabels basis states") {
  const HilbertSpace space = HilbertSpace::qubits(3);
  const std::vector<int> perm{1, 2, 0};
  const Operator p = site_permutation(space, perm);
  CHECK((p.matrix() * p.matrix().adjoint() - Matrix::Identity(8, 8)).norm() < 1e-15);
  // three applications of a 3-cycle are the identity
  CHECK(max_abs_diff(p * p * p, Operator::identity(space)) < 1e-15);
  int moved = 0;
  for (std::size_t i = 0; i < space.dim(); ++i) {
    const StateVector out = apply(p, StateVector::basis(space, i));
    int nonzero = 0;
    for (Eigen::Index k = 0; k < 8; ++k) nonzero += std::abs(out.amplitudes()(k)) > 0.5;
    CHECK(nonzero == 1);
    moved += std::abs(out.amplitudes()(static_cast<Eigen::Index>(i))) < 0.5;
  }
  CHECK(moved == 6);  // all but |000> and |111>
  CHECK_THROWS_AS(site_permutation(space, std::vector<int>{0, 0, 1}), InvalidArgument);
}

TEST_CASE("total_sz and number operators") {
  const HilbertSpace space = HilbertSpace::qubits(3);
  const Operator sz = total_sz(space);
  CHECK(std::abs(sz(space.index_of("000"), space.index_of("000")).real() + 1.5) < 1e-15);
  CHECK(std::abs(sz(space.index_of("011"), space.index_of("011")).real() - 0.5) < 1e-15);
  const Operator n = total_number(HilbertSpace::qutrits(2));
  CHECK(std::abs(n(8, 8).real() - 4.0) < 1e-15);
  CHECK_THROWS_AS(total_sz(HilbertSpace::qutrits(2)), InvalidArgument);
}

TEST_CASE("commutator basics") {
  const HilbertSpace q1 = HilbertSpace::qubits(1);
  const Operator x(q1, local::pauli_x());
  const Operator y(q1, local::pauli_y());
  const Operator z(q1, local::pauli_z());
  // y carries the matching sign flip, so the usual algebra survives
  CHECK(max_abs_diff(commutator(x, y), Complex(0.0, 2.0) * z) < 1e-15);
  CHECK(commutator(z, z).max_abs() == 0.0);
  CHECK_THROWS_AS(commutator(x, Operator::identity(HilbertSpace::qubits(2))), InvalidArgument);
}

TEST_CASE("density matrix of a pure state") {
  const HilbertSpace space = HilbertSpace::qubits(2);
  const DensityMatrix rho = DensityMatrix::pure(StateVector::basis(space, "10"));
  CHECK(std::abs(rho.trace() - 1.0) < 1e-15);
  CHECK(rho.min_eigenvalue() > -1e-15);
  CHECK(rho.populations()(2) == doctest::Approx(1.0));
}
