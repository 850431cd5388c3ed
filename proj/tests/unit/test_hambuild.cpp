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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fcs/dynamics.hpp"
#include "fcs/errors.hpp"
#include "fcs/experiments.hpp"
#include "fcs/hambuild.hpp"

using namespace fcs;

namespace {

DeviceModel pair_device(double g, int levels, double eta = -230.0) {
  DeviceModel d;
  for (int id = 0; id < 2; ++id) {
    QubitSpec q;
    q.id = id;
    q.omega_idle_mhz = 5000.0;
    q.eta_mhz = eta;
    q.t1_us = 10.0;
    q.tphi_us = 5.0;
    q.levels = levels;
    d.qubits.push_back(q);
  }
  d.couplings.set(0, 1, g);
  return d;
}

std::vector<double> random_times(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(u(rng));
  return out;
}

Matrix commute(const Matrix& a, const Matrix& b) { return a * b - b * a; }

}  // namespace

TEST_CASE("single undriven qubit has levels 0 and 2 pi omega0") {
  DeviceModel d = pair_device(10.0, 2);
  d.couplings = {};
  const std::vector<DriveSpec> drives{{0, 4990.0, 0.0, 100.0, 0.0}};
  const Operator h = lab_hamiltonian_2level(d, drives)(0.37);
  const HermitianEigen eig(h);
  CHECK(std::abs(eig.eigenvalues()(0)) < 1e-9);
  CHECK(eig.eigenvalues()(1) == doctest::Approx(kTwoPi * 4990.0).epsilon(1e-14));
}

TEST_CASE("resonant pair splits by twice 2 pi g") {
  const DeviceModel d = pair_device(10.0, 2);
  const std::vector<DriveSpec> drives{{0, 4990.0, 0.0, 100.0, 0.0}, {1, 4990.0, 0.0, 100.0, 0.0}};
  const HermitianEigen eig(lab_hamiltonian_2level(d, drives)(0.0));
  // sorted: 0, w - g, w + g, 2w
  CHECK(eig.eigenvalues()(2) - eig.eigenvalues()(1) == doctest::Approx(2.0 * kTwoPi * 10.0).epsilon(1e-10));
}

TEST_CASE("three-qubit lab Hamiltonian against a hand-built oracle") {
  const DeviceModel d = reference_device().with_levels(2);
  const std::vector<DriveSpec> drives = chiral_drives(Excitation::kSingle);
  const double t = 0.0;
  const Operator h = lab_hamiltonian_2level(d, drives)(t);
  const HilbertSpace space = HilbertSpace::qubits(3);
  Matrix oracle = Matrix::Zero(8, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    const std::string s = space.label_of(i);
    double diag = 0.0;
    for (int j = 0; j < 3; ++j)
      if (s[static_cast<std::size_t>(j)] == '1') diag += kTwoPi * frequency_at(drives[static_cast<std::size_t>(j)], t);
    oracle(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        if (j == k || s[static_cast<std::size_t>(j)] != '1' || s[static_cast<std::size_t>(k)] != '0') continue;
        std::string f = s;
        std::swap(f[static_cast<std::size_t>(j)], f[static_cast<std::size_t>(k)]);
        oracle(static_cast<Eigen::Index>(space.index_of(f)), static_cast<Eigen::Index>(i)) = kTwoPi * d.couplings.g(j, k);
      }
    }
  }
  CHECK(h.hermitian_error() < 1e-9);
  CHECK((h.matrix() - oracle).cwiseAbs().maxCoeff() < 1e-9);
  // no elements between different excitation numbers
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      const auto ones = [&](std::size_t x) { return std::count(space.label_of(x).begin(), space.label_of(x).end(), '1'); };
      if (ones(i) != ones(j)) CHECK(std::abs(h(i, j)) == 0.0);
    }
}

TEST_CASE("excitation number is conserved and H is periodic") {
  const DeviceModel d3 = reference_device();
  const std::vector<DriveSpec> drives = chiral_drives(Excitation::kDouble);
  const HamiltonianFn lab3 = lab_hamiltonian_3level(d3, drives);
  const HamiltonianFn lab2 = lab_hamiltonian_2level(d3.with_levels(2), drives);
  const HamiltonianFn rot = rotating_frame_hamiltonian(d3, drives, 4990.0);
  for (const HamiltonianFn* h : {&lab3, &lab2, &rot}) {
    const Matrix n = total_number(h->space()).matrix();
    REQUIRE(h->period().has_value());
    for (double t : random_times(10, 11)) {
      const Operator ht = (*h)(t);
      CHECK(ht.hermitian_error() < 1e-9);
      CHECK(commute(ht.matrix(), n).cwiseAbs().maxCoeff() < 1e-10);
      CHECK(max_abs_diff(ht, (*h)(t + *h->period())) < 1e-8);
    }
  }
}

TEST_CASE("three-level builder restricted to qubit levels is the two-level builder") {
  const DeviceModel d3 = reference_device();
  const std::vector<DriveSpec> drives = chiral_drives(Excitation::kSingle);
  const HamiltonianFn lab3 = lab_hamiltonian_3level(d3, drives);
  const HamiltonianFn lab2 = lab_hamiltonian_2level(d3.with_levels(2), drives);
  const HilbertSpace q = HilbertSpace::qubits(3);
  const HilbertSpace t = HilbertSpace::qutrits(3);
  for (double time : random_times(5, 2)) {
    const Operator h3 = lab3(time);
    const Operator h2 = lab2(time);
    double diff = 0.0;
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t j = 0; j < 8; ++j)
        diff = std::max(diff, std::abs(h3(t.index_of(q.label_of(i)), t.index_of(q.label_of(j))) - h2(i, j)));
    CHECK(diff == 0.0);
  }
  CHECK_THROWS_AS(lab_hamiltonian_2level(d3, drives), InvalidArgument);
  CHECK_THROWS_AS(lab_hamiltonian_3level(d3.with_levels(2), drives), InvalidArgument);
}

TEST_CASE("three-level hopping channels and anharmonicity placement") {
  const DeviceModel d = pair_device(10.0, 3);
  const std::vector<DriveSpec> drives{{0, 4990.0, 50.0, 100.0, 0.3}, {1, 4980.0, 0.0, 100.0, 0.0}};
  const HilbertSpace s = HilbertSpace::qutrits(2);
  const Operator h = lab_hamiltonian_3level(d, drives)(0.123);
  CHECK(std::abs(h(s.index_of("20"), s.index_of("11")) - kTwoPi * std::sqrt(2.0) * 10.0) < 1e-9);
  CHECK(std::abs(h(s.index_of("10"), s.index_of("01")) - kTwoPi * 10.0) < 1e-9);
  CHECK(std::abs(h(s.index_of("21"), s.index_of("12")) - kTwoPi * 2.0 * 10.0) < 1e-9);
  const double w = frequency_at(drives[0], 0.123);
  CHECK(h(s.index_of("20"), s.index_of("20")).real() == doctest::Approx(kTwoPi * (2.0 * w - 230.0)).epsilon(1e-13));

  const Operator h_no_eta = lab_hamiltonian_3level(pair_device(10.0, 3, 0.0), drives)(0.123);
  const Matrix diff = h.matrix() - h_no_eta.matrix();
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const auto v = std::abs(diff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      const std::string l = s.label_of(i);
      const int twos = static_cast<int>(std::count(l.begin(), l.end(), '2'));
      if (i != j || twos == 0) CHECK(v == 0.0);
      else CHECK(v == doctest::Approx(kTwoPi * 230.0 * twos).epsilon(1e-12));
    }
}

TEST_CASE("interaction picture: pure flip-flop, static cases") {
  const DeviceModel d = reference_device().with_levels(2);
  const std::vector<double> frame{4990.0, 4990.0, 4990.0};
  const HamiltonianFn hi = interaction_hamiltonian(d, chiral_drives(Excitation::kSingle), frame);
  for (double t : random_times(10, 3)) CHECK(hi(t).matrix().diagonal().cwiseAbs().maxCoeff() == 0.0);

  const DeviceModel p = pair_device(12.7, 2);
  const std::vector<double> frame2{4990.0, 4990.0};
  const HilbertSpace s = HilbertSpace::qubits(2);
  const std::vector<DriveSpec> idle{{0, 4990.0, 0.0, 100.0, 0.0}, {1, 4990.0, 0.0, 100.0, 0.0}};
  const HamiltonianFn h_idle = interaction_hamiltonian(p, idle, frame2);
  const std::vector<DriveSpec> common{{0, 4990.0, 138.0, 100.0, 0.4}, {1, 4990.0, 138.0, 100.0, 0.4}};
  const HamiltonianFn h_common = interaction_hamiltonian(p, common, frame2);
  for (double t : random_times(10, 4)) {
    CHECK(std::abs(h_idle(t)(s.index_of("10"), s.index_of("01")) - kTwoPi * 12.7) < 1e-12);
    CHECK(max_abs_diff(h_common(t), h_common(0.0)) < 1e-9);
  }
  CHECK_THROWS_AS(interaction_hamiltonian(p, idle, std::vector<double>{4990.0, 4991.0}), InvalidArgument);
  CHECK_THROWS_AS(interaction_hamiltonian(reference_device(), chiral_drives(Excitation::kSingle), frame), InvalidArgument);
}

TEST_CASE("interaction picture matches the frame-rotated rotating-frame propagation") {
  const DeviceModel d = reference_device().with_levels(2);
  const std::vector<DriveSpec> drives = chiral_drives(Excitation::kSingle);
  const std::vector<double> frame{4990.0, 4990.0, 4990.0};
  const HamiltonianFn hi = interaction_hamiltonian(d, drives, frame);
  const HamiltonianFn hr = rotating_frame_hamiltonian(d, drives, 4990.0);
  const HilbertSpace space = hi.space();
  IntegratorConfig cfg{IntegratorConfig::Method::kPiecewiseExponential, 5e-5};
  Vector start = Vector::Zero(8);
  start(static_cast<Eigen::Index>(space.index_of("001"))) = std::sqrt(0.5);
  start(static_cast<Eigen::Index>(space.index_of("011"))) = Complex(0.0, std::sqrt(0.5));
  const StateVector psi0(space, start);
  double worst = 0.0;
  double t0 = 0.0;
  StateVector a = psi0;
  StateVector b = psi0;
  for (double t1 : {0.25, 0.5, 0.75, 1.0}) {
    a = propagate_state(hi, a, t0, t1, cfg);
    b = propagate_state(hr, b, t0, t1, cfg);
    Vector mapped = a.amplitudes();
    for (std::size_t i = 0; i < 8; ++i) {
      const std::string l = space.label_of(i);
      double theta = 0.0;
      for (int j = 0; j < 3; ++j)
        if (l[static_cast<std::size_t>(j)] == '1') theta += frame_phase(drives[static_cast<std::size_t>(j)], 4990.0, t1);
      mapped(static_cast<Eigen::Index>(i)) *= std::polar(1.0, -theta);
    }
    const double overlap = std::norm(mapped.dot(b.amplitudes()));
    worst = std::max(worst, std::sqrt(std::max(0.0, 1.0 - overlap)));
    t0 = t1;
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("rotating frame matches the lab frame over a short window") {
  const DeviceModel d = pair_device(12.7, 2);
  const std::vector<DriveSpec> drives{{0, 4990.0, 138.0, 100.0, 0.0}, {1, 4990.0, 138.0, 100.0, 2.0}};
  const HamiltonianFn lab = lab_hamiltonian_2level(d, drives);
  const HamiltonianFn rot = rotating_frame_hamiltonian(d, drives, 4990.0);
  IntegratorConfig cfg{IntegratorConfig::Method::kPiecewiseExponential, 2e-6};
  const StateVector psi0 = StateVector::basis(lab.space(), "01");
  const double t = 0.02;
  const Vector a = propagate_state(lab, psi0, 0.0, t, cfg).amplitudes();
  Vector b = propagate_state(rot, psi0, 0.0, t, cfg).amplitudes();
  // the lab state picks up exp(-i 2 pi w0 t) per excitation
  b *= std::polar(1.0, -kTwoPi * 4990.0 * t);
  CHECK(std::norm(a.dot(b)) > 1.0 - 1e-8);
}

TEST_CASE("chirality operator spectrum and symmetries") {
  const HilbertSpace space = HilbertSpace::qubits(3);
  const Operator chi = chirality_operator(space);
  CHECK(chi.hermitian_error() < 1e-15);
  std::vector<double> ev;
  const HermitianEigen eig(chi);
  for (Eigen::Index i = 0; i < 8; ++i) ev.push_back(eig.eigenvalues()(i));
  const double r = 2.0 * std::sqrt(3.0);
  const std::vector<double> expect{-r, -r, 0, 0, 0, 0, r, r};
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(ev[i] - expect[i]) < 1e-12);

  CHECK(apply(chi, StateVector::basis(space, "000")).norm() == 0.0);
  CHECK(apply(chi, StateVector::basis(space, "111")).norm() == 0.0);
  CHECK(commutator(chi, total_sz(space)).max_abs() < 1e-15);

  for (const std::vector<int>& swap : {std::vector<int>{1, 0, 2}, {2, 1, 0}, {0, 2, 1}}) {
    const Operator s = site_permutation(space, swap);
    CHECK(max_abs_diff(s * chi * s, -chi) < 1e-15);
  }
  const Operator cyc = site_permutation(space, std::vector<int>{1, 2, 0});
  CHECK(max_abs_diff(cyc * chi * cyc.adjoint(), chi) < 1e-15);

  const Operator u = expm_hermitian(chi, kPi / (3.0 * std::sqrt(3.0)));
  for (std::size_t i = 0; i < 8; ++i) {
    const std::string s = space.label_of(i);
    const std::string target{s[2], s[0], s[1]};
    const StateVector out = apply(u, StateVector::basis(space, i));
    CHECK(fidelity(out, StateVector::basis(space, target)) > 1.0 - 1e-10);
  }

  CHECK(max_abs_diff(antisymmetric_exchange(space), total_sz(space) * chi) < 1e-14);
  CHECK(commutator(symmetric_exchange(space), total_number(space)).max_abs() < 1e-15);
  CHECK_THROWS_AS(chirality_operator(HilbertSpace::qubits(2)), InvalidArgument);
  CHECK_THROWS_AS(chirality_operator(HilbertSpace::qutrits(3)), InvalidArgument);
}
