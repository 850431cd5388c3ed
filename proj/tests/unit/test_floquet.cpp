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
#include <vector>

#include "fcs/errors.hpp"
#include "fcs/floquet.hpp"
#include "fcs/hambuild.hpp"

using namespace fcs;

namespace {

constexpr double kG = 12.7;
constexpr double kNu = 100.0;

double decoupled_f() { return kBesselJ0FirstZero / std::sqrt(3.0); }

double power_series_j(int n, double x) {
  double term = std::pow(0.5 * x, n) / std::tgamma(n + 1.0);
  double sum = term;
  for (int k = 1; k < 30; ++k) {
    term *= -0.25 * x * x / (k * static_cast<double>(k + n));
    sum += term;
  }
  return sum;
}

double beta_oracle(double f, int n_max) {
  double b = 0.0;
  for (int n = 1; n <= n_max; ++n) {
    const double j = std::cyl_bessel_j(static_cast<double>(n), std::sqrt(3.0) * f);
    b += j * j * std::sin(n * kPi / 3.0) / n;
  }
  return b;
}

DeviceModel uniform_device(int sites, double g) {
  DeviceModel d;
  for (int id = 0; id < sites; ++id) {
    QubitSpec q;
    q.id = id;
    q.omega_idle_mhz = 5000.0;
    d.qubits.push_back(q);
  }
  for (int a = 0; a < sites; ++a)
    for (int b = a + 1; b < sites; ++b) d.couplings.set(a, b, g);
  return d;
}

std::vector<DriveSpec> symmetric_drives(double delta) {
  std::vector<DriveSpec> out;
  const auto phases = symmetric_phases();
  for (int j = 0; j < 3; ++j) out.push_back({j, 4990.0, delta, kNu, phases[static_cast<std::size_t>(j)]});
  return out;
}

Operator sector_projector(const HilbertSpace& space, int excitations) {
  Matrix p = Matrix::Zero(8, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    int ones = 0;
    for (char c : space.label_of(i)) ones += c == '1';
    if (ones == excitations) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  }
  return Operator(space, p);
}

double sector_chi(const Operator& h, int excitations) {
  const Operator p = sector_projector(h.space(), excitations);
  const Operator chi = p * chirality_operator(h.space()) * p;
  return hs_inner(chi, h).real() / hs_inner(chi, chi).real() / kTwoPi;
}

}  // namespace

TEST_CASE("bessel_j against the standard library and a power series") {
  CHECK(bessel_j(0, 0.0) == 1.0);
  for (int n = 1; n < 10; ++n) CHECK(bessel_j(n, 0.0) == 0.0);
  CHECK(std::abs(bessel_j(0, kBesselJ0FirstZero)) < 1e-14);
  CHECK(std::abs(bessel_j(0, 2.4048)) < 2e-5);
  CHECK(std::abs(bessel_j(1, 1.0) - power_series_j(1, 1.0)) < 1e-12);
  for (int n = 0; n <= 64; n += 3) {
    for (double x : {0.1, 1.0, 2.76, 7.3, 19.9, 33.0, 50.0}) {
      const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
      const double got = bessel_j(n, x);
      CHECK(std::abs(got - ref) <= 1e-12 * std::max(std::abs(ref), 1e-3));
      CHECK(bessel_j(-n, x) == doctest::Approx((n % 2 ? -1.0 : 1.0) * got).epsilon(1e-15));
      CHECK(bessel_j(n, -x) == doctest::Approx((n % 2 ? -1.0 : 1.0) * got).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(bessel_j(65, 1.0), InvalidArgument);
  CHECK_THROWS_AS(bessel_j(0, 50.5), InvalidArgument);
}

TEST_CASE("pairwise and single-modulation couplings") {
  CHECK(pairwise_geff(kG, 138.0, kNu, 0.0) == kG);
  const double at_third = pairwise_geff(kG, 138.0, kNu, kTwoPi / 3.0);
  CHECK(at_third == doctest::Approx(kG * std::cyl_bessel_j(0.0, 2.0 * std::sin(kPi / 3.0) * 1.38)).epsilon(1e-12));
  CHECK(std::abs(at_third) < 0.1);
  CHECK(std::abs(pairwise_geff(kG, kNu * kBesselJ0FirstZero / std::sqrt(3.0), kNu, kTwoPi / 3.0)) < 1e-12);
  CHECK(pairwise_geff(kG, 138.0, kNu, kPi) == doctest::Approx(kG * std::cyl_bessel_j(0.0, 2.76)).epsilon(1e-12));
  for (double dphi : {0.1, 0.9, 2.0, 3.0})
    CHECK(std::abs(pairwise_geff(kG, 138.0, kNu, dphi) - pairwise_geff(kG, 138.0, kNu, kTwoPi - dphi)) < 1e-14);

  CHECK(single_mod_geff(kG, 0.0, kNu) == kG);
  CHECK(std::abs(single_mod_geff(kG, 240.5, kNu)) < 0.01);
  CHECK(single_mod_geff(10.0, 100.0, 100.0) == doctest::Approx(10.0 * std::cyl_bessel_j(0.0, 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(pairwise_geff(kG, 138.0, 0.0, 1.0), InvalidArgument);
}

TEST_CASE("harmonic components match a Fourier integral of the interaction Hamiltonian") {
  const double delta = 138.0;
  const FloquetSeries series = harmonic_components(kG, delta, kNu, 8);
  CHECK(series.pairing_error() < 1e-10);
  const std::vector<double> frame{4990.0, 4990.0, 4990.0};
  const HamiltonianFn hi =
      interaction_hamiltonian(uniform_device(3, kG), symmetric_drives(delta), frame, FramePhase::kFreeRunning);
  const int samples = 4096;
  for (int n = -5; n <= 5; ++n) {
    Matrix acc = Matrix::Zero(8, 8);
    for (int s = 0; s < samples; ++s) {
      const double t = s / (samples * kNu);
      acc += hi(t).matrix() * std::polar(1.0, -kTwoPi * n * kNu * t);
    }
    acc /= static_cast<double>(samples);
    CHECK((acc - series.at(n).matrix()).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("harmonic components at the decoupling point and without modulation") {
  const FloquetSeries at_zero = harmonic_components(kG, decoupled_f() * kNu, kNu);
  CHECK(at_zero.at(0).max_abs() < 1e-3 * kTwoPi * kG);
  const HilbertSpace space = HilbertSpace::qubits(3);
  const FloquetSeries idle = harmonic_components(kG, 0.0, kNu, 4);
  CHECK(max_abs_diff(idle.at(0), symmetric_exchange(space) * Complex(kTwoPi * kG)) < 1e-12);
  for (int n = 1; n <= 4; ++n) CHECK(idle.at(n).max_abs() == 0.0);
  CHECK_THROWS_AS(harmonic_components(kG, 138.0, kNu, 0), InvalidArgument);
}

TEST_CASE("second-order effective Hamiltonian") {
  const FloquetSeries series = harmonic_components(kG, decoupled_f() * kNu, kNu);
  const EffectiveReport r = effective_hamiltonian(series);
  CHECK(r.chi_projection_residual < 1e-6);
  CHECK(r.h0.hermitian_error() < 1e-10);
  CHECK(r.h_second_order.hermitian_error() < 1e-10);
  CHECK(commutator(r.h_eff(), total_sz(series.space)).max_abs() < 1e-10);
  CHECK(r.kappa_mhz == doctest::Approx(0.5).epsilon(0.05));
  CHECK(r.beta == doctest::Approx(beta_oracle(decoupled_f(), 20)).epsilon(1e-12));

  for (double f : {0.3, 1.0, decoupled_f(), 1.9, 2.7}) {
    const EffectiveReport rf = effective_hamiltonian(harmonic_components(kG, f * kNu, kNu));
    CHECK(std::abs(rf.kappa_mhz - kG * kG * beta_series(f) / kNu) < 1e-9);
    CHECK(rf.chi_projection_residual >= 0.0);
    CHECK(rf.chi_projection_residual <= 1.0);
  }

  const EffectiveReport none = effective_hamiltonian(series.truncated(0));
  CHECK(none.h_second_order.max_abs() == 0.0);
  CHECK(none.kappa_mhz == 0.0);

  // a skewed phase pattern still conserves excitation number
  const std::vector<double> skew{0.2, 2.3, 4.0};
  const EffectiveReport rs = effective_hamiltonian(harmonic_components(skew, kG, 138.0, kNu));
  CHECK(commutator(rs.h_eff(), total_sz(series.space)).max_abs() < 1e-10);
  CHECK(std::isnan(effective_hamiltonian([&] {
                     FloquetSeries s = series;
                     s.g_mhz.reset();
                     return s;
                   }()).beta));
}

TEST_CASE("beta series") {
  CHECK(beta_series(0.0) == 0.0);
  CHECK(beta_series(decoupled_f()) == doctest::Approx(0.313).epsilon(0.002));
  CHECK(beta_series(decoupled_f()) == doctest::Approx(beta_oracle(decoupled_f(), 20)).epsilon(1e-13));
  for (double f : {0.5, 1.3885, 2.2, 3.0}) {
    CHECK(beta_series(f, 3) == beta_series(f, 2));
    CHECK(beta_series(f, 6) == beta_series(f, 5));
    CHECK(std::abs(beta_series(f, 40) - beta_series(f, 80)) < 1e-12);
  }
  CHECK_THROWS_AS(beta_series(1.0, 0), InvalidArgument);
}

TEST_CASE("anharmonic coupling") {
  const double f = 1.38;
  CHECK(std::abs(kappa_prime(0.0, f, kNu, -234.0).kappa_prime) == 0.0);

  Complex oracle(0.0, 0.0);
  for (int n = -20; n <= 20; ++n) {
    const double j = std::cyl_bessel_j(static_cast<double>(std::abs(n)), std::sqrt(3.0) * f);
    oracle += -2.0 * kG * kG * j * j / (n * kNu - 234.0) * std::polar(1.0, n * kPi / 3.0);
  }
  const AnharmonicCoupling kp = kappa_prime(kG, f, kNu, -234.0);
  CHECK(kp.lambda() > 0.0);
  CHECK(std::abs(kp.kappa_prime - oracle) < 1e-12);

  try {
    kappa_prime(kG, f, 117.0, -234.0);
    FAIL("expected a resonance error");
  } catch (const ResonanceError& e) {
    CHECK(e.harmonic() == 2);
  }

  const EffectiveReport two_level = effective_hamiltonian(harmonic_components(kG, f * kNu, kNu));
  const EffectiveReport far = effective_hamiltonian_anharmonic(kG, f, kNu, -1e9);
  CHECK(std::abs(far.kappa_mhz - two_level.kappa_mhz) < 1e-6);
  CHECK(std::abs(far.kappa_double_mhz - two_level.kappa_mhz) < 1e-6);
}

TEST_CASE("anharmonic sector strengths") {
  const double f = 1.38;
  const EffectiveReport r = effective_hamiltonian_anharmonic(kG, f, kNu, -234.0);
  const AnharmonicCoupling kp = kappa_prime(kG, f, kNu, -234.0);
  const Operator h = r.h_eff();
  CHECK(h.hermitian_error() < 1e-10);
  CHECK(commutator(h, total_sz(h.space())).max_abs() < 1e-10);
  CHECK(sector_chi(h, 1) == doctest::Approx(r.kappa_mhz).epsilon(1e-10));
  CHECK(sector_chi(h, 2) == doctest::Approx(r.kappa_mhz + kp.lambda() / 2.0).epsilon(1e-10));
  CHECK(r.kappa_double_mhz == doctest::Approx(r.kappa_mhz + kp.lambda() / 2.0).epsilon(1e-12));
}

TEST_CASE("period propagator logarithm") {
  const HilbertSpace space = HilbertSpace::qubits(2);
  Matrix m(4, 4);
  m << 1.0, 0.5, 0.0, Complex(0, 0.2), 0.5, -2.0, 0.3, 0.0, 0.0, 0.3, 0.7, 0.1, Complex(0, -0.2), 0.0, 0.1, 3.0;
  const Operator h(space, m * 10.0);
  const FloquetLog log = period_propagator_log(HamiltonianFn::constant(h), kNu);
  CHECK(max_abs_diff(log.hamiltonian, h) < 1e-9);
  CHECK(!log.near_branch_cut);

  const DeviceModel pair = uniform_device(2, kG);
  const std::vector<double> frame{4990.0, 4990.0};
  IntegratorConfig cfg{IntegratorConfig::Method::kPiecewiseExponential, 2.5e-5};
  for (double dphi : {0.0, 0.6, 1.2, kPi, 5.0}) {
    const std::vector<DriveSpec> drives{{0, 4990.0, 138.0, kNu, 0.0}, {1, 4990.0, 138.0, kNu, dphi}};
    const FloquetLog fl = period_propagator_log(interaction_hamiltonian(pair, drives, frame), kNu, cfg);
    const double flip = std::abs(fl.hamiltonian(space.index_of("10"), space.index_of("01"))) / kTwoPi;
    const double analytic = std::abs(pairwise_geff(kG, 138.0, kNu, dphi));
    CHECK(flip == doctest::Approx(analytic).epsilon(0.05));
  }
  CHECK_THROWS_AS(period_propagator_log(interaction_hamiltonian(pair,
                                                                std::vector<DriveSpec>{{0, 4990.0, 138.0, kNu, 0.0},
                                                                                       {1, 4990.0, 138.0, 130.0, 0.0}},
                                                                frame),
                                        kNu),
                  InvalidArgument);
}
