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

// Analytic Floquet engine for the three-qubit loop driven with the
// symmetric phase pattern phi_j = 2 pi j / 3 (j = 1, 2, 3 on sites 0, 1, 2).
//
// Frequencies in and out are linear MHz; operators are rad/us. With
// f = delta / nu, the drive expands as H_I = sum_n H_n exp(i n 2pi nu t),
// the second-order effective Hamiltonian is
//   H_eff = H_0 + sum_{n>=1} [H_n, H_-n] / (n 2pi nu),
// and on the decoupling point J_0(sqrt3 f) = 0 it reduces to 2pi kappa chi
// with kappa = g^2 beta / nu.

#include <complex>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fcs/dynamics.hpp"
#include "fcs/hambuild.hpp"
#include "fcs/qcore.hpp"

namespace fcs {

inline constexpr int kDefaultHarmonics = 20;

inline constexpr int kMaxBesselOrder = 64;

// Bessel function of the first kind J_n(x), |n| <= 64, |x| <= 50.
double bessel_j(int n, double x);

// First positive zero of J_0.
inline constexpr double kBesselJ0FirstZero = 2.404825557695773;

// g J_0(2 sin(dphi/2) delta / nu), signed.
double pairwise_geff(double g_mhz, double delta_mhz, double nu_mhz, double dphi_rad);
// g J_0(delta / nu): only one of the two qubits modulated.
double single_mod_geff(double g_mhz, double delta_mhz, double nu_mhz);

struct FloquetSeries {
  HilbertSpace space;
  double nu_mhz = 0.0;
  int n_max = 0;
  std::map<int, Operator> components;  // n in [-n_max, n_max]
  // Set by the closed-form builder; lets effective_hamiltonian report beta.
  std::optional<double> g_mhz;
  std::optional<double> f;

  const Operator& at(int n) const;
  FloquetSeries truncated(int n_max) const;
  // max_n |H_n^dagger - H_-n|
  double pairing_error() const;
};

// Closed-form harmonics for uniform all-to-all coupling g and drive phases
// `phases` (one per site, common delta and nu):
//   H_n = 2pi g i^n J_n(z_jk) e^{i n psi_jk} [s+_j s-_k + (-1)^n s-_j s+_k],
//   z_jk = 2 f sin((phi_j - phi_k)/2), psi_jk = (phi_j + phi_k)/2.
FloquetSeries harmonic_components(std::span<const double> phases, double g_mhz, double delta_mhz, double nu_mhz,
                                  int n_max = kDefaultHarmonics);
// Three sites with phi_j = 2 pi j / 3.
FloquetSeries harmonic_components(double g_mhz, double delta_mhz, double nu_mhz, int n_max = kDefaultHarmonics);

std::vector<double> symmetric_phases();

struct EffectiveReport {
  Operator h0;
  Operator h_second_order;
  double kappa_mhz = 0.0;         // chi coefficient (single-excitation sector)
  double kappa_double_mhz = 0.0;  // chi coefficient in the S_z = +1/2 sector
  double beta = 0.0;              // NaN when the series carries no (g, f)
  Complex kappa_prime_mhz{0.0, 0.0};
  double chi_projection_residual = 0.0;

  Operator h_eff() const { return h0 + h_second_order; }
};

// Requires three two-level sites for the chi projection; on other spaces
// kappa is 0 and the residual is ||H_eff - h0|| / ||H_eff||.
EffectiveReport effective_hamiltonian(const FloquetSeries& series);

// sum_{n=1}^{n_max} J_n(sqrt3 f)^2 sin(n pi / 3) / n
// Orders above 64 are dropped once negligible.
double beta_series(double f, int n_max = kDefaultHarmonics);

struct AnharmonicCoupling {
  Complex kappa_prime;  // alpha + i lambda, MHz
  double alpha() const { return kappa_prime.real(); }
  double lambda() const { return kappa_prime.imag(); }
};

// kappa' = -2 g^2 sum_{|n|<=n_max} J_n(sqrt3 f)^2 e^{i n pi/3} / (n nu + eta).
// Throws ResonanceError when |n nu + eta| < 1 MHz for some n.
AnharmonicCoupling kappa_prime(double g_mhz, double f, double nu_mhz, double eta_mhz, int n_max = kDefaultHarmonics);

// Qubit-subspace effective operator with the |2> level eliminated:
//   h0 + 2pi[(kappa + lambda/4) + (lambda/2) S_z] chi + 2pi alpha (S_z + 1/2) E_s.
EffectiveReport effective_hamiltonian_anharmonic(double g_mhz, double f, double nu_mhz, double eta_mhz,
                                                 int n_max = kDefaultHarmonics);

// Re <chi, H> / <chi, chi>, in the units of H.
double chi_coefficient(const Operator& h);

struct FloquetLog {
  Operator hamiltonian;  // i nu log U(1/nu), rad/us
  double max_abs_phase = 0.0;
  bool near_branch_cut = false;  // some eigenphase within 1e-6 of +-pi
};

// Numerically exact stroboscopic Hamiltonian from the one-period propagator,
// eigenphases taken in (-pi, pi].
FloquetLog period_propagator_log(const HamiltonianFn& hfn, double nu_mhz, const IntegratorConfig& cfg = {});

}  // namespace fcs
