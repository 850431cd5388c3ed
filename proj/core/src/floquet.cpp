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

#include "fcs/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "fcs/errors.hpp"

namespace fcs {

double pairwise_geff(double g_mhz, double delta_mhz, double nu_mhz, double dphi_rad) {
  if (!(nu_mhz > 0.0)) throw InvalidArgument("pairwise_geff: nu must be positive");
  return g_mhz * bessel_j(0, 2.0 * std::sin(0.5 * dphi_rad) * delta_mhz / nu_mhz);
}

double single_mod_geff(double g_mhz, double delta_mhz, double nu_mhz) {
  if (!(nu_mhz > 0.0)) throw InvalidArgument("single_mod_geff: nu must be positive");
  return g_mhz * bessel_j(0, delta_mhz / nu_mhz);
}

const Operator& FloquetSeries::at(int n) const {
  const auto it = components.find(n);
  if (it == components.end()) throw InvalidArgument("FloquetSeries: harmonic " + std::to_string(n) + " not stored");
  return it->second;
}

FloquetSeries FloquetSeries::truncated(int new_n_max) const {
  if (new_n_max < 0 || new_n_max > n_max) throw InvalidArgument("FloquetSeries::truncated: order out of range");
  FloquetSeries out = *this;
  out.n_max = new_n_max;
  out.components.clear();
  for (int n = -new_n_max; n <= new_n_max; ++n) out.components.emplace(n, at(n));
  return out;
}

double FloquetSeries::pairing_error() const {
  double worst = 0.0;
  for (int n = 1; n <= n_max; ++n) worst = std::max(worst, max_abs_diff(at(n).adjoint(), at(-n)));
  return worst;
}

std::vector<double> symmetric_phases() { return {kTwoPi / 3.0, 2.0 * kTwoPi / 3.0, kTwoPi}; }

FloquetSeries harmonic_components(std::span<const double> phases, double g_mhz, double delta_mhz, double nu_mhz,
                                  int n_max) {
  if (n_max < 1) throw InvalidArgument("harmonic_components: n_max must be at least 1");
  if (!(nu_mhz > 0.0)) throw InvalidArgument("harmonic_components: nu must be positive");
  if (phases.size() < 2) throw InvalidArgument("harmonic_components: need at least two sites");
  const HilbertSpace space = HilbertSpace::qubits(static_cast<int>(phases.size()));
  const double f = delta_mhz / nu_mhz;

  FloquetSeries series;
  series.space = space;
  series.nu_mhz = nu_mhz;
  series.n_max = n_max;
  series.g_mhz = g_mhz;
  series.f = f;
  for (int n = -n_max; n <= n_max; ++n) series.components.emplace(n, Operator::zero(space));

  const Complex i(0.0, 1.0);
  const int sites = space.num_sites();
  for (int j = 0; j < sites; ++j) {
    for (int k = j + 1; k < sites; ++k) {
      const double pj = phases[static_cast<std::size_t>(j)];
      const double pk = phases[static_cast<std::size_t>(k)];
      const double z = 2.0 * f * std::sin(0.5 * (pj - pk));
      const double psi = 0.5 * (pj + pk);
      const Operator up = two_site(local::raising(2), j, local::lowering(2), k, space);  // s+_j s-_k
      const Operator down = up.adjoint();
      for (int n = -n_max; n <= n_max; ++n) {
        const double jn = bessel_j(n, z);
        if (jn == 0.0) continue;
        const Complex c = kTwoPi * g_mhz * std::pow(i, n) * jn * std::polar(1.0, n * psi);
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;
        series.components.at(n) += c * (up + parity * down);
      }
    }
  }
  return series;
}

FloquetSeries harmonic_components(double g_mhz, double delta_mhz, double nu_mhz, int n_max) {
  const auto phases = symmetric_phases();
  return harmonic_components(phases, g_mhz, delta_mhz, nu_mhz, n_max);
}

double chi_coefficient(const Operator& h) {
  const Operator chi = chirality_operator(h.space());
  return hs_inner(chi, h).real() / hs_inner(chi, chi).real();
}

namespace {

bool is_three_qubit(const HilbertSpace& space) { return space.num_sites() == 3 && space.all_qubits(); }

double residual_after(const Operator& h_eff, const Operator& explained) {
  const double norm = h_eff.frobenius_norm();
  if (norm == 0.0) return 0.0;
  return std::min(1.0, (h_eff - explained).frobenius_norm() / norm);
}

}  // namespace

EffectiveReport effective_hamiltonian(const FloquetSeries& series) {
  EffectiveReport report;
  report.h0 = series.at(0);
  report.h_second_order = Operator::zero(series.space);
  for (int n = 1; n <= series.n_max; ++n) {
    report.h_second_order += commutator(series.at(n), series.at(-n)) * Complex(1.0 / (n * kTwoPi * series.nu_mhz));
  }
  const Operator h_eff = report.h_eff();
  report.beta = (series.g_mhz && series.f) ? beta_series(*series.f, std::max(series.n_max, 1))
                                           : std::numeric_limits<double>::quiet_NaN();
  if (is_three_qubit(series.space)) {
    const Operator chi = chirality_operator(series.space);
    report.kappa_mhz = chi_coefficient(h_eff) / kTwoPi;
    report.kappa_double_mhz = report.kappa_mhz;
    report.chi_projection_residual = residual_after(h_eff, chi * Complex(kTwoPi * report.kappa_mhz) + report.h0);
  } else {
    report.chi_projection_residual = residual_after(h_eff, report.h0);
  }
  return report;
}

double beta_series(double f, int n_max) {
  if (n_max < 1) throw InvalidArgument("beta_series: n_max must be at least 1");
  const double z = std::sqrt(3.0) * f;
  double beta = 0.0;
  // bessel_j stops at order 64; past that the terms must already be negligible.
  const int top = std::min(n_max, kMaxBesselOrder);
  if (n_max > top && std::abs(bessel_j(top, z)) > 1e-30)
    throw InvalidArgument("beta_series: terms beyond order 64 are not negligible at f = " + std::to_string(f));
  for (int n = 1; n <= top; ++n) {
    if (n % 3 == 0) continue;  // sin(n pi / 3) = 0
    const double jn = bessel_j(n, z);
    beta += jn * jn * std::sin(n * kPi / 3.0) / n;
  }
  return beta;
}

AnharmonicCoupling kappa_prime(double g_mhz, double f, double nu_mhz, double eta_mhz, int n_max) {
  if (!(nu_mhz > 0.0)) throw InvalidArgument("kappa_prime: nu must be positive");
  if (n_max < 0) throw InvalidArgument("kappa_prime: n_max must be non-negative");
  const double z = std::sqrt(3.0) * f;
  Complex sum(0.0, 0.0);
  for (int n = -n_max; n <= n_max; ++n) {
    const double denom = n * nu_mhz + eta_mhz;
    if (std::abs(denom) < 1.0) {
      throw ResonanceError(n, "kappa_prime: resonant harmonic n = " + std::to_string(n) + " (|n nu + eta| = " +
                                  std::to_string(std::abs(denom)) + " MHz < 1 MHz)");
    }
    const double jn = bessel_j(n, z);
    sum += jn * jn * std::polar(1.0, n * kPi / 3.0) / denom;
  }
  return {-2.0 * g_mhz * g_mhz * sum};
}

EffectiveReport effective_hamiltonian_anharmonic(double g_mhz, double f, double nu_mhz, double eta_mhz, int n_max) {
  const AnharmonicCoupling kp = kappa_prime(g_mhz, f, nu_mhz, eta_mhz, n_max);
  const HilbertSpace space = HilbertSpace::qubits(3);
  const Operator chi = chirality_operator(space);
  const Operator sz = total_sz(space);
  const Operator es = symmetric_exchange(space);
  const Operator one = Operator::identity(space);

  EffectiveReport report;
  report.beta = beta_series(f, std::max(n_max, 1));
  const double kappa = g_mhz * g_mhz * report.beta / nu_mhz;
  report.kappa_prime_mhz = kp.kappa_prime;
  report.kappa_mhz = kappa;
  report.kappa_double_mhz = kappa + 0.5 * kp.lambda();
  report.h0 = es * Complex(kTwoPi * g_mhz * bessel_j(0, std::sqrt(3.0) * f));
  report.h_second_order = ((one * Complex(kappa + 0.25 * kp.lambda()) + sz * Complex(0.5 * kp.lambda())) * chi +
                           (sz + one * Complex(0.5)) * es * Complex(kp.alpha())) *
                          Complex(kTwoPi);
  const Operator h_eff = report.h_eff();
  report.chi_projection_residual =
      residual_after(h_eff, chi * Complex(chi_coefficient(h_eff)) + report.h0);
  return report;
}

FloquetLog period_propagator_log(const HamiltonianFn& hfn, double nu_mhz, const IntegratorConfig& cfg) {
  if (!(nu_mhz > 0.0)) throw InvalidArgument("period_propagator_log: nu must be positive");
  const double period = 1.0 / nu_mhz;
  if (hfn.period() && std::abs(*hfn.period() - period) > 1e-12 * period) {
    // Any integer multiple of the Hamiltonian's own period is also a period.
    const double ratio = period / *hfn.period();
    if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0)
      throw InvalidArgument("period_propagator_log: Hamiltonian is not periodic with 1/nu");
  } else if (!hfn.period() && !hfn.terms().empty()) {
    throw InvalidArgument("period_propagator_log: Hamiltonian has no common period");
  }

  const Operator u = propagate_unitary(hfn, 0.0, period, cfg);
  // U is normal, so its complex Schur form is diagonal up to roundoff and the
  // Schur vectors stay unitary even for degenerate eigenphases.
  Eigen::ComplexSchur<Matrix> schur(u.matrix());
  const Matrix& q = schur.matrixU();
  const Matrix& t = schur.matrixT();
  FloquetLog out;
  Vector energies(t.rows());
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    const double phase = std::arg(t(k, k));  // (-pi, pi]
    out.max_abs_phase = std::max(out.max_abs_phase, std::abs(phase));
    if (kPi - std::abs(phase) < 1e-6) out.near_branch_cut = true;
    energies(k) = -phase * nu_mhz;  // U = exp(-i H period)
  }
  out.hamiltonian = Operator(hfn.space(), q * energies.asDiagonal() * q.adjoint());
  return out;
}

}  // namespace fcs
