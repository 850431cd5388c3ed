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

// Hamiltonian builders. Every operator returned here is in angular units
// (rad/us, hbar = 1): a linear frequency f in MHz enters as 2*pi*f.
//
// The simulated register is the ordered list of qubits named by the drives:
// drive k acts on site k of the returned space. A qubit that takes part but
// is not modulated gets a DriveSpec with delta = 0.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fcs/device.hpp"
#include "fcs/qcore.hpp"

namespace fcs {

// H(t) = static_part + sum_k coeff_k(t) * op_k.
class HamiltonianFn {
 public:
  struct Term {
    Matrix op;
    std::function<Complex(double)> coeff;
  };

  HamiltonianFn(HilbertSpace space, Matrix static_part, std::vector<Term> terms,
                std::optional<double> period_us, double max_modulation_mhz);

  static HamiltonianFn constant(const Operator& h);

  Operator operator()(double t_us) const;
  // Writes H(t) into `out` (resized on demand); the integrators' hot path.
  void evaluate(double t_us, Matrix& out) const;

  const HilbertSpace& space() const { return space_; }
  std::optional<double> period() const { return period_; }
  // Fastest modulation frequency (MHz); 0 for static Hamiltonians.
  double max_modulation_mhz() const { return max_modulation_mhz_; }
  const Matrix& static_part() const { return static_; }
  std::span<const Term> terms() const { return terms_; }

 private:
  HilbertSpace space_;
  Matrix static_;
  std::vector<Term> terms_;
  std::optional<double> period_;
  double max_modulation_mhz_ = 0.0;
};

// H/hbar = sum_j 2pi omega_j(t) n_j + sum_edges 2pi g_jk (s+_j s-_k + h.c.).
HamiltonianFn lab_hamiltonian_2level(const DeviceModel& device, std::span<const DriveSpec> drives);

// Three levels per site: 2pi[omega_j(t) n_j + eta_j |2><2|_j] plus
// 2pi g_jk (b+_j b_k + h.c.) with b the truncated ladder operator, which
// carries the g, sqrt2 g and 2g matrix elements of the higher channels.
HamiltonianFn lab_hamiltonian_3level(const DeviceModel& device, std::span<const DriveSpec> drives);

// Frame rotating at frame_omega0 per excitation (|2> at 2*frame_omega0):
// keeps 2pi(omega_j(t) - omega0) n_j, the anharmonicity and the couplings.
// Site dimensions follow the device's `levels`.
HamiltonianFn rotating_frame_hamiltonian(const DeviceModel& device, std::span<const DriveSpec> drives,
                                         double frame_omega0_mhz);

enum class FramePhase {
  // theta_j(0) = 0: lab and interaction-picture states coincide at t = 0.
  kAlignedAtZero,
  // No -sin(phi_j) offset; matches the Jacobi-Anger harmonic series term by term.
  kFreeRunning,
};

// Interaction picture of the two-level lab Hamiltonian:
//   H_I = sum_edges 2pi g_jk s+_j s-_k exp(i theta_j - i theta_k) + h.c.,
//   theta_j(t) = 2pi (omega_j(0) - omega0) t + (delta_j / nu_j)(sin(2pi nu_j t + phi_j) - sin phi_j),
// where omega_j(0) is the drive's omega0. All frame_omega0 entries must agree.
HamiltonianFn interaction_hamiltonian(const DeviceModel& device, std::span<const DriveSpec> drives,
                                      std::span<const double> frame_omega0_mhz,
                                      FramePhase phase = FramePhase::kAlignedAtZero);

// Accumulated interaction-picture phase theta_j(t) of one drive (radians).
double frame_phase(const DriveSpec& drive, double frame_omega0_mhz, double t_us,
                   FramePhase phase = FramePhase::kAlignedAtZero);

// chi = sigma_1 . (sigma_2 x sigma_3) on three two-level sites.
Operator chirality_operator(const HilbertSpace& space);
// E_s = sum_{j<k} (s+_j s-_k + h.c.)
Operator symmetric_exchange(const HilbertSpace& space);
// E_as = i sum_cyclic (s+_j s-_k - h.c.) over (0,1), (1,2), (2,0); equals S_z chi.
Operator antisymmetric_exchange(const HilbertSpace& space);

}  // namespace fcs
