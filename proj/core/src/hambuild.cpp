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

#include "fcs/hambuild.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fcs/errors.hpp"

namespace fcs {

HamiltonianFn::HamiltonianFn(HilbertSpace space, Matrix static_part, std::vector<Term> terms,
                             std::optional<double> period_us, double max_modulation_mhz)
    : space_(std::move(space)),
      static_(std::move(static_part)),
      terms_(std::move(terms)),
      period_(period_us),
      max_modulation_mhz_(max_modulation_mhz) {
  const auto n = static_cast<Eigen::Index>(space_.dim());
  if (static_.rows() != n || static_.cols() != n) throw InvalidArgument("HamiltonianFn: static part has wrong shape");
  for (const auto& term : terms_) {
    if (term.op.rows() != n || term.op.cols() != n) throw InvalidArgument("HamiltonianFn: term has wrong shape");
    if (!term.coeff) throw InvalidArgument("HamiltonianFn: term without coefficient");
  }
}

HamiltonianFn HamiltonianFn::constant(const Operator& h) {
  return HamiltonianFn(h.space(), h.matrix(), {}, std::nullopt, 0.0);
}

void HamiltonianFn::evaluate(double t_us, Matrix& out) const {
  out = static_;
  for (const auto& term : terms_) out += term.coeff(t_us) * term.op;
}

Operator HamiltonianFn::operator()(double t_us) const {
  Matrix m;
  evaluate(t_us, m);
  return Operator(space_, std::move(m));
}

namespace {

struct Register {
  HilbertSpace space;
  std::vector<DriveSpec> drives;  // normalized, index = site
  std::vector<const QubitSpec*> qubits;
};

Register make_register(const DeviceModel& device, std::span<const DriveSpec> drives, std::optional<int> forced_levels) {
  if (drives.empty()) throw InvalidArgument("Hamiltonian: at least one drive is required");
  Register reg;
  std::set<int> seen;
  std::vector<int> dims;
  for (const auto& d : drives) {
    if (!device.has_qubit(d.qubit)) throw InvalidArgument("Hamiltonian: drive references unknown qubit " + std::to_string(d.qubit));
    if (!seen.insert(d.qubit).second) throw InvalidArgument("Hamiltonian: two drives on qubit " + std::to_string(d.qubit));
    const QubitSpec& q = device.qubit(d.qubit);
    if (forced_levels && q.levels != *forced_levels)
      throw InvalidArgument("Hamiltonian: qubit " + std::to_string(d.qubit) + " has " + std::to_string(q.levels) +
                            " levels, builder needs " + std::to_string(*forced_levels));
    reg.drives.push_back(d.normalized());
    reg.qubits.push_back(&q);
    dims.push_back(q.levels);
  }
  reg.space = HilbertSpace(std::move(dims));
  return reg;
}

// Common period 1/nu when every modulated drive shares nu; also returns the
// fastest modulation frequency.
std::pair<std::optional<double>, double> modulation_period(const std::vector<DriveSpec>& drives) {
  std::optional<double> nu;
  bool common = true;
  double fastest = 0.0;
  for (const auto& d : drives) {
    if (d.delta_mhz == 0.0) continue;
    fastest = std::max(fastest, d.nu_mhz);
    if (!nu) nu = d.nu_mhz;
    else if (*nu != d.nu_mhz) common = false;
  }
  if (!nu) return {std::nullopt, 0.0};
  if (!common) return {std::nullopt, fastest};
  return {1.0 / *nu, fastest};
}

Matrix coupling_part(const DeviceModel& device, const Register& reg) {
  const auto n = static_cast<Eigen::Index>(reg.space.dim());
  Matrix h = Matrix::Zero(n, n);
  const int sites = reg.space.num_sites();
  for (int j = 0; j < sites; ++j) {
    for (int k = j + 1; k < sites; ++k) {
      const double g = device.couplings.g(reg.drives[static_cast<std::size_t>(j)].qubit,
                                          reg.drives[static_cast<std::size_t>(k)].qubit);
      if (g == 0.0) continue;
      const Operator hop = two_site(local::raising(reg.space.site_dim(j)), j, local::lowering(reg.space.site_dim(k)), k, reg.space);
      h += kTwoPi * g * (hop.matrix() + hop.matrix().adjoint());
    }
  }
  return h;
}

HamiltonianFn build_diagonal_drive(const DeviceModel& device, const Register& reg, double frame_omega0_mhz) {
  Matrix static_part = coupling_part(device, reg);
  std::vector<HamiltonianFn::Term> terms;
  for (int j = 0; j < reg.space.num_sites(); ++j) {
    const int d = reg.space.site_dim(j);
    const DriveSpec drive = reg.drives[static_cast<std::size_t>(j)];
    const Matrix number = embed(local::number(d), j, reg.space).matrix();
    if (d == 3) static_part += kTwoPi * reg.qubits[static_cast<std::size_t>(j)]->eta_mhz * embed(local::projector(3, 2), j, reg.space).matrix();
    if (drive.delta_mhz == 0.0) {
      static_part += kTwoPi * (drive.omega0_mhz - frame_omega0_mhz) * number;
      continue;
    }
    terms.push_back({number, [drive, frame_omega0_mhz](double t) {
                       return Complex(kTwoPi * (frequency_at(drive, t) - frame_omega0_mhz), 0.0);
                     }});
  }
  const auto [period, fastest] = modulation_period(reg.drives);
  return HamiltonianFn(reg.space, std::move(static_part), std::move(terms), period, fastest);
}

}  // namespace

HamiltonianFn lab_hamiltonian_2level(const DeviceModel& device, std::span<const DriveSpec> drives) {
  return build_diagonal_drive(device, make_register(device, drives, 2), 0.0);
}

HamiltonianFn lab_hamiltonian_3level(const DeviceModel& device, std::span<const DriveSpec> drives) {
  return build_diagonal_drive(device, make_register(device, drives, 3), 0.0);
}

HamiltonianFn rotating_frame_hamiltonian(const DeviceModel& device, std::span<const DriveSpec> drives,
                                         double frame_omega0_mhz) {
  return build_diagonal_drive(device, make_register(device, drives, std::nullopt), frame_omega0_mhz);
}

double frame_phase(const DriveSpec& drive, double frame_omega0_mhz, double t_us, FramePhase phase) {
  double theta = kTwoPi * (drive.omega0_mhz - frame_omega0_mhz) * t_us;
  if (drive.delta_mhz != 0.0) {
    const double offset = phase == FramePhase::kAlignedAtZero ? std::sin(drive.phi_rad) : 0.0;
    theta += (drive.delta_mhz / drive.nu_mhz) * (std::sin(kTwoPi * drive.nu_mhz * t_us + drive.phi_rad) - offset);
  }
  return theta;
}

HamiltonianFn interaction_hamiltonian(const DeviceModel& device, std::span<const DriveSpec> drives,
                                      std::span<const double> frame_omega0_mhz, FramePhase phase) {
  Register reg = make_register(device, drives, 2);
  if (frame_omega0_mhz.size() != reg.drives.size())
    throw InvalidArgument("interaction_hamiltonian: need one frame frequency per drive");
  const double omega0 = frame_omega0_mhz.front();
  for (double w : frame_omega0_mhz) {
    if (w != omega0) throw InvalidArgument("interaction_hamiltonian: frame frequencies must be common to all qubits");
  }

  const auto n = static_cast<Eigen::Index>(reg.space.dim());
  std::vector<HamiltonianFn::Term> terms;
  bool detuned = false;
  for (const auto& d : reg.drives) detuned = detuned || d.omega0_mhz != omega0;

  const int sites = reg.space.num_sites();
  for (int j = 0; j < sites; ++j) {
    for (int k = j + 1; k < sites; ++k) {
      const DriveSpec dj = reg.drives[static_cast<std::size_t>(j)];
      const DriveSpec dk = reg.drives[static_cast<std::size_t>(k)];
      const double g = device.couplings.g(dj.qubit, dk.qubit);
      if (g == 0.0) continue;
      const Matrix hop = kTwoPi * g * two_site(local::raising(2), j, local::lowering(2), k, reg.space).matrix();
      auto coeff = [dj, dk, omega0, phase](double t) {
        return std::polar(1.0, frame_phase(dj, omega0, t, phase) - frame_phase(dk, omega0, t, phase));
      };
      terms.push_back({hop, coeff});
      terms.push_back({hop.adjoint(), [coeff](double t) { return std::conj(coeff(t)); }});
    }
  }
  auto [period, fastest] = modulation_period(reg.drives);
  if (detuned) period.reset();
  return HamiltonianFn(reg.space, Matrix::Zero(n, n), std::move(terms), period, fastest);
}

Operator chirality_operator(const HilbertSpace& space) {
  if (space.num_sites() != 3 || !space.all_qubits())
    throw InvalidArgument("chirality_operator: requires exactly three two-level sites");
  const Matrix pauli[3] = {local::pauli_x(), local::pauli_y(), local::pauli_z()};
  Operator chi = Operator::zero(space);
  // Levi-Civita: even permutations of (x, y, z) enter with +1, odd with -1.
  const int even[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  for (const auto& p : even) {
    const Operator a = embed(pauli[p[0]], 0, space) * embed(pauli[p[1]], 1, space) * embed(pauli[p[2]], 2, space);
    const Operator b = embed(pauli[p[0]], 0, space) * embed(pauli[p[2]], 1, space) * embed(pauli[p[1]], 2, space);
    chi += a - b;
  }
  return chi;
}

Operator symmetric_exchange(const HilbertSpace& space) {
  if (!space.all_qubits()) throw InvalidArgument("symmetric_exchange: requires two-level sites");
  Operator e = Operator::zero(space);
  for (int j = 0; j < space.num_sites(); ++j) {
    for (int k = j + 1; k < space.num_sites(); ++k) {
      const Operator hop = two_site(local::raising(2), j, local::lowering(2), k, space);
      e += hop + hop.adjoint();
    }
  }
  return e;
}

Operator antisymmetric_exchange(const HilbertSpace& space) {
  if (space.num_sites() != 3 || !space.all_qubits())
    throw InvalidArgument("antisymmetric_exchange: requires exactly three two-level sites");
  Operator e = Operator::zero(space);
  const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const auto& p : pairs) {
    const Operator hop = two_site(local::raising(2), p[0], local::lowering(2), p[1], space);
    e += hop - hop.adjoint();
  }
  return e * Complex(0.0, 1.0);
}

}  // namespace fcs
