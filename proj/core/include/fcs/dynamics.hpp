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

#include <map>
#include <string>
#include <vector>

#include "fcs/device.hpp"
#include "fcs/hambuild.hpp"
#include "fcs/qcore.hpp"

namespace fcs {

struct IntegratorConfig {
  enum class Method {
    kRungeKutta4,           // classical fixed-step RK4
    kPiecewiseExponential,  // two-point Gauss-Legendre Magnus, 4th order (unitary only)
  };
  Method method = Method::kRungeKutta4;
  double dt_us = 5e-5;  // 0.05 ns: 200 steps per 100 MHz period
  // Target change of final populations when dt is halved; see convergence_gap().
  double tolerance = 1e-6;
};

// Rejects dt > 1 / (20 nu_max) with a message suggesting a valid step.
void validate_step(const HamiltonianFn& hfn, const IntegratorConfig& cfg);

// Sampled populations. Row r of `populations` belongs to times[r]; column c
// to labels[c].
struct TimeSeries {
  std::vector<double> times;
  std::vector<std::string> labels;
  Eigen::MatrixXd populations;
  Eigen::MatrixXd stddev;  // empty unless produced from repeated runs
  std::map<std::string, std::string> metadata;
  // Largest |norm - 1| (unitary) or |trace - 1| (Lindblad) seen on the grid.
  double max_norm_drift = 0.0;
  // Smallest density-matrix eigenvalue seen (Lindblad only).
  double min_eigenvalue = 0.0;

  std::size_t column(const std::string& label) const;
  std::vector<double> trace(const std::string& label) const;
};

struct CollapseSet {
  std::vector<Matrix> relaxation;  // general single-site jump operators
  std::vector<Matrix> dephasing;   // diagonal single-site jump operators

  // Per site: sqrt(1/T1)|0><1| (and sqrt(2/T1)|1><2| on three-level sites),
  // sqrt(1/(2 T_phi)) * 2 n_j. `qubit_ids[s]` names the device qubit on site s.
  static CollapseSet from_device(const DeviceModel& device, std::span<const int> qubit_ids, const HilbertSpace& space);
  bool empty() const { return relaxation.empty() && dephasing.empty(); }
};

TimeSeries evolve_unitary(const HamiltonianFn& hfn, const StateVector& psi0, const std::vector<double>& t_grid,
                          const IntegratorConfig& cfg = {});

// Final state only.
StateVector propagate_state(const HamiltonianFn& hfn, const StateVector& psi0, double t0_us, double t1_us,
                            const IntegratorConfig& cfg = {});

// Propagator U(t1, t0) built column by column.
Operator propagate_unitary(const HamiltonianFn& hfn, double t0_us, double t1_us, const IntegratorConfig& cfg = {});

// d rho/dt = -i[H, rho] + sum_c (c rho c^dag - {c^dag c, rho}/2), RK4 only.
TimeSeries evolve_lindblad(const HamiltonianFn& hfn, const DensityMatrix& rho0, const CollapseSet& collapse,
                           const std::vector<double>& t_grid, const IntegratorConfig& cfg = {});

// Final state only; same RK4 path as evolve_lindblad.
DensityMatrix propagate_density(const HamiltonianFn& hfn, const DensityMatrix& rho0, const CollapseSet& collapse,
                                double t0_us, double t1_us, const IntegratorConfig& cfg = {});

// Exact evolution under a time-independent Hamiltonian.
TimeSeries effective_evolution(const Operator& h_eff, const StateVector& psi0, const std::vector<double>& t_grid);

// max |P(dt) - P(dt/2)| over final populations.
double convergence_gap(const HamiltonianFn& hfn, const StateVector& psi0, const std::vector<double>& t_grid,
                       const IntegratorConfig& cfg);

// 0, step, 2*step, ... up to and including t_end (within 1e-9 step).
std::vector<double> uniform_grid(double t_end, double step);

}  // namespace fcs
