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

#include "fcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fcs/errors.hpp"

namespace fcs {

namespace {

void check_grid(const std::vector<double>& t_grid) {
  if (t_grid.empty()) throw InvalidArgument("evolve: empty time grid");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > t_grid[i - 1])) throw InvalidArgument("evolve: time grid must be strictly increasing");
  }
}

int steps_for(double span, double dt) { return std::max(1, static_cast<int>(std::ceil(span / dt - 1e-9))); }

class UnitaryStepper {
 public:
  UnitaryStepper(const HamiltonianFn& hfn, const IntegratorConfig& cfg) : hfn_(hfn), cfg_(cfg) {}

  void advance(Vector& psi, double t0, double t1) {
    const int n = steps_for(t1 - t0, cfg_.dt_us);
    const double h = (t1 - t0) / n;
    for (int s = 0; s < n; ++s) {
      const double t = t0 + s * h;
      if (cfg_.method == IntegratorConfig::Method::kRungeKutta4) rk4(psi, t, h);
      else magnus4(psi, t, h);
    }
  }

 private:
  void rk4(Vector& psi, double t, double h) {
    const Complex mi(0.0, -1.0);
    hfn_.evaluate(t, h0_);
    hfn_.evaluate(t + 0.5 * h, hm_);
    hfn_.evaluate(t + h, h1_);
    k1_.noalias() = mi * (h0_ * psi);
    tmp_ = psi + (0.5 * h) * k1_;
    k2_.noalias() = mi * (hm_ * tmp_);
    tmp_ = psi + (0.5 * h) * k2_;
    k3_.noalias() = mi * (hm_ * tmp_);
    tmp_ = psi + h * k3_;
    k4_.noalias() = mi * (h1_ * tmp_);
    psi += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

  void magnus4(Vector& psi, double t, double h) {
    const double c = std::sqrt(3.0) / 6.0;
    hfn_.evaluate(t + (0.5 - c) * h, h0_);
    hfn_.evaluate(t + (0.5 + c) * h, h1_);
    const Matrix comm = h1_ * h0_ - h0_ * h1_;
    hm_ = 0.5 * (h0_ + h1_) - Complex(0.0, std::sqrt(3.0) / 12.0 * h) * comm;
    // Small steps: sum the exponential series on the vector until the terms
    // drop below roundoff. Large ones go through the eigenbasis.
    const double scale = h * hm_.cwiseAbs().rowwise().sum().maxCoeff();
    if (scale > 0.5) {
      psi = HermitianEigen(Operator(hfn_.space(), hm_)).evolve(psi, h);
      return;
    }
    tmp_ = psi;
    const Complex mih(0.0, -h);
    for (int k = 1; k < 30; ++k) {
      k1_.noalias() = hm_ * tmp_;
      tmp_ = (mih / static_cast<double>(k)) * k1_;
      psi += tmp_;
      if (tmp_.lpNorm<Eigen::Infinity>() < 1e-17) break;
    }
  }

  const HamiltonianFn& hfn_;
  const IntegratorConfig& cfg_;
  Matrix h0_, hm_, h1_;
  Vector k1_, k2_, k3_, k4_, tmp_;
};

}  // namespace

void validate_step(const HamiltonianFn& hfn, const IntegratorConfig& cfg) {
  if (!(cfg.dt_us > 0.0)) throw InvalidArgument("IntegratorConfig: dt must be positive");
  const double nu = hfn.max_modulation_mhz();
  if (nu <= 0.0) return;
  const double limit = 1.0 / (20.0 * nu);
  if (cfg.dt_us > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "IntegratorConfig: dt = " << cfg.dt_us << " us exceeds 1/(20 nu_max) = " << limit
        << " us; try dt = " << limit / 10.0 << " us";
    throw InvalidArgument(msg.str());
  }
}

std::size_t TimeSeries::column(const std::string& label) const {
  const auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InvalidArgument("TimeSeries: no column '" + label + "'");
  return static_cast<std::size_t>(it - labels.begin());
}

std::vector<double> TimeSeries::trace(const std::string& label) const {
  const auto c = static_cast<Eigen::Index>(column(label));
  std::vector<double> out(static_cast<std::size_t>(populations.rows()));
  for (Eigen::Index r = 0; r < populations.rows(); ++r) out[static_cast<std::size_t>(r)] = populations(r, c);
  return out;
}

CollapseSet CollapseSet::from_device(const DeviceModel& device, std::span<const int> qubit_ids, const HilbertSpace& space) {
  if (static_cast<int>(qubit_ids.size()) != space.num_sites())
    throw InvalidArgument("CollapseSet: need one qubit id per site");
  CollapseSet set;
  for (int s = 0; s < space.num_sites(); ++s) {
    const QubitSpec& q = device.qubit(qubit_ids[static_cast<std::size_t>(s)]);
    const int d = space.site_dim(s);
    set.relaxation.push_back(std::sqrt(1.0 / q.t1_us) * embed(local::transition(d, 0, 1), s, space).matrix());
    if (d == 3) set.relaxation.push_back(std::sqrt(2.0 / q.t1_us) * embed(local::transition(d, 1, 2), s, space).matrix());
    set.dephasing.push_back(std::sqrt(1.0 / (2.0 * q.tphi_us)) * 2.0 * embed(local::number(d), s, space).matrix());
  }
  return set;
}

TimeSeries evolve_unitary(const HamiltonianFn& hfn, const StateVector& psi0, const std::vector<double>& t_grid,
                          const IntegratorConfig& cfg) {
  if (!(psi0.space() == hfn.space())) throw InvalidArgument("evolve_unitary: state and Hamiltonian spaces differ");
  check_grid(t_grid);
  validate_step(hfn, cfg);

  TimeSeries out;
  out.times = t_grid;
  out.labels = hfn.space().labels();
  out.populations.resize(static_cast<Eigen::Index>(t_grid.size()), static_cast<Eigen::Index>(hfn.space().dim()));

  UnitaryStepper stepper(hfn, cfg);
  Vector psi = psi0.amplitudes();
  const double norm0 = psi.norm();
  // The grid may start after t = 0; the drive clock starts at 0.
  if (t_grid.front() > 0.0) stepper.advance(psi, 0.0, t_grid.front());
  for (std::size_t r = 0; r < t_grid.size(); ++r) {
    if (r > 0) stepper.advance(psi, t_grid[r - 1], t_grid[r]);
    out.populations.row(static_cast<Eigen::Index>(r)) = psi.cwiseAbs2().transpose();
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.norm() - norm0));
  }
  return out;
}

StateVector propagate_state(const HamiltonianFn& hfn, const StateVector& psi0, double t0_us, double t1_us,
                            const IntegratorConfig& cfg) {
  if (!(psi0.space() == hfn.space())) throw InvalidArgument("propagate_state: state and Hamiltonian spaces differ");
  validate_step(hfn, cfg);
  Vector psi = psi0.amplitudes();
  if (t1_us > t0_us) UnitaryStepper(hfn, cfg).advance(psi, t0_us, t1_us);
  return StateVector(hfn.space(), std::move(psi));
}

Operator propagate_unitary(const HamiltonianFn& hfn, double t0_us, double t1_us, const IntegratorConfig& cfg) {
  validate_step(hfn, cfg);
  const auto n = static_cast<Eigen::Index>(hfn.space().dim());
  Matrix u = Matrix::Identity(n, n);
  if (t1_us > t0_us) {
    UnitaryStepper stepper(hfn, cfg);
    for (Eigen::Index c = 0; c < n; ++c) {
      Vector col = u.col(c);
      stepper.advance(col, t0_us, t1_us);
      u.col(c) = col;
    }
  }
  return Operator(hfn.space(), std::move(u));
}

namespace {

class LindbladStepper {
 public:
  LindbladStepper(const HamiltonianFn& hfn, const CollapseSet& collapse, const IntegratorConfig& cfg)
      : hfn_(hfn), collapse_(collapse), cfg_(cfg) {
    const auto n = static_cast<Eigen::Index>(hfn.space().dim());
    k_sum_ = Matrix::Zero(n, n);
    for (const auto& c : collapse.relaxation) k_sum_ += c.adjoint() * c;
    for (const auto& c : collapse.dephasing) k_sum_ += c.adjoint() * c;
    // Diagonal jump operators act elementwise: (c rho c^dag)_ij = c_i conj(c_j) rho_ij.
    mask_ = Matrix::Zero(n, n);
    for (const auto& c : collapse.dephasing) {
      const Vector d = c.diagonal();
      mask_ += d * d.adjoint();
    }
  }

  void advance(Matrix& rho, double t0, double t1) {
    const int steps = steps_for(t1 - t0, cfg_.dt_us);
    const double dt = (t1 - t0) / steps;
    for (int s = 0; s < steps; ++s) {
      const double t = t0 + s * dt;
      rhs(t, rho, k1_);
      tmp_ = rho + (0.5 * dt) * k1_;
      rhs(t + 0.5 * dt, tmp_, k2_);
      tmp_ = rho + (0.5 * dt) * k2_;
      rhs(t + 0.5 * dt, tmp_, k3_);
      tmp_ = rho + dt * k3_;
      rhs(t + dt, tmp_, k4_);
      rho += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }
  }

 private:
  void rhs(double t, const Matrix& rho, Matrix& out) {
    hfn_.evaluate(t, h_);
    g_ = Complex(0.0, -1.0) * h_ - 0.5 * k_sum_;
    out.noalias() = g_ * rho;
    out.noalias() += rho * g_.adjoint();
    for (const auto& c : collapse_.relaxation) out.noalias() += c * rho * c.adjoint();
    if (!collapse_.dephasing.empty()) out += mask_.cwiseProduct(rho);
  }

  const HamiltonianFn& hfn_;
  const CollapseSet& collapse_;
  const IntegratorConfig& cfg_;
  Matrix k_sum_, mask_, h_, g_;
  Matrix k1_, k2_, k3_, k4_, tmp_;
};

void check_lindblad(const HamiltonianFn& hfn, const DensityMatrix& rho0, const IntegratorConfig& cfg) {
  if (!(rho0.space() == hfn.space())) throw InvalidArgument("evolve_lindblad: state and Hamiltonian spaces differ");
  if (cfg.method != IntegratorConfig::Method::kRungeKutta4)
    throw InvalidArgument("evolve_lindblad: only the RK4 integrator is supported");
  validate_step(hfn, cfg);
}

}  // namespace

DensityMatrix propagate_density(const HamiltonianFn& hfn, const DensityMatrix& rho0, const CollapseSet& collapse,
                                double t0_us, double t1_us, const IntegratorConfig& cfg) {
  check_lindblad(hfn, rho0, cfg);
  Matrix rho = rho0.matrix();
  if (t1_us > t0_us) LindbladStepper(hfn, collapse, cfg).advance(rho, t0_us, t1_us);
  return DensityMatrix(hfn.space(), std::move(rho));
}

TimeSeries evolve_lindblad(const HamiltonianFn& hfn, const DensityMatrix& rho0, const CollapseSet& collapse,
                           const std::vector<double>& t_grid, const IntegratorConfig& cfg) {
  check_lindblad(hfn, rho0, cfg);
  check_grid(t_grid);
  const auto n = static_cast<Eigen::Index>(hfn.space().dim());
  LindbladStepper stepper(hfn, collapse, cfg);
  auto advance = [&](Matrix& rho, double t0, double t1) { stepper.advance(rho, t0, t1); };

  TimeSeries out;
  out.times = t_grid;
  out.labels = hfn.space().labels();
  out.populations.resize(static_cast<Eigen::Index>(t_grid.size()), n);
  out.min_eigenvalue = 1.0;

  Matrix rho = rho0.matrix();
  const Complex trace0 = rho.trace();
  if (t_grid.front() > 0.0) advance(rho, 0.0, t_grid.front());
  for (std::size_t r = 0; r < t_grid.size(); ++r) {
    if (r > 0) advance(rho, t_grid[r - 1], t_grid[r]);
    out.populations.row(static_cast<Eigen::Index>(r)) = rho.diagonal().real().transpose();
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(rho.trace() - trace0));
    out.min_eigenvalue = std::min(out.min_eigenvalue, DensityMatrix(hfn.space(), rho).min_eigenvalue());
  }
  return out;
}

TimeSeries effective_evolution(const Operator& h_eff, const StateVector& psi0, const std::vector<double>& t_grid) {
  if (!(psi0.space() == h_eff.space())) throw InvalidArgument("effective_evolution: state and Hamiltonian spaces differ");
  check_grid(t_grid);
  const HermitianEigen eig(h_eff);
  TimeSeries out;
  out.times = t_grid;
  out.labels = h_eff.space().labels();
  out.populations.resize(static_cast<Eigen::Index>(t_grid.size()), static_cast<Eigen::Index>(h_eff.dim()));
  for (std::size_t r = 0; r < t_grid.size(); ++r) {
    const Vector psi = eig.evolve(psi0.amplitudes(), t_grid[r]);
    out.populations.row(static_cast<Eigen::Index>(r)) = psi.cwiseAbs2().transpose();
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.norm() - psi0.norm()));
  }
  return out;
}

double convergence_gap(const HamiltonianFn& hfn, const StateVector& psi0, const std::vector<double>& t_grid,
                       const IntegratorConfig& cfg) {
  IntegratorConfig fine = cfg;
  fine.dt_us = 0.5 * cfg.dt_us;
  const TimeSeries a = evolve_unitary(hfn, psi0, t_grid, cfg);
  const TimeSeries b = evolve_unitary(hfn, psi0, t_grid, fine);
  const Eigen::Index last = a.populations.rows() - 1;
  return (a.populations.row(last) - b.populations.row(last)).cwiseAbs().maxCoeff();
}

std::vector<double> uniform_grid(double t_end, double step) {
  if (!(step > 0.0) || t_end < 0.0) throw InvalidArgument("uniform_grid: need step > 0 and t_end >= 0");
  const auto count = static_cast<std::size_t>(std::floor(t_end / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = static_cast<double>(i) * step;
  return grid;
}

}  // namespace fcs
