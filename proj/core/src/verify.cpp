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

#include "fcs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>

#include "fcs/csv.hpp"
#include "fcs/dynamics.hpp"
#include "fcs/errors.hpp"
#include "fcs/experiments.hpp"
#include "fcs/floquet.hpp"
#include "fcs/hambuild.hpp"
#include "fcs/readout.hpp"

namespace fcs {

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const char* fmt, ...) __attribute__((format(printf, 3, 4))) {
    char buf[256];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (!detail.empty()) detail += "; ";
    detail += buf;
    if (!ok) {
      detail += " [FAIL]";
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* name;
  std::vector<std::string> tags;
  double limit_seconds;
  std::function<Outcome(const VerifyOptions&)> run;
};

constexpr double kScanG = 12.7;
constexpr double kNu = 100.0;

// chi as the checks see it; the mutation hook flips its sign.
Operator checked_chi(const HilbertSpace& space, const VerifyOptions& opts) {
  Operator chi = chirality_operator(space);
  return opts.mutate_chi_sign ? -chi : chi;
}

double checked_chi_coefficient(const Operator& h, const VerifyOptions& opts) {
  const Operator chi = checked_chi(h.space(), opts);
  return hs_inner(chi, h).real() / hs_inner(chi, chi).real();
}

Outcome chirality_permutation(const VerifyOptions& opts) {
  Outcome out;
  const HilbertSpace space = HilbertSpace::qubits(3);
  const Operator u = expm_hermitian(checked_chi(space, opts), kPi / (3.0 * std::sqrt(3.0)));
  double worst = 1.0;
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const auto s = space.levels_of(idx);
    const std::vector<int> rotated{s[2], s[0], s[1]};
    const StateVector in = StateVector::basis(space, idx);
    const StateVector target = StateVector::basis(space, space.index_of(rotated));
    worst = std::min(worst, fidelity(apply(u, in), target));
  }
  out.check(worst >= 1.0 - 1e-10, "min fidelity |s1s2s3> -> |s3s1s2> = 1 - %.2e", 1.0 - worst);
  return out;
}

Outcome pairwise_curve(const VerifyOptions&) {
  Outcome out;
  const DeviceModel device = reference_device().uniform_g(kScanG);
  ScanSettings s;
  s.delta_mhz = 138.0;
  s.nu_mhz = kNu;
  std::vector<double> grid;
  for (int k = 0; k <= 24; ++k) grid.push_back(kTwoPi * k / 24.0);
  const ScanResult r = scan_dphi(device, s, grid);
  out.check(r.rms_error() < 0.4, "rms deviation %.3f MHz (< 0.4)", r.rms_error());
  out.check(r.geff_mhz[8] < 0.3, "|g_eff(2pi/3)| = %.3f MHz (< 0.3)", r.geff_mhz[8]);
  out.check(r.geff_mhz[16] < 0.3, "|g_eff(4pi/3)| = %.3f MHz (< 0.3)", r.geff_mhz[16]);
  return out;
}

Outcome single_modulation_zero(const VerifyOptions&) {
  Outcome out;
  const DeviceModel device = reference_device().uniform_g(kScanG);
  ScanSettings s;
  s.nu_mhz = kNu;
  std::vector<double> grid;
  for (double d = 200.0; d <= 280.0 + 1e-9; d += 2.0) grid.push_back(d);
  const ScanResult r = scan_delta_single(device, s, grid);
  const double zero = locate_decoupling_zero(r, 200.0, 280.0);
  out.check(std::abs(zero - 240.5) <= 3.0, "zero crossing at %.2f MHz (240.5 +- 3)", zero);
  return out;
}

Outcome kappa_closed_form(const VerifyOptions& opts) {
  Outcome out;
  const double f = kBesselJ0FirstZero / std::sqrt(3.0);
  const double beta = beta_series(f);
  const double kappa = kScanG * kScanG * beta / kNu;
  const DeviceModel device = reference_device().uniform_g(kScanG).with_levels(2);
  const auto phases = symmetric_phases();
  std::vector<DriveSpec> drives;
  for (int j = 0; j < 3; ++j) drives.push_back({j, 4990.0, f * kNu, kNu, phases[static_cast<std::size_t>(j)]});
  const std::vector<double> frame(3, 4990.0);
  const HamiltonianFn h = interaction_hamiltonian(device, drives, frame, FramePhase::kFreeRunning);
  const FloquetLog log = period_propagator_log(h, kNu);
  const double exact = checked_chi_coefficient(log.hamiltonian, opts) / kTwoPi;
  const double rel = std::abs(kappa - exact) / std::abs(exact);
  out.check(rel < 0.10, "kappa closed form %.4f vs exact %.4f MHz, rel %.3f (< 0.10)", kappa, exact, rel);
  out.check(std::abs(kappa - 0.5) < 0.05, "kappa %.4f MHz ~ 0.5", kappa);
  return out;
}

double predicted_first_step(double beta) {
  const double kappa = kScanG * kScanG * beta / kNu;
  return kPi / (3.0 * std::sqrt(3.0) * kTwoPi * kappa);
}

Outcome single_chiral(const VerifyOptions&) {
  Outcome out;
  const DeviceModel device = reference_device();
  const auto drives = chiral_drives(Excitation::kSingle);
  double mean_delta = 0.0;
  for (const auto& d : drives) mean_delta += d.delta_mhz / 3.0;
  const double predicted = predicted_first_step(beta_series(mean_delta / kNu));
  for (Noise noise : {Noise::kNone, Noise::kLindblad}) {
    ChiralSettings cs;
    cs.run.noise = noise;
    const TimeSeries ts = chiral_experiment(device, cs);
    const ChiralAnalysis a = analyze_chiral(ts, chiral_route(Excitation::kSingle));
    const char* tag = noise == Noise::kNone ? "exact" : "lindblad";
    const double floor = noise == Noise::kNone ? 0.6 : 0.5;
    out.check(a.cyclic, "%s order p_100 %.3f, p_010 %.3f, p_001 return %.3f us", tag, a.first_max_time[1],
              a.first_max_time[2], a.return_time);
    const double lowest = std::min({a.first_max_value[1], a.first_max_value[2], a.return_value});
    out.check(lowest >= floor, "%s smallest first maximum %.3f (>= %.1f)", tag, lowest, floor);
    if (noise == Noise::kNone) {
      const double rel = std::abs(a.first_step_time() - predicted) / predicted;
      out.check(rel <= 0.25, "first step %.3f us vs predicted %.3f us, rel %.2f (<= 0.25)", a.first_step_time(),
                predicted, rel);
    }
  }
  return out;
}

Outcome double_chiral(const VerifyOptions&) {
  Outcome out;
  const DeviceModel device = reference_device();
  ChiralSettings single;
  const ChiralAnalysis s = analyze_chiral(chiral_experiment(device, single), chiral_route(Excitation::kSingle));
  ChiralSettings twin;
  twin.excitation = Excitation::kDouble;
  twin.levels = 3;
  const ChiralAnalysis d = analyze_chiral(chiral_experiment(device, twin), chiral_route(Excitation::kDouble));
  out.check(d.cyclic && s.cyclic, "vacancy p_011 -> p_101 %.3f -> p_110 %.3f -> return %.3f us", d.first_max_time[1],
            d.first_max_time[2], d.return_time);
  const double ratio = d.return_time / s.return_time;
  out.check(ratio >= 0.4 && ratio <= 0.65, "cycle ratio %.3f / %.3f = %.3f (in [0.4, 0.65])", d.return_time,
            s.return_time, ratio);
  return out;
}

Outcome anharmonic_theory(const VerifyOptions&) {
  Outcome out;
  const double f = 1.38;
  const AnharmonicCoupling kp = kappa_prime(kScanG, f, kNu, -234.0);
  out.check(std::abs(kp.alpha()) < 0.05 * std::abs(kp.lambda()), "alpha %.4f, lambda %.4f MHz: |alpha|/|lambda| = %.3f (< 0.05)",
            kp.alpha(), kp.lambda(), std::abs(kp.alpha() / kp.lambda()));
  out.check(kp.lambda() > 0.0, "lambda > 0");
  const double kappa = kScanG * kScanG * beta_series(f) / kNu;
  const double ratio = kappa / (kappa + 0.5 * kp.lambda());
  out.check(ratio >= 0.4 && ratio <= 0.65, "predicted cycle ratio kappa/(kappa + lambda/2) = %.3f (in [0.4, 0.65])",
            ratio);
  return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome property_suite(const VerifyOptions& opts) {
  Outcome out;
  const DeviceModel device = reference_device();

  {
    const FloquetSeries sym = harmonic_components(kScanG, 138.0, kNu);
    const std::vector<double> skew{0.3, 1.9, 4.4};
    const FloquetSeries gen = harmonic_components(skew, kScanG, 138.0, kNu);
    const double pairing = std::max(sym.pairing_error(), gen.pairing_error());
    out.check(pairing < 1e-12, "max |H_n^dag - H_-n| = %.1e", pairing);
    const Operator sz = total_sz(sym.space);
    double comm = 0.0;
    for (const FloquetSeries* s : {&sym, &gen})
      comm = std::max(comm, commutator(effective_hamiltonian(*s).h_eff(), sz).max_abs());
    comm = std::max(comm, commutator(effective_hamiltonian_anharmonic(kScanG, 1.38, kNu, -234.0).h_eff(), sz).max_abs());
    out.check(comm < 1e-9, "max |[H_eff, S_z]| = %.1e", comm);
  }
  {
    const HilbertSpace space = HilbertSpace::qubits(3);
    const Operator chi = checked_chi(space, opts);
    double worst = 0.0;
    for (const std::vector<int>& perm : {std::vector<int>{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}) {
      const Operator p = site_permutation(space, perm);
      worst = std::max(worst, max_abs_diff(p * chi * p.adjoint(), -chi));
    }
    out.check(worst < 1e-12, "swap antisymmetry of chi, max deviation %.1e", worst);
  }
  {
    ChiralSettings cs;
    cs.excitation = Excitation::kDouble;
    cs.levels = 3;
    cs.t_end_us = 0.3;
    const TimeSeries unitary = chiral_experiment(device, cs);
    double sum_err = 0.0;
    for (Eigen::Index r = 0; r < unitary.populations.rows(); ++r)
      sum_err = std::max(sum_err, std::abs(unitary.populations.row(r).sum() - 1.0));
    out.check(unitary.max_norm_drift < 1e-9 && sum_err < 1e-6, "unitary norm drift %.1e, |sum P - 1| %.1e",
              unitary.max_norm_drift, sum_err);
    ChiralSettings noisy;
    noisy.t_end_us = 0.3;
    noisy.run.noise = Noise::kLindblad;
    const TimeSeries lindblad = chiral_experiment(device, noisy);
    out.check(lindblad.max_norm_drift < 1e-9 && lindblad.min_eigenvalue > -1e-9,
              "Lindblad trace drift %.1e, min eigenvalue %.1e", lindblad.max_norm_drift, lindblad.min_eigenvalue);
  }
  {
    // RK4 against the resonant-pair closed form |01> -> cos|01> - i sin|10>.
    const double g = kScanG;
    const HamiltonianFn pair =
        rotating_frame_hamiltonian(device.uniform_g(g).with_levels(2),
                                   std::vector<DriveSpec>{{0, 4990.0, 0.0, kNu, 0.0}, {1, 4990.0, 0.0, kNu, 0.0}}, 4990.0);
    const StateVector start = StateVector::basis(pair.space(), "01");
    const double t_end = 0.05;
    Vector closed = Vector::Zero(4);
    closed(1) = std::cos(kTwoPi * g * t_end);
    closed(2) = Complex(0.0, -std::sin(kTwoPi * g * t_end));
    const std::vector<double> steps{2e-3, 1e-3, 5e-4, 2.5e-4};
    std::vector<double> errs;
    for (double dt : steps) {
      IntegratorConfig cfg{IntegratorConfig::Method::kRungeKutta4, dt};
      errs.push_back((propagate_state(pair, start, 0.0, t_end, cfg).amplitudes() - closed).norm());
    }
    const double p = slope(steps, errs);
    out.check(std::abs(p - 4.0) <= 0.3, "rk4 convergence slope %.2f on the Rabi closed form (4 +- 0.3)", p);

    // The Magnus stepper is exact for constant H; measure it on the driven loop.
    const HamiltonianFn h = rotating_frame_hamiltonian(device, chiral_drives(Excitation::kDouble), 4990.0);
    const StateVector psi0 = StateVector::basis(h.space(), "011");
    IntegratorConfig ref{IntegratorConfig::Method::kPiecewiseExponential, 2.5e-6};
    const Vector exact = propagate_state(h, psi0, 0.0, t_end, ref).amplitudes();
    const std::vector<double> msteps{4e-4, 2e-4, 1e-4, 5e-5};
    std::vector<double> merrs;
    for (double dt : msteps) {
      IntegratorConfig cfg{IntegratorConfig::Method::kPiecewiseExponential, dt};
      merrs.push_back((propagate_state(h, psi0, 0.0, t_end, cfg).amplitudes() - exact).norm());
    }
    const double pm = slope(msteps, merrs);
    out.check(std::abs(pm - 4.0) <= 0.3, "magnus convergence slope %.2f on the driven loop (4 +- 0.3)", pm);
  }
  {
    const ConfusionModel model = ConfusionModel::from_device(device, std::vector<int>{0, 1, 2});
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      RealVector p(8);
      for (Eigen::Index k = 0; k < 8; ++k) p(k) = u(rng);
      p /= p.sum();
      worst = std::max(worst, (correct_readout(apply_readout(p, model), model).probabilities - p).cwiseAbs().maxCoeff());
    }
    out.check(worst < 1e-10, "readout round trip max error %.1e", worst);
  }
  {
    ChiralSettings cs;
    cs.t_end_us = 0.2;
    cs.run.shots = 500;
    cs.run.seed = 42;
    const std::string a = to_csv(table_from_series(chiral_experiment(device, cs)));
    const std::string b = to_csv(table_from_series(chiral_experiment(device, cs)));
    cs.run.seed = 43;
    const std::string c = to_csv(table_from_series(chiral_experiment(device, cs)));
    out.check(a == b && a != c, "CSV byte-identical under a fixed seed (%zu bytes), differs across seeds", a.size());
  }
  return out;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "chirality permutation", {"qcore", "floquet"}, 1.0, chirality_permutation},
      {2, "pairwise decoupling curve", {"experiments", "scan"}, 120.0, pairwise_curve},
      {3, "single-modulation decoupling zero", {"experiments", "scan"}, 120.0, single_modulation_zero},
      {4, "kappa closed form vs exact Floquet", {"floquet"}, 30.0, kappa_closed_form},
      {5, "single-excitation chiral dynamics", {"dynamics", "chiral"}, 180.0, single_chiral},
      {6, "double-excitation chiral dynamics", {"dynamics", "chiral"}, 600.0, double_chiral},
      {7, "anharmonic effective theory", {"floquet"}, 1.0, anharmonic_theory},
      {8, "property suites", {"properties", "floquet", "dynamics", "readout", "cli"}, 120.0, property_suite},
  };
  return all;
}

const Criterion& find(int id) {
  for (const auto& c : criteria()) {
    if (c.id == id) return c;
  }
  throw InvalidArgument("verify: no criterion " + std::to_string(id));
}

}  // namespace

std::vector<int> criterion_ids() {
  std::vector<int> ids;
  for (const auto& c : criteria()) ids.push_back(c.id);
  return ids;
}

std::vector<std::string> criterion_tags(int id) { return find(id).tags; }

bool criterion_matches(int id, const std::string& filter) {
  if (filter.empty()) return true;
  const auto& tags = find(id).tags;
  return std::find(tags.begin(), tags.end(), filter) != tags.end();
}

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  const Criterion& c = find(id);
  CriterionResult r;
  r.id = c.id;
  r.name = c.name;
  r.tags = c.tags;
  r.limit_seconds = c.limit_seconds;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Outcome o = c.run(opts);
    r.pass = o.pass;
    r.detail = o.detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (r.seconds > r.limit_seconds) {
    r.pass = false;
    char buf[96];
    std::snprintf(buf, sizeof buf, "; runtime %.1f s over the %.0f s limit [FAIL]", r.seconds, r.limit_seconds);
    r.detail += buf;
  }
  return r;
}

std::vector<CriterionResult> run_verify(const VerifyOptions& opts, std::ostream* progress) {
  std::vector<CriterionResult> results;
  for (int id : criterion_ids()) {
    if (!criterion_matches(id, opts.filter)) continue;
    results.push_back(run_criterion(id, opts));
    if (progress) *progress << format_result(results.back()) << '\n' << std::flush;
  }
  return results;
}

std::string format_result(const CriterionResult& r) {
  char head[128];
  std::snprintf(head, sizeof head, "[%s] %d %-36s %7.2fs  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace fcs
