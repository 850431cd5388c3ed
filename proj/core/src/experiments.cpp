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

#include "fcs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <mutex>
#include <thread>

#include "fcs/csv.hpp"
#include "fcs/errors.hpp"
#include "fcs/floquet.hpp"
#include "fcs/hambuild.hpp"
#include "fcs/readout.hpp"

namespace fcs {

namespace {

std::string describe_drives(const std::vector<DriveSpec>& drives) {
  std::ostringstream out;
  for (std::size_t k = 0; k < drives.size(); ++k) {
    const DriveSpec& d = drives[k];
    out << (k ? ";" : "") << "q" << d.qubit << ":omega0=" << format_number(d.omega0_mhz)
        << ":delta=" << format_number(d.delta_mhz) << ":nu=" << format_number(d.nu_mhz)
        << ":phi=" << format_number(d.phi_rad);
  }
  return out.str();
}

std::size_t site_of(const std::vector<DriveSpec>& drives, int qubit) {
  for (std::size_t s = 0; s < drives.size(); ++s) {
    if (drives[s].qubit == qubit) return s;
  }
  throw InvalidArgument("run_sequence: qubit " + std::to_string(qubit) + " has no drive in the sequence");
}

// Multinomial draw as a chain of binomials.
RealVector sample_counts(const RealVector& p, int shots, std::mt19937_64& rng) {
  RealVector freq = RealVector::Zero(p.size());
  int remaining = shots;
  double mass = 1.0;
  for (Eigen::Index k = 0; k < p.size() && remaining > 0; ++k) {
    if (k == p.size() - 1) {
      freq(k) = remaining;
      break;
    }
    const double q = mass > 0.0 ? std::clamp(p(k) / mass, 0.0, 1.0) : 0.0;
    std::binomial_distribution<int> draw(remaining, q);
    const int c = draw(rng);
    freq(k) = c;
    remaining -= c;
    mass -= p(k);
  }
  return freq / static_cast<double>(shots);
}

RealVector clean_distribution(RealVector p) {
  for (Eigen::Index k = 0; k < p.size(); ++k) p(k) = std::max(0.0, p(k));
  const double s = p.sum();
  if (!(s > 0.0)) throw NumericalGuardError("run_sequence: state has vanished");
  return p / s;
}

}  // namespace

TimeSeries run_sequence(const DeviceModel& device, const PulseSequence& seq, const RunOptions& opts) {
  if (seq.drives.empty()) throw InvalidArgument("run_sequence: sequence has no drives");
  if (!(seq.duration_us >= 0.0)) throw InvalidArgument("run_sequence: duration must be non-negative");
  if (opts.shots && *opts.shots <= 0) throw InvalidArgument("run_sequence: shots must be positive");
  if (!(opts.step_us > 0.0)) throw InvalidArgument("run_sequence: T step must be positive");
  {
    std::set<int> seen;
    for (const auto& d : seq.drives) {
      if (!device.has_qubit(d.qubit)) throw InvalidArgument("run_sequence: unknown qubit " + std::to_string(d.qubit));
      if (!seen.insert(d.qubit).second)
        throw InvalidArgument("run_sequence: qubit " + std::to_string(d.qubit) + " driven twice");
    }
  }
  const DeviceModel dev = opts.levels ? device.with_levels(opts.levels) : device;
  const HamiltonianFn hfn = rotating_frame_hamiltonian(dev, seq.drives, seq.drives.front().omega0_mhz);
  const HilbertSpace& space = hfn.space();

  std::vector<int> levels(static_cast<std::size_t>(space.num_sites()), 0);
  for (const auto& flip : seq.prep) {
    const std::size_t s = site_of(seq.drives, flip.qubit);
    if (flip.level < 0 || flip.level >= space.site_dim(static_cast<int>(s)))
      throw InvalidArgument("run_sequence: prep level " + std::to_string(flip.level) + " not available on qubit " +
                            std::to_string(flip.qubit));
    levels[s] = flip.level;
  }
  std::vector<int> readout = seq.readout;
  if (readout.empty()) {
    for (const auto& d : seq.drives) readout.push_back(d.qubit);
  }
  std::vector<std::size_t> readout_sites;
  for (int q : readout) readout_sites.push_back(site_of(seq.drives, q));

  const auto grid = uniform_grid(seq.duration_us, opts.step_us);
  const StateVector psi0 = StateVector::basis(space, space.label_of(space.index_of(levels)));
  TimeSeries full;
  std::vector<int> ids;
  for (const auto& d : seq.drives) ids.push_back(d.qubit);
  if (opts.noise == Noise::kNone) {
    full = evolve_unitary(hfn, psi0, grid, opts.integrator);
  } else {
    const CollapseSet collapse = CollapseSet::from_device(dev, ids, space);
    IntegratorConfig cfg = opts.integrator;
    cfg.method = IntegratorConfig::Method::kRungeKutta4;
    full = evolve_lindblad(hfn, DensityMatrix::pure(psi0), collapse, grid, cfg);
  }

  // Marginal over the readout qubits, any excited level reading as 1.
  const int nr = static_cast<int>(readout_sites.size());
  const Eigen::Index outcomes = Eigen::Index{1} << nr;
  Eigen::MatrixXd marginal = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(space.dim()), outcomes);
  for (std::size_t idx = 0; idx < space.dim(); ++idx) {
    const auto lv = space.levels_of(idx);
    Eigen::Index bits = 0;
    for (int r = 0; r < nr; ++r) bits = (bits << 1) | (lv[readout_sites[static_cast<std::size_t>(r)]] >= 1 ? 1 : 0);
    marginal(static_cast<Eigen::Index>(idx), bits) = 1.0;
  }

  TimeSeries out;
  out.times = full.times;
  out.max_norm_drift = full.max_norm_drift;
  out.min_eigenvalue = full.min_eigenvalue;
  for (Eigen::Index b = 0; b < outcomes; ++b) {
    std::string label = "p_";
    for (int r = nr - 1; r >= 0; --r) label += ((b >> r) & 1) ? '1' : '0';
    out.labels.push_back(label);
  }
  out.populations = full.populations * marginal;

  double most_negative = 0.0;
  int clipped = 0;
  if (opts.shots) {
    const ConfusionModel model = ConfusionModel::from_device(dev, readout);
    std::mt19937_64 rng(opts.seed);
    for (Eigen::Index r = 0; r < out.populations.rows(); ++r) {
      const RealVector truth = clean_distribution(out.populations.row(r).transpose());
      const RealVector measured = apply_readout(truth, model);
      const RealVector sampled = sample_counts(measured, *opts.shots, rng);
      const CorrectionResult corrected = correct_readout(sampled, model);
      most_negative = std::min(most_negative, corrected.most_negative);
      clipped += corrected.clipped ? 1 : 0;
      out.populations.row(r) = corrected.probabilities.transpose();
    }
  }

  out.metadata["drives"] = describe_drives(seq.drives);
  out.metadata["duration_us"] = format_number(seq.duration_us);
  out.metadata["step_us"] = format_number(opts.step_us);
  out.metadata["dt_us"] = format_number(opts.integrator.dt_us);
  out.metadata["levels"] = std::to_string(space.site_dim(0));
  out.metadata["noise"] = opts.noise == Noise::kNone ? "off" : "on";
  out.metadata["shots"] = opts.shots ? std::to_string(*opts.shots) : "exact";
  out.metadata["seed"] = std::to_string(opts.seed);
  {
    std::ostringstream prep;
    for (std::size_t s = 0; s < levels.size(); ++s) prep << levels[s];
    out.metadata["prep"] = prep.str();
  }
  if (opts.shots) {
    out.metadata["clipped_points"] = std::to_string(clipped);
    out.metadata["most_negative"] = format_number(most_negative);
  }
  return out;
}

TimeSeries run_repeated(const DeviceModel& device, const PulseSequence& seq, const RunOptions& opts, int repeats) {
  if (repeats < 1) throw InvalidArgument("run_repeated: repeats must be at least 1");
  std::vector<TimeSeries> runs(static_cast<std::size_t>(repeats));
  parallel_for(runs.size(), [&](std::size_t r) {
    RunOptions o = opts;
    o.seed = opts.seed + r;
    runs[r] = run_sequence(device, seq, o);
  });
  TimeSeries out = runs.front();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(out.populations.rows(), out.populations.cols());
  for (const auto& r : runs) sum += r.populations;
  out.populations = sum / repeats;
  out.stddev = Eigen::MatrixXd::Zero(sum.rows(), sum.cols());
  if (repeats > 1) {
    for (const auto& r : runs) out.stddev += (r.populations - out.populations).cwiseAbs2();
    out.stddev = (out.stddev / (repeats - 1)).cwiseSqrt();
  }
  out.metadata["repeats"] = std::to_string(repeats);
  return out;
}

double ScanResult::rms_error() const {
  if (axis.empty()) return 0.0;
  double s = 0.0;
  for (std::size_t k = 0; k < axis.size(); ++k) s += (geff_mhz[k] - analytic_mhz[k]) * (geff_mhz[k] - analytic_mhz[k]);
  return std::sqrt(s / static_cast<double>(axis.size()));
}

namespace {

void check_axis(const std::vector<double>& grid, const char* what) {
  if (grid.empty()) throw InvalidArgument(std::string(what) + ": empty scan grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw InvalidArgument(std::string(what) + ": scan axis must increase strictly");
  }
}

ScanResult run_pair_scan(const DeviceModel& device, const ScanSettings& s, const std::vector<double>& grid,
                         const char* name, const std::function<std::vector<DriveSpec>(double)>& drives_at,
                         const std::function<double(double)>& analytic) {
  check_axis(grid, name);
  if (s.qubit_a == s.qubit_b) throw InvalidArgument(std::string(name) + ": scan needs two distinct qubits");
  if (!device.couplings.has(s.qubit_a, s.qubit_b))
    throw InvalidArgument(std::string(name) + ": qubits " + std::to_string(s.qubit_a) + " and " +
                          std::to_string(s.qubit_b) + " are not coupled");
  ScanResult result;
  result.axis = grid;
  result.geff_mhz.resize(grid.size());
  result.analytic_mhz.resize(grid.size());
  if (s.keep_traces) result.traces.resize(grid.size());

  RunOptions run = s.run;
  if (run.levels == 0) run.levels = 2;  // one excitation never reaches |2>
  ExtractOptions extract;
  extract.label = "p_01";
  // On the 4 ns grid the 2nu and 3nu micromotion alias to 50 MHz.
  extract.max_frequency_mhz = 0.4 * s.nu_mhz;
  parallel_for(grid.size(), [&](std::size_t k) {
    PulseSequence seq;
    seq.drives = drives_at(grid[k]);
    seq.prep = {{s.qubit_b, 1}};
    seq.duration_us = s.t_end_us;
    seq.readout = {s.qubit_a, s.qubit_b};
    RunOptions o = run;
    o.seed = run.seed + k;
    TimeSeries trace = run_sequence(device, seq, o);
    result.geff_mhz[k] = extract_geff(trace, extract);
    result.analytic_mhz[k] = std::abs(analytic(grid[k]));
    if (s.keep_traces) result.traces[k] = std::move(trace);
  });

  result.metadata["experiment"] = name;
  result.metadata["qubits"] = std::to_string(s.qubit_a) + "," + std::to_string(s.qubit_b);
  result.metadata["g_mhz"] = format_number(device.couplings.g(s.qubit_a, s.qubit_b));
  result.metadata["nu_mhz"] = format_number(s.nu_mhz);
  result.metadata["omega0_mhz"] = format_number(s.omega0_mhz);
  result.metadata["t_end_us"] = format_number(s.t_end_us);
  result.metadata["step_us"] = format_number(run.step_us);
  result.metadata["shots"] = run.shots ? std::to_string(*run.shots) : "exact";
  result.metadata["noise"] = run.noise == Noise::kNone ? "off" : "on";
  result.metadata["seed"] = std::to_string(run.seed);
  return result;
}

}  // namespace

ScanResult scan_dphi(const DeviceModel& device, const ScanSettings& s, const std::vector<double>& dphi_grid) {
  const double g = device.couplings.g(s.qubit_a, s.qubit_b);
  ScanResult r = run_pair_scan(
      device, s, dphi_grid, "scan_dphi",
      [&](double dphi) {
        return std::vector<DriveSpec>{{s.qubit_a, s.omega0_mhz, s.delta_mhz, s.nu_mhz, 0.0},
                                      {s.qubit_b, s.omega0_mhz, s.delta_mhz, s.nu_mhz, dphi}};
      },
      [&](double dphi) { return pairwise_geff(g, s.delta_mhz, s.nu_mhz, dphi); });
  r.axis_name = "dphi_rad";
  r.metadata["delta_mhz"] = format_number(s.delta_mhz);
  return r;
}

ScanResult scan_delta_single(const DeviceModel& device, const ScanSettings& s, const std::vector<double>& delta_grid) {
  const double g = device.couplings.g(s.qubit_a, s.qubit_b);
  ScanResult r = run_pair_scan(
      device, s, delta_grid, "scan_delta_single",
      [&](double delta) {
        return std::vector<DriveSpec>{{s.qubit_a, s.omega0_mhz, delta, s.nu_mhz, 0.0},
                                      {s.qubit_b, s.omega0_mhz, 0.0, s.nu_mhz, 0.0}};
      },
      [&](double delta) { return single_mod_geff(g, delta, s.nu_mhz); });
  r.axis_name = "delta_mhz";
  return r;
}

double locate_decoupling_zero(const ScanResult& scan, double lo, double hi) {
  std::vector<std::size_t> inside;
  for (std::size_t k = 0; k < scan.axis.size(); ++k) {
    if (scan.axis[k] >= lo && scan.axis[k] <= hi) inside.push_back(k);
  }
  if (inside.empty()) throw NumericalGuardError("locate_decoupling_zero: no scan points in the window");
  const std::size_t kmin = *std::min_element(inside.begin(), inside.end(), [&](std::size_t a, std::size_t b) {
    return scan.geff_mhz[a] < scan.geff_mhz[b];
  });
  constexpr std::size_t kFlank = 4;
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  for (auto it = inside.rbegin(); it != inside.rend() && left.size() < kFlank; ++it) {
    if (*it < kmin && scan.geff_mhz[*it] > 0.0) left.push_back(*it);
  }
  for (auto it = inside.begin(); it != inside.end() && right.size() < kFlank; ++it) {
    if (*it > kmin && scan.geff_mhz[*it] > 0.0) right.push_back(*it);
  }
  if (left.size() < 2 || right.size() < 2)
    throw NumericalGuardError("locate_decoupling_zero: minimum has fewer than two resolved points on a flank");
  auto fit = [&](const std::vector<std::size_t>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k : pts) {
      sx += scan.axis[k];
      sy += scan.geff_mhz[k];
      sxx += scan.axis[k] * scan.axis[k];
      sxy += scan.axis[k] * scan.geff_mhz[k];
    }
    const double n = static_cast<double>(pts.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::pair{(sy - slope * sx) / n, slope};
  };
  const auto [a1, b1] = fit(left);
  const auto [a2, b2] = fit(right);
  if (!(b1 < 0.0 && b2 > 0.0)) throw NumericalGuardError("locate_decoupling_zero: flanks do not form a V");
  return (a2 - a1) / (b1 - b2);
}

std::vector<DriveSpec> chiral_drives(Excitation excitation, double omega0_mhz, double nu_mhz) {
  const double delta_single[3] = {138.0, 140.0, 136.0};
  const double delta_double[3] = {135.0, 137.0, 133.0};
  const double phi[3] = {-0.1, kTwoPi / 3.0, 2.0 * kTwoPi / 3.0 + 0.1};
  const double offset[3] = {0.0, 0.7, 0.0};
  std::vector<DriveSpec> drives;
  for (int j = 0; j < 3; ++j) {
    const double delta = excitation == Excitation::kSingle ? delta_single[j] : delta_double[j];
    drives.push_back(DriveSpec{j, omega0_mhz + offset[j], delta, nu_mhz, phi[j]}.normalized());
  }
  return drives;
}

std::vector<std::string> chiral_route(Excitation excitation) {
  if (excitation == Excitation::kSingle) return {"p_001", "p_100", "p_010"};
  return {"p_011", "p_101", "p_110"};
}

TimeSeries chiral_experiment(const DeviceModel& device, const ChiralSettings& settings) {
  if (settings.levels != 2 && settings.levels != 3) throw InvalidArgument("chiral_experiment: levels must be 2 or 3");
  PulseSequence seq;
  seq.drives = settings.drives ? *settings.drives : chiral_drives(settings.excitation);
  if (seq.drives.size() != 3) throw InvalidArgument("chiral_experiment: the loop needs three drives");
  const int last = seq.drives[2].qubit;
  const int middle = seq.drives[1].qubit;
  if (settings.excitation == Excitation::kSingle) {
    seq.prep = {{last, 1}};
  } else {
    seq.prep = {{middle, 1}, {last, 1}};
  }
  seq.duration_us = settings.t_end_us;
  RunOptions run = settings.run;
  run.levels = settings.levels;
  TimeSeries out = run_sequence(device, seq, run);
  out.metadata["experiment"] =
      settings.excitation == Excitation::kSingle ? "chiral_single" : "chiral_double";
  if (settings.excitation == Excitation::kDouble && settings.levels == 2) out.metadata["warning"] = "two_level_double";
  return out;
}

namespace {

// Centered moving average over `window` samples, shrinking at the ends.
std::vector<double> boxcar(const std::vector<double>& y, std::size_t window) {
  if (window <= 1) return y;
  const std::size_t half = window / 2;
  std::vector<double> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    const std::size_t lo = k >= half ? k - half : 0;
    const std::size_t hi = std::min(y.size() - 1, lo + window - 1);
    double s = 0.0;
    for (std::size_t m = lo; m <= hi; ++m) s += y[m];
    out[k] = s / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace

ChiralAnalysis analyze_chiral(const TimeSeries& series, const std::vector<std::string>& route, double smoothing_us) {
  ChiralAnalysis a;
  a.route = route;
  std::size_t window = 1;
  if (smoothing_us > 0.0 && series.times.size() > 1) {
    const double dt = series.times[1] - series.times[0];
    window = static_cast<std::size_t>(std::lround(smoothing_us / dt));
  }
  // A lobe opens when y rises above the threshold and closes when it falls
  // below kLobeClose; its maximum is the population maximum. The hysteresis
  // keeps drive micromotion from splitting one rise into several lobes.
  auto first_lobe = [&](const std::vector<double>& y, std::size_t from) -> std::ptrdiff_t {
    std::ptrdiff_t best = -1;
    for (std::size_t k = from; k < y.size(); ++k) {
      if (best < 0) {
        if (y[k] > kMaximumThreshold) best = static_cast<std::ptrdiff_t>(k);
        continue;
      }
      if (y[k] < kLobeClose) return best;
      if (y[k] > y[static_cast<std::size_t>(best)]) best = static_cast<std::ptrdiff_t>(k);
    }
    // Still open at the end of the trace: only a maximum if it turned over.
    if (best >= 0 && static_cast<std::size_t>(best) + 1 == y.size()) return -1;
    return best;
  };
  for (std::size_t r = 0; r < route.size(); ++r) {
    const auto y = boxcar(series.trace(route[r]), window);
    std::size_t from = 0;
    if (r == 0) {
      // The return: wait until the initial population has left.
      from = y.size();
      for (std::size_t k = 0; k < y.size(); ++k) {
        if (y[k] < kLobeClose) {
          from = k;
          break;
        }
      }
    }
    const std::ptrdiff_t k = first_lobe(y, from);
    const double t = k < 0 ? -1.0 : series.times[static_cast<std::size_t>(k)];
    const double v = k < 0 ? 0.0 : y[static_cast<std::size_t>(k)];
    if (r == 0) {
      a.return_time = t;
      a.return_value = v;
      a.first_max_time.push_back(0.0);
      a.first_max_value.push_back(y.empty() ? 0.0 : y.front());
    } else {
      a.first_max_time.push_back(t);
      a.first_max_value.push_back(v);
    }
  }
  a.cyclic = a.return_time > 0.0;
  for (std::size_t r = 1; r < route.size(); ++r) {
    const double t = a.first_max_time[r];
    const double prev = a.first_max_time[r - 1];
    a.cyclic = a.cyclic && t > 0.0 && t > prev && t < a.return_time;
  }
  return a;
}

int scan_threads() {
  if (const char* env = std::getenv("FCS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(std::min<long>(v, 256));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(scan_threads()));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) body(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) {
        try {
          body(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fcs
