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

#include "run.hpp"

#include <cmath>
#include <fstream>
#include <algorithm>
#include <functional>
#include <sstream>

#include <json.hpp>

#include "fcs/calibrate.hpp"
#include "fcs/csv.hpp"
#include "fcs/errors.hpp"
#include "fcs/experiments.hpp"
#include "fcs/floquet.hpp"
#include "fcs/hambuild.hpp"
#include "svg.hpp"

namespace fcs::cli {

namespace {

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

DeviceModel resolve_device(const RunConfig& c) {
  DeviceModel device = c.device == "reference" ? reference_device() : load_device_file(c.device);
  if (c.g) device = device.uniform_g(*c.g);
  return device;
}

RunOptions run_options(const RunConfig& c) {
  RunOptions o;
  o.noise = c.noise ? Noise::kLindblad : Noise::kNone;
  o.shots = c.shots;
  o.seed = c.seed;
  if (c.levels) o.levels = *c.levels;
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f) throw InvalidArgument("cannot write " + path.string());
}

struct Artifacts {
  Table table;
  svg::Plot plot;
};

Artifacts series_artifacts(const TimeSeries& ts, const std::vector<std::string>& columns, const std::string& title) {
  Artifacts a;
  a.table.metadata = ts.metadata;
  a.table.columns.push_back("t_us");
  for (const auto& c : columns) a.table.columns.push_back(c);
  std::vector<std::vector<double>> traces;
  for (const auto& c : columns) traces.push_back(ts.trace(c));
  for (std::size_t r = 0; r < ts.times.size(); ++r) {
    std::vector<double> row{ts.times[r]};
    for (const auto& t : traces) row.push_back(t[r]);
    a.table.rows.push_back(std::move(row));
  }
  a.plot.title = title;
  a.plot.x_label = "T (us)";
  a.plot.y_label = "population";
  for (std::size_t k = 0; k < columns.size(); ++k)
    a.plot.series.push_back({columns[k], ts.times, traces[k], kColors[k % 8], false});
  return a;
}

Artifacts scan_artifacts(const ScanResult& r, const std::function<double(double)>& analytic, const std::string& title,
                         const std::string& x_label) {
  Artifacts a;
  a.table.metadata = r.metadata;
  a.table.columns = {r.axis_name, "geff_mhz", "analytic_mhz"};
  for (std::size_t k = 0; k < r.axis.size(); ++k) a.table.rows.push_back({r.axis[k], r.geff_mhz[k], r.analytic_mhz[k]});
  std::vector<double> fx;
  std::vector<double> fy;
  const double lo = r.axis.front();
  const double hi = r.axis.back();
  for (int k = 0; k <= 400; ++k) {
    const double x = lo + (hi - lo) * k / 400.0;
    fx.push_back(x);
    fy.push_back(std::abs(analytic(x)));
  }
  a.plot.title = title;
  a.plot.x_label = x_label;
  a.plot.y_label = "|g_eff| (MHz)";
  a.plot.series.push_back({"analytic", fx, fy, kColors[0], false});
  a.plot.series.push_back({"simulated", r.axis, r.geff_mhz, kColors[1], true});
  return a;
}

std::vector<DriveSpec> chiral_preset(const RunConfig& c, Excitation ex) {
  std::vector<DriveSpec> drives = chiral_drives(ex, 4990.0, c.nu.value_or(100.0));
  for (std::size_t j = 0; j < drives.size(); ++j) {
    if (c.delta) drives[j].delta_mhz = *c.delta;
    if (c.dphi) drives[j].phi_rad = static_cast<double>(j) * *c.dphi;
    drives[j] = drives[j].normalized();
  }
  return drives;
}

Artifacts run_scan_dphi(const RunConfig& c) {
  const DeviceModel device = resolve_device(c);
  ScanSettings s;
  s.nu_mhz = c.nu.value_or(100.0);
  s.delta_mhz = c.delta.value_or(138.0);
  s.run = run_options(c);
  std::vector<double> grid;
  for (int k = 0; k <= 24; ++k) grid.push_back(kTwoPi * k / 24.0);
  const ScanResult r = scan_dphi(device, s, grid);
  const double g = device.couplings.g(s.qubit_a, s.qubit_b);
  return scan_artifacts(
      r, [&](double x) { return pairwise_geff(g, s.delta_mhz, s.nu_mhz, x); }, "two-qubit modulation", "dphi (rad)");
}

Artifacts run_scan_delta_single(const RunConfig& c) {
  const DeviceModel device = resolve_device(c);
  ScanSettings s;
  s.nu_mhz = c.nu.value_or(100.0);
  s.run = run_options(c);
  std::vector<double> grid;
  for (int k = 0; k <= 50; ++k) grid.push_back(6.0 * k);
  const ScanResult r = scan_delta_single(device, s, grid);
  const double g = device.couplings.g(s.qubit_a, s.qubit_b);
  return scan_artifacts(
      r, [&](double x) { return single_mod_geff(g, x, s.nu_mhz); }, "single-qubit modulation", "delta (MHz)");
}

Artifacts run_chiral(const RunConfig& c, Excitation ex) {
  const DeviceModel device = resolve_device(c);
  ChiralSettings cs;
  cs.excitation = ex;
  cs.levels = c.levels.value_or(ex == Excitation::kSingle ? 2 : 3);
  cs.run = run_options(c);
  cs.run.step_us = 0.002;
  cs.run.levels = cs.levels;
  cs.drives = chiral_preset(c, ex);
  const TimeSeries ts = chiral_experiment(device, cs);
  const auto route = chiral_route(ex);
  return series_artifacts(ts, {route[1], route[2], route[0]},
                          ex == Excitation::kSingle ? "single-excitation chiral dynamics"
                                                    : "double-excitation chiral dynamics");
}

Artifacts run_calibrate(const RunConfig& c, std::ostream& log) {
  const DeviceModel device = resolve_device(c);
  CalibrationOptions opts;
  opts.nu_mhz = c.nu.value_or(100.0);
  const CalibrationResult r = calibrate(device, opts);
  log << "step A: single-modulation zero at delta = " << format_number(r.delta_single_mhz) << " MHz ("
      << format_number(r.delta_single_mhz / opts.nu_mhz) << " nu)\n";
  log << "step B: pair decoupled at dphi = " << format_number(r.dphi_rad) << " rad with delta = "
      << format_number(r.delta_pair_mhz) << " MHz\n";
  log << "step C: mean chiral maximum " << format_number(r.objective_start) << " -> "
      << format_number(r.objective_final) << " after " << r.evaluations << " evaluations\n";

  ChiralSettings cs;
  cs.drives = r.drives;
  const TimeSeries ts = chiral_experiment(device, cs);
  Artifacts a = series_artifacts(ts, {"p_100", "p_010", "p_001"}, "chiral dynamics with calibrated drives");
  a.table = Table{};
  a.table.columns = {"qubit", "delta_mhz", "phi_rad", "omega0_mhz", "nu_mhz"};
  for (const auto& d : r.drives)
    a.table.rows.push_back({static_cast<double>(d.qubit), d.delta_mhz, d.phi_rad, d.omega0_mhz, d.nu_mhz});
  a.table.metadata["experiment"] = "calibrate";
  a.table.metadata["delta_single_mhz"] = format_number(r.delta_single_mhz);
  a.table.metadata["delta_pair_mhz"] = format_number(r.delta_pair_mhz);
  a.table.metadata["dphi_rad"] = format_number(r.dphi_rad);
  a.table.metadata["objective_start"] = format_number(r.objective_start);
  a.table.metadata["objective_final"] = format_number(r.objective_final);
  a.table.metadata["evaluations"] = std::to_string(r.evaluations);
  return a;
}

Artifacts run_heff_report(const RunConfig& c, std::ostream& log) {
  const DeviceModel device = resolve_device(c);
  const double g = c.g.value_or(12.7);
  const double delta = c.delta.value_or(138.0);
  const double nu = c.nu.value_or(100.0);
  const double eta = c.eta.value_or(device.has_qubit(1) ? device.qubit(1).eta_mhz : -234.0);
  const double f = delta / nu;
  const EffectiveReport rep = effective_hamiltonian(harmonic_components(g, delta, nu));
  const AnharmonicCoupling kp = kappa_prime(g, f, nu, eta);
  const double kappa = g * g * rep.beta / nu;
  const double first_step = 1.0 / (6.0 * std::sqrt(3.0) * kappa);
  const double ratio = kappa / (kappa + 0.5 * kp.lambda());

  auto line = [&](const char* key, double v) { log << key << " = " << format_number(v) << '\n'; };
  line("f", f);
  line("J0(sqrt3 f)", bessel_j(0, std::sqrt(3.0) * f));
  line("beta", rep.beta);
  line("kappa_mhz", kappa);
  line("kappa_projected_mhz", rep.kappa_mhz);
  line("residual", rep.chi_projection_residual);
  line("alpha_mhz", kp.alpha());
  line("lambda_mhz", kp.lambda());
  line("kappa_double_mhz", kappa + 0.5 * kp.lambda());
  line("first_step_us", first_step);
  line("cycle_ratio", ratio);

  const HilbertSpace space = HilbertSpace::qubits(3);
  TimeSeries ts = effective_evolution(rep.h_eff(), StateVector::basis(space, "001"), uniform_grid(1.0, 0.002));
  for (auto& l : ts.labels) l = "p_" + l;
  Artifacts a = series_artifacts(ts, {"p_100", "p_010", "p_001"}, "effective Hamiltonian evolution");
  a.table.metadata = {{"experiment", "heff_report"},
                      {"g_mhz", format_number(g)},
                      {"delta_mhz", format_number(delta)},
                      {"nu_mhz", format_number(nu)},
                      {"eta_mhz", format_number(eta)},
                      {"beta", format_number(rep.beta)},
                      {"kappa_mhz", format_number(kappa)},
                      {"kappa_projected_mhz", format_number(rep.kappa_mhz)},
                      {"residual", format_number(rep.chi_projection_residual)},
                      {"alpha_mhz", format_number(kp.alpha())},
                      {"lambda_mhz", format_number(kp.lambda())}};
  return a;
}

template <typename T>
void read_key(const nlohmann::json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  if (!j.at(key).is_number()) throw InvalidArgument(std::string("config: '") + key + "' must be a number");
  out = j.at(key).get<T>();
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"scan_dphi",     "scan_delta_single", "chiral_single",
                                              "chiral_double", "calibrate",         "heff_report"};
  return names;
}

std::optional<int> parse_shots(const std::string& text) {
  if (text == "exact") return std::nullopt;
  std::size_t used = 0;
  int n = 0;
  try {
    n = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || n <= 0) throw InvalidArgument("--shots must be a positive integer or 'exact', got '" + text + "'");
  return n;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("config " + path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw InvalidArgument("config: top level must be an object");
  static const std::vector<std::string> known{"experiment", "device", "out",   "seed", "shots", "noise",
                                              "nu",         "delta",  "dphi",  "g",    "eta",   "levels"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InvalidArgument("config: unknown key '" + key + "'");
  }
  RunConfig c;
  auto str = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    if (!j.at(key).is_string()) throw InvalidArgument(std::string("config: '") + key + "' must be a string");
    return j.at(key).get<std::string>();
  };
  if (auto v = str("experiment")) c.experiment = *v;
  if (auto v = str("device")) c.device = *v;
  if (auto v = str("out")) c.out = *v;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw InvalidArgument("config: 'seed' must be a non-negative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("shots")) {
    const auto& s = j.at("shots");
    if (s.is_string()) c.shots = parse_shots(s.get<std::string>());
    else if (s.is_number_integer()) c.shots = parse_shots(std::to_string(s.get<long long>()));
    else throw InvalidArgument("config: 'shots' must be an integer or \"exact\"");
  }
  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    if (n.is_boolean()) c.noise = n.get<bool>();
    else if (n == "on" || n == "off") c.noise = n == "on";
    else throw InvalidArgument("config: 'noise' must be \"on\" or \"off\"");
  }
  read_key(j, "nu", c.nu);
  read_key(j, "delta", c.delta);
  read_key(j, "dphi", c.dphi);
  read_key(j, "g", c.g);
  read_key(j, "eta", c.eta);
  read_key(j, "levels", c.levels);
  return c;
}

std::string command_line(const RunConfig& c) {
  std::ostringstream out;
  out << "fcs run --experiment " << c.experiment << " --device " << c.device << " --seed " << c.seed << " --shots "
      << (c.shots ? std::to_string(*c.shots) : "exact") << " --noise " << (c.noise ? "on" : "off");
  auto opt = [&](const char* flag, const std::optional<double>& v) {
    if (v) out << ' ' << flag << ' ' << format_number(*v);
  };
  opt("--nu", c.nu);
  opt("--delta", c.delta);
  opt("--dphi", c.dphi);
  opt("--g", c.g);
  opt("--eta", c.eta);
  if (c.levels) out << " --levels " << *c.levels;
  return out.str();
}

void run_experiment(const RunConfig& c, std::ostream& log) {
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), c.experiment) == names.end()) {
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown experiment '" + c.experiment + "'; valid: " + list);
  }
  if (c.levels && *c.levels != 2 && *c.levels != 3) throw InvalidArgument("--levels must be 2 or 3");
  if (c.nu && !(*c.nu > 0.0)) throw InvalidArgument("--nu must be positive");
  if (c.delta && !(*c.delta >= 0.0)) throw InvalidArgument("--delta must be non-negative");
  if (c.g && !(*c.g > 0.0)) throw InvalidArgument("--g must be positive");

  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec || !std::filesystem::is_directory(c.out)) throw InvalidArgument("output directory " + c.out.string() + " is not usable");

  Artifacts a;
  if (c.experiment == "scan_dphi") a = run_scan_dphi(c);
  else if (c.experiment == "scan_delta_single") a = run_scan_delta_single(c);
  else if (c.experiment == "chiral_single") a = run_chiral(c, Excitation::kSingle);
  else if (c.experiment == "chiral_double") a = run_chiral(c, Excitation::kDouble);
  else if (c.experiment == "calibrate") a = run_calibrate(c, log);
  else a = run_heff_report(c, log);

  a.table.metadata["experiment"] = c.experiment;
  a.table.metadata["command"] = command_line(c);
  a.table.metadata["device"] = c.device;
  const auto csv = c.out / (c.experiment + ".csv");
  const auto svg = c.out / (c.experiment + ".svg");
  write_file(csv, to_csv(a.table));
  write_file(svg, svg::render(a.plot));
  log << "wrote " << csv.string() << " and " << svg.string() << '\n';
}

}  // namespace fcs::cli
