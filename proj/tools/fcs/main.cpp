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

// fcs: run experiment presets and the acceptance checks.
//
// Exit status: 0 success, 1 configuration or validation error, 2 numerical
// guard (resonant kappa', non-physical corrected probabilities, ...).

#include <algorithm>
#include <iostream>

#include <CLI11.hpp>

#include "fcs/errors.hpp"
#include "fcs/verify.hpp"
#include "run.hpp"

namespace {

int verify(const std::string& filter, const std::vector<int>& only, bool mutate) {
  fcs::VerifyOptions opts;
  opts.filter = filter;
  opts.mutate_chi_sign = mutate;
  bool all = true;
  int ran = 0;
  for (int id : fcs::criterion_ids()) {
    if (!fcs::criterion_matches(id, filter)) continue;
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const fcs::CriterionResult r = fcs::run_criterion(id, opts);
    std::cout << fcs::format_result(r) << std::endl;
    all = all && r.pass;
    ++ran;
  }
  if (ran == 0) {
    std::cerr << "fcs verify: no criterion matches\n";
    return 1;
  }
  std::cout << (all ? "all " : "not all ") << ran << " criteria passed\n";
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floquet-engineered chiral dynamics simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment and write <experiment>.csv and <experiment>.svg");
  std::string experiment;
  std::optional<std::string> device;
  std::optional<std::string> config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> shots;
  std::optional<std::string> noise;
  bool exact = false;
  fcs::cli::RunConfig flags;
  run->add_option("--experiment", experiment, "scan_dphi | scan_delta_single | chiral_single | chiral_double | calibrate | heff_report");
  run->add_option("--device", device, "device JSON file, or reference for the bundled device");
  run->add_option("--config", config_path, "JSON run config; command-line flags take precedence");
  run->add_option("--out", out, "output directory");
  run->add_option("--seed", seed, "base seed for shot sampling");
  run->add_option("--shots", shots, "shots per point, or exact");
  run->add_flag("--exact", exact, "exact probabilities, no sampling");
  run->add_option("--noise", noise, "Lindblad noise: on | off")->check(CLI::IsMember({"on", "off"}));
  run->add_option("--nu", flags.nu, "modulation frequency (MHz)");
  run->add_option("--delta", flags.delta, "modulation amplitude (MHz)");
  run->add_option("--dphi", flags.dphi, "relative drive phase (rad)");
  run->add_option("--g", flags.g, "uniform coupling override (MHz)");
  run->add_option("--eta", flags.eta, "anharmonicity (MHz)");
  run->add_option("--levels", flags.levels, "levels per transmon: 2 | 3");

  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  std::string filter;
  std::vector<int> only;
  std::string mutate;
  ver->add_option("--filter", filter, "only criteria carrying this tag");
  ver->add_option("--criterion", only, "only these criterion numbers");
  ver->add_option("--mutate", mutate)->group("")->check(CLI::IsMember({"chi_sign"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (ver->parsed()) {
    try {
      return verify(filter, only, mutate == "chi_sign");
    } catch (const std::exception& e) {
      std::cerr << "fcs verify: " << e.what() << '\n';
      return 1;
    }
  }

  try {
    fcs::cli::RunConfig c = config_path ? fcs::cli::load_run_config(*config_path) : fcs::cli::RunConfig{};
    if (!experiment.empty()) c.experiment = experiment;
    if (c.experiment.empty()) throw fcs::InvalidArgument("--experiment is required");
    if (device) c.device = *device;
    if (out) c.out = *out;
    if (seed) c.seed = *seed;
    if (shots) c.shots = fcs::cli::parse_shots(*shots);
    if (exact) {
      if (shots && *shots != "exact") throw fcs::InvalidArgument("--exact conflicts with --shots " + *shots);
      c.shots = std::nullopt;
    }
    if (noise) c.noise = *noise == "on";
    if (flags.nu) c.nu = flags.nu;
    if (flags.delta) c.delta = flags.delta;
    if (flags.dphi) c.dphi = flags.dphi;
    if (flags.g) c.g = flags.g;
    if (flags.eta) c.eta = flags.eta;
    if (flags.levels) c.levels = flags.levels;
    fcs::cli::run_experiment(c, std::cout);
    return 0;
  } catch (const fcs::NumericalGuardError& e) {
    std::cerr << "fcs run: numerical guard: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "fcs run: " << e.what() << '\n';
    return 1;
  }
}
