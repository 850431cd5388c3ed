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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fcs::cli {

// Resolved settings of one `run`. Unset overrides fall back to the
// experiment preset or the device file.
struct RunConfig {
  std::string experiment;
  std::string device = "reference";
  std::filesystem::path out = ".";
  std::uint64_t seed = 20260101;
  std::optional<int> shots = 3000;  // nullopt: exact probabilities
  bool noise = false;
  std::optional<double> nu;
  std::optional<double> delta;
  std::optional<double> dphi;
  std::optional<double> g;
  std::optional<double> eta;
  std::optional<int> levels;
};

const std::vector<std::string>& experiment_names();

// Reads a JSON object with any of the RunConfig keys; throws
// InvalidArgument naming the offending key.
RunConfig load_run_config(const std::filesystem::path& path);

// "exact" or a positive integer.
std::optional<int> parse_shots(const std::string& text);

// Command line reproducing `config`; stored in every CSV.
std::string command_line(const RunConfig& config);

// Runs the experiment and writes <experiment>.csv and .svg into config.out.
// Reports go to `log`. Throws fcs errors; main maps them to exit codes.
void run_experiment(const RunConfig& config, std::ostream& log);

}  // namespace fcs::cli
