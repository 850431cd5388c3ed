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

// Device model. Frequencies are linear frequencies in MHz (omega / 2pi),
// times in microseconds, phases in radians. Factors of 2pi are applied only
// when Hamiltonians are assembled.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fcs {

struct QubitSpec {
  int id = 0;
  double omega_idle_mhz = 0.0;
  double eta_mhz = 0.0;  // unused for two-level sites
  double t1_us = 1.0;
  double tphi_us = 1.0;
  double f0 = 1.0;
  double f1 = 1.0;
  int levels = 2;
  // Ingested for completeness; the simulator never reads these.
  std::optional<double> omega_max_mhz;
  std::optional<double> omega_readout_mhz;
  std::optional<double> t2star_us;

  bool operator==(const QubitSpec&) const = default;
};

// Undirected coupling graph keyed by (min id, max id).
class CouplingGraph {
 public:
  using Edge = std::pair<int, int>;

  void set(int a, int b, double g_mhz);
  double g(int a, int b) const;  // 0 when not coupled
  bool has(int a, int b) const;
  std::size_t size() const { return edges_.size(); }
  const std::map<Edge, double>& edges() const { return edges_; }

  bool operator==(const CouplingGraph&) const = default;

 private:
  static Edge key(int a, int b);
  std::map<Edge, double> edges_;
};

struct DeviceModel {
  std::vector<QubitSpec> qubits;
  CouplingGraph couplings;

  const QubitSpec& qubit(int id) const;
  bool has_qubit(int id) const;
  // Copy with every edge set to g_mhz, for comparisons with uniform-g analytics.
  DeviceModel uniform_g(double g_mhz) const;
  // Copy with every qubit truncated to `levels` (2 or 3).
  DeviceModel with_levels(int levels) const;

  bool operator==(const DeviceModel&) const = default;
};

// omega(t) = omega0 + delta cos(2pi nu t + phi).
struct DriveSpec {
  int qubit = 0;
  double omega0_mhz = 0.0;
  double delta_mhz = 0.0;
  double nu_mhz = 100.0;
  double phi_rad = 0.0;

  // Throws InvalidArgument on nu <= 0 or delta < 0; phi wrapped to [0, 2pi).
  DriveSpec normalized() const;
};

double frequency_at(const DriveSpec& drive, double t_us);

// Parses the JSON device document. Throws DeviceParseError naming the key.
DeviceModel load_device(const std::string& document);
DeviceModel load_device_file(const std::filesystem::path& path);
std::string serialize_device(const DeviceModel& device);

// Path of the bundled three-qubit reference device document.
std::filesystem::path reference_device_path();
DeviceModel reference_device();

}  // namespace fcs
