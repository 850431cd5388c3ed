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

#include "fcs/device.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fcs/errors.hpp"
#include "fcs/qcore.hpp"

namespace fcs {

using nlohmann::json;

CouplingGraph::Edge CouplingGraph::key(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

void CouplingGraph::set(int a, int b, double g_mhz) {
  if (a == b) throw InvalidArgument("CouplingGraph: self-edge on qubit " + std::to_string(a));
  if (!(g_mhz > 0.0)) throw InvalidArgument("CouplingGraph: coupling must be positive");
  edges_[key(a, b)] = g_mhz;
}

double CouplingGraph::g(int a, int b) const {
  if (a == b) return 0.0;
  const auto it = edges_.find(key(a, b));
  return it == edges_.end() ? 0.0 : it->second;
}

bool CouplingGraph::has(int a, int b) const { return a != b && edges_.count(key(a, b)) > 0; }

const QubitSpec& DeviceModel::qubit(int id) const {
  for (const auto& q : qubits)
    if (q.id == id) return q;
  throw InvalidArgument("DeviceModel: unknown qubit id " + std::to_string(id));
}

bool DeviceModel::has_qubit(int id) const {
  return std::any_of(qubits.begin(), qubits.end(), [id](const QubitSpec& q) { return q.id == id; });
}

DeviceModel DeviceModel::uniform_g(double g_mhz) const {
  DeviceModel out = *this;
  for (const auto& [edge, g] : couplings.edges()) out.couplings.set(edge.first, edge.second, g_mhz);
  return out;
}

DeviceModel DeviceModel::with_levels(int levels) const {
  if (levels != 2 && levels != 3) throw InvalidArgument("DeviceModel: levels must be 2 or 3");
  DeviceModel out = *this;
  for (auto& q : out.qubits) q.levels = levels;
  return out;
}

DriveSpec DriveSpec::normalized() const {
  if (!(nu_mhz > 0.0)) throw InvalidArgument("DriveSpec: modulation frequency must be positive");
  if (!(delta_mhz >= 0.0)) throw InvalidArgument("DriveSpec: modulation amplitude must be non-negative");
  DriveSpec out = *this;
  out.phi_rad = std::fmod(phi_rad, kTwoPi);
  if (out.phi_rad < 0.0) out.phi_rad += kTwoPi;
  if (out.phi_rad >= kTwoPi) out.phi_rad = 0.0;
  return out;
}

double frequency_at(const DriveSpec& drive, double t_us) {
  return drive.omega0_mhz + drive.delta_mhz * std::cos(kTwoPi * drive.nu_mhz * t_us + drive.phi_rad);
}

namespace {

const json& require(const json& obj, const char* name, const std::string& path) {
  const auto it = obj.find(name);
  if (it == obj.end()) throw DeviceParseError(path + "." + name, "missing field");
  return *it;
}

double number(const json& obj, const char* name, const std::string& path) {
  const json& v = require(obj, name, path);
  if (!v.is_number()) throw DeviceParseError(path + "." + name, "expected a number");
  return v.get<double>();
}

std::optional<double> optional_number(const json& obj, const char* name, const std::string& path) {
  const auto it = obj.find(name);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw DeviceParseError(path + "." + name, "expected a number");
  return it->get<double>();
}

int integer(const json& obj, const char* name, const std::string& path) {
  const json& v = require(obj, name, path);
  if (!v.is_number_integer()) throw DeviceParseError(path + "." + name, "expected an integer");
  return v.get<int>();
}

QubitSpec parse_qubit(const json& q, const std::string& path) {
  if (!q.is_object()) throw DeviceParseError(path, "expected an object");
  QubitSpec spec;
  spec.id = integer(q, "id", path);
  spec.omega_idle_mhz = number(q, "omega_idle_mhz", path);
  spec.eta_mhz = number(q, "eta_mhz", path);
  spec.t1_us = number(q, "t1_us", path);
  spec.tphi_us = number(q, "tphi_us", path);
  spec.f0 = number(q, "f0", path);
  spec.f1 = number(q, "f1", path);
  spec.levels = integer(q, "levels", path);
  spec.omega_max_mhz = optional_number(q, "omega_max_mhz", path);
  spec.omega_readout_mhz = optional_number(q, "omega_readout_mhz", path);
  spec.t2star_us = optional_number(q, "t2star_us", path);

  if (!(spec.t1_us > 0.0)) throw DeviceParseError(path + ".t1_us", "must be positive");
  if (!(spec.tphi_us > 0.0)) throw DeviceParseError(path + ".tphi_us", "must be positive");
  if (!(spec.f0 > 0.0 && spec.f0 <= 1.0)) throw DeviceParseError(path + ".f0", "must lie in (0, 1]");
  if (!(spec.f1 > 0.0 && spec.f1 <= 1.0)) throw DeviceParseError(path + ".f1", "must lie in (0, 1]");
  if (spec.levels != 2 && spec.levels != 3) throw DeviceParseError(path + ".levels", "must be 2 or 3");
  return spec;
}

}  // namespace

DeviceModel load_device(const std::string& document) {
  json root;
  try {
    root = json::parse(document);
  } catch (const json::parse_error& e) {
    throw DeviceParseError("<document>", e.what());
  }
  if (!root.is_object()) throw DeviceParseError("<document>", "expected a top-level object");

  DeviceModel device;
  const json& qubits = require(root, "qubits", "");
  if (!qubits.is_array() || qubits.empty()) throw DeviceParseError(".qubits", "expected a non-empty array");
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const std::string path = "qubits[" + std::to_string(i) + "]";
    QubitSpec spec = parse_qubit(qubits[i], path);
    if (device.has_qubit(spec.id)) throw DeviceParseError(path + ".id", "duplicate qubit id");
    device.qubits.push_back(spec);
  }

  const json& couplings = require(root, "couplings", "");
  if (!couplings.is_array()) throw DeviceParseError(".couplings", "expected an array");
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    const std::string path = "couplings[" + std::to_string(i) + "]";
    const json& c = couplings[i];
    if (!c.is_object()) throw DeviceParseError(path, "expected an object");
    const int a = integer(c, "a", path);
    const int b = integer(c, "b", path);
    const double g = number(c, "g_mhz", path);
    if (!device.has_qubit(a)) throw DeviceParseError(path + ".a", "unknown qubit id");
    if (!device.has_qubit(b)) throw DeviceParseError(path + ".b", "unknown qubit id");
    if (a == b) throw DeviceParseError(path + ".b", "self-coupling");
    if (!(g > 0.0)) throw DeviceParseError(path + ".g_mhz", "must be positive");
    if (device.couplings.has(a, b) && device.couplings.g(a, b) != g)
      throw DeviceParseError(path + ".g_mhz", "asymmetric coupling: conflicts with an earlier entry for the same pair");
    device.couplings.set(a, b, g);
  }
  return device;
}

DeviceModel load_device_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DeviceParseError(path.string(), "cannot open device file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_device(buffer.str());
}

std::string serialize_device(const DeviceModel& device) {
  json root;
  root["qubits"] = json::array();
  for (const auto& q : device.qubits) {
    json obj = {{"id", q.id},         {"omega_idle_mhz", q.omega_idle_mhz},
                {"eta_mhz", q.eta_mhz}, {"t1_us", q.t1_us},
                {"tphi_us", q.tphi_us}, {"f0", q.f0},
                {"f1", q.f1},         {"levels", q.levels}};
    if (q.omega_max_mhz) obj["omega_max_mhz"] = *q.omega_max_mhz;
    if (q.omega_readout_mhz) obj["omega_readout_mhz"] = *q.omega_readout_mhz;
    if (q.t2star_us) obj["t2star_us"] = *q.t2star_us;
    root["qubits"].push_back(std::move(obj));
  }
  root["couplings"] = json::array();
  for (const auto& [edge, g] : device.couplings.edges())
    root["couplings"].push_back({{"a", edge.first}, {"b", edge.second}, {"g_mhz", g}});
  return root.dump(2) + "\n";
}

std::filesystem::path reference_device_path() { return std::filesystem::path(FCS_DATA_DIR) / "reference_device.json"; }

DeviceModel reference_device() { return load_device_file(reference_device_path()); }

}  // namespace fcs
