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

#include <stdexcept>
#include <string>

namespace fcs {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: dimension mismatches, unknown sites, bad ranges.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Device document failed validation; key() names the offending entry,
// e.g. "qubits[1].t1_us".
class DeviceParseError : public Error {
 public:
  DeviceParseError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// Numerical guard tripped (resonant denominators, inconsistent data).
class NumericalGuardError : public Error {
 public:
  using Error::Error;
};

// |n nu + eta| fell below the resonance guard for harmonic `n`.
class ResonanceError : public NumericalGuardError {
 public:
  ResonanceError(int n, const std::string& what)
      : NumericalGuardError(what), harmonic_(n) {}
  int harmonic() const noexcept { return harmonic_; }

 private:
  int harmonic_;
};

}  // namespace fcs
