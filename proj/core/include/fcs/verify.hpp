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

#include <ostream>
#include <string>
#include <vector>

namespace fcs {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<std::string> tags;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;
};

struct VerifyOptions {
  std::string filter;            // keep criteria carrying this tag; empty keeps all
  bool mutate_chi_sign = false;  // flips the sign of chi inside the checks
};

std::vector<int> criterion_ids();
std::vector<std::string> criterion_tags(int id);
bool criterion_matches(int id, const std::string& filter);

// Failing checks and exceptions both become pass = false with the reason in
// detail; a run slower than its limit fails too.
CriterionResult run_criterion(int id, const VerifyOptions& opts = {});
std::vector<CriterionResult> run_verify(const VerifyOptions& opts, std::ostream* progress = nullptr);

std::string format_result(const CriterionResult& result);

}  // namespace fcs
