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

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "fcs/dynamics.hpp"

namespace fcs {

// "# key=value" lines, a header row and rows of %.9g values.
struct Table {
  std::map<std::string, std::string> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double value);
void write_csv(std::ostream& out, const Table& table);
std::string to_csv(const Table& table);
Table read_csv(const std::string& text);

// t_us followed by one column per label; stddev columns ("sd_<label>") when present.
Table table_from_series(const TimeSeries& series);

}  // namespace fcs
