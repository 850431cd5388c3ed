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

#include "fcs/csv.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fcs/errors.hpp"

namespace fcs {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return buf;
}

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& [key, value] : table.metadata) out << "# " << key << '=' << value << '\n';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) throw InvalidArgument("write_csv: row width differs from header");
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  write_csv(out, table);
  return out.str();
}

Table read_csv(const std::string& text) {
  Table table;
  std::istringstream in(text);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw InvalidArgument("read_csv: metadata line without '='");
      table.metadata[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    if (!header) {
      table.columns = cells;
      header = true;
      continue;
    }
    if (cells.size() != table.columns.size()) throw InvalidArgument("read_csv: ragged row");
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(std::stod(c));
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table table_from_series(const TimeSeries& series) {
  Table table;
  table.metadata = series.metadata;
  table.columns.push_back("t_us");
  for (const auto& l : series.labels) table.columns.push_back(l);
  const bool sd = series.stddev.size() > 0;
  if (sd) {
    for (const auto& l : series.labels) table.columns.push_back("sd_" + l);
  }
  for (std::size_t r = 0; r < series.times.size(); ++r) {
    std::vector<double> row{series.times[r]};
    const auto ri = static_cast<Eigen::Index>(r);
    for (Eigen::Index c = 0; c < series.populations.cols(); ++c) row.push_back(series.populations(ri, c));
    if (sd) {
      for (Eigen::Index c = 0; c < series.stddev.cols(); ++c) row.push_back(series.stddev(ri, c));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace fcs
