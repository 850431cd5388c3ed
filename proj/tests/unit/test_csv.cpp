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


#include <doctest.h>

#include <string>

#include "fcs/csv.hpp"
#include "fcs/errors.hpp"

using namespace fcs;

TEST_CASE("number formatting uses nine significant digits") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(0.1234567891234) == "0.123456789");
  CHECK(format_number(238.5432109876) == "238.543211");
  CHECK(format_number(-1.5e-12) == "-1.5e-12");
}

TEST_CASE("table round trip") {
  Table t;
  t.metadata = {{"seed", "42"}, {"device", "reference"}};
  t.columns = {"t_us", "p_01", "p_10"};
  t.rows = {{0.0, 1.0, 0.0}, {0.004, 0.987654321, 0.012345679}};
  const std::string text = to_csv(t);
  CHECK(text.rfind("# device=reference\n# seed=42\nt_us,p_01,p_10\n0,1,0\n", 0) == 0);
  const Table back = read_csv(text);
  CHECK(back.metadata == t.metadata);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(to_csv(back) == text);
}

TEST_CASE("series tables carry stddev columns when present") {
  TimeSeries s;
  s.times = {0.0, 0.5};
  s.labels = {"p_0", "p_1"};
  s.populations.resize(2, 2);
  s.populations << 1.0, 0.0, 0.25, 0.75;
  CHECK(table_from_series(s).columns == std::vector<std::string>{"t_us", "p_0", "p_1"});
  s.stddev = Eigen::MatrixXd::Constant(2, 2, 0.01);
  const Table t = table_from_series(s);
  CHECK(t.columns == std::vector<std::string>{"t_us", "p_0", "p_1", "sd_p_0", "sd_p_1"});
  CHECK(t.rows[1] == std::vector<double>{0.5, 0.25, 0.75, 0.01, 0.01});
}

TEST_CASE("malformed input") {
  Table t;
  t.columns = {"a", "b"};
  t.rows = {{1.0}};
  CHECK_THROWS_AS(to_csv(t), InvalidArgument);
  CHECK_THROWS_AS(read_csv("a,b\n1,2,3\n"), InvalidArgument);
  CHECK_THROWS_AS(read_csv("# broken\na\n1\n"), InvalidArgument);
}
