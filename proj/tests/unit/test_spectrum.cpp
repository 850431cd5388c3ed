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

#include <cmath>
#include <vector>

#include "fcs/errors.hpp"
#include "fcs/experiments.hpp"
#include "fcs/floquet.hpp"
#include "fcs/spectrum.hpp"

using namespace fcs;

namespace {

TimeSeries synthetic(double t_end, double step, const std::function<double(double)>& p) {
  TimeSeries ts;
  ts.times = uniform_grid(t_end, step);
  ts.labels = {"p_01"};
  ts.populations.resize(static_cast<Eigen::Index>(ts.times.size()), 1);
  for (std::size_t i = 0; i < ts.times.size(); ++i) ts.populations(static_cast<Eigen::Index>(i), 0) = p(ts.times[i]);
  return ts;
}

}  // namespace

TEST_CASE("closed-form oscillation") {
  for (double g : {3.0, 10.0, 12.7}) {
    const TimeSeries ts = synthetic(1.0, 0.004, [g](double t) { return std::pow(std::cos(kTwoPi * g * t), 2); });
    CHECK(extract_geff(ts) == doctest::Approx(g).epsilon(0.2 / g));
  }
}

TEST_CASE("constant trace is decoupled") {
  CHECK(extract_geff(synthetic(1.0, 0.004, [](double) { return 1.0; })) == 0.0);
  const SpectrumPeak p = dominant_frequency(uniform_grid(1.0, 0.004), std::vector<double>(251, 0.3));
  CHECK(!p.resolved);
}

TEST_CASE("peak location ignores offset and scale") {
  const auto base = [](double t) { return std::pow(std::cos(kTwoPi * 7.3 * t), 2); };
  const double ref = extract_geff(synthetic(1.0, 0.004, base));
  for (double scale : {0.5, 0.75, 1.0}) {
    for (double offset : {-0.2, 0.0, 0.4}) {
      const double got = extract_geff(synthetic(1.0, 0.004, [&](double t) { return offset + scale * base(t); }));
      CHECK(std::abs(got - ref) < 1e-9);
    }
  }
}

TEST_CASE("band cap and drift rejection") {
  // a 40 MHz component beyond a 30 MHz band is not reported
  ExtractOptions capped;
  capped.max_frequency_mhz = 30.0;
  const TimeSeries fast = synthetic(1.0, 0.004, [](double t) { return std::pow(std::cos(kTwoPi * 20.0 * t), 2); });
  CHECK(extract_geff(fast, capped) == 0.0);
  CHECK(extract_geff(fast) == doctest::Approx(20.0).epsilon(0.01));
  // less than one cycle over the span reads as a drift
  CHECK(extract_geff(synthetic(1.0, 0.004, [](double t) { return 0.5 + 0.5 * std::cos(kTwoPi * 0.3 * t); })) == 0.0);
}

TEST_CASE("grid checks") {
  CHECK_THROWS_AS(extract_geff(synthetic(0.2, 0.004, [](double) { return 0.0; })), InvalidArgument);
  CHECK_THROWS_WITH_AS(extract_geff(synthetic(0.5, 0.002, [](double) { return 0.0; })), doctest::Contains("at least 0.75"),
                       InvalidArgument);
  std::vector<double> t = uniform_grid(1.0, 0.004);
  t[10] += 0.001;
  CHECK_THROWS_AS(dominant_frequency(t, std::vector<double>(t.size(), 0.0)), InvalidArgument);
  ExtractOptions other;
  other.label = "p_10";
  CHECK_THROWS_AS(extract_geff(synthetic(1.0, 0.004, [](double) { return 0.0; }), other), InvalidArgument);
}

TEST_CASE("full simulation at dphi = pi") {
  const DeviceModel d = reference_device().uniform_g(12.7).with_levels(2);
  ScanSettings s;
  const ScanResult r = scan_dphi(d, s, {kPi});
  REQUIRE(r.geff_mhz.size() == 1);
  CHECK(std::abs(r.geff_mhz[0] - std::abs(pairwise_geff(12.7, 138.0, 100.0, kPi))) < 0.3);
}
