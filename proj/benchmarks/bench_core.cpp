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


#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fcs/dynamics.hpp"
#include "fcs/experiments.hpp"
#include "fcs/floquet.hpp"
#include "fcs/spectrum.hpp"

using namespace fcs;

static void BM_BesselJ(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  double x = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_j(n, x));
    x = x < 40.0 ? x + 0.37 : 0.1;
  }
}
BENCHMARK(BM_BesselJ)->Arg(0)->Arg(5)->Arg(40);

static void BM_HarmonicComponents(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(harmonic_components(12.7, 138.0, 100.0, n_max));
}
BENCHMARK(BM_HarmonicComponents)->Arg(10)->Arg(20);

static void BM_EffectiveHamiltonian(benchmark::State& state) {
  const FloquetSeries series = harmonic_components(12.7, 138.0, 100.0);
  for (auto _ : state) benchmark::DoNotOptimize(effective_hamiltonian(series));
}
BENCHMARK(BM_EffectiveHamiltonian);

// One period of the three-qutrit loop, per integrator.
static void BM_PeriodPropagation(benchmark::State& state) {
  const auto method = state.range(0) == 0 ? IntegratorConfig::Method::kRungeKutta4
                                          : IntegratorConfig::Method::kPiecewiseExponential;
  const HamiltonianFn h = rotating_frame_hamiltonian(reference_device(), chiral_drives(Excitation::kDouble), 4990.0);
  const StateVector psi0 = StateVector::basis(h.space(), "011");
  const IntegratorConfig cfg{method, 5e-5};
  for (auto _ : state) benchmark::DoNotOptimize(propagate_state(h, psi0, 0.0, 0.01, cfg));
  state.SetLabel(state.range(0) == 0 ? "rk4" : "magnus");
}
BENCHMARK(BM_PeriodPropagation)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_ExtractGeff(benchmark::State& state) {
  TimeSeries ts;
  ts.times = uniform_grid(1.0, 0.004);
  ts.labels = {"p_01"};
  ts.populations.resize(static_cast<Eigen::Index>(ts.times.size()), 1);
  for (std::size_t i = 0; i < ts.times.size(); ++i)
    ts.populations(static_cast<Eigen::Index>(i), 0) = std::pow(std::cos(kTwoPi * 9.1 * ts.times[i]), 2);
  ExtractOptions opts;
  opts.padding = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(extract_geff(ts, opts));
}
BENCHMARK(BM_ExtractGeff)->Arg(1)->Arg(16)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
