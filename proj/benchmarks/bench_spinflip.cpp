/* Copyright 2026 The Spinflip Authors. All Rights Reserved.
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at
    http://www.apache.org/licenses/LICENSE-2.0
Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <benchmark/benchmark.h>

#include <vector>

#include "spinflip/bloch.hpp"
#include "spinflip/interacting.hpp"
#include "spinflip/multispin.hpp"
#include "spinflip/optimize.hpp"

namespace {

using namespace spinflip;

void BM_IntegrateBloch(benchmark::State& state) {
  const auto field = ansatz_protocol(2.5, 3.0);
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto traj = integrate_bloch(BlochVector::north(), field, 2.0, steps);
    benchmark::DoNotOptimize(traj.back());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IntegrateBloch)->RangeMultiplier(4)->Range(256, 16384)->Complexity(benchmark::oN);

// One RK4 sweep advancing many spins together, the inner loop of Lambda.
void BM_Ensemble(benchmark::State& state) {
  const auto field = ansatz_protocol(2.0564, 20.0);
  const auto gammas = linspace(1.98, 2.02, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto finals = integrate_bloch_ensemble(BlochVector::north(), field, gammas, 4000);
    benchmark::DoNotOptimize(finals.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ensemble)->Arg(16)->Arg(64)->Arg(256);

void BM_AnsatzLambda(benchmark::State& state) {
  RobustnessOptions opts;
  opts.workers = 1;
  for (auto _ : state) benchmark::DoNotOptimize(ansatz_lambda(3.262, 20.0, 0.01, {}, opts));
}
BENCHMARK(BM_AnsatzLambda)->Unit(benchmark::kMillisecond);

void BM_BellFidelity(benchmark::State& state) {
  const double t_f = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bell_fidelity(t_f, 1.0, 2.0));
}
BENCHMARK(BM_BellFidelity)->Arg(3)->Arg(30)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
