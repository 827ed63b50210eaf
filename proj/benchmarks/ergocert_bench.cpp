// Copyright 2026 The ergocert Authors
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


// Throughput of the numeric kernels behind each certificate, on seeded
// random chains of growing size.

#include <cstddef>
#include <vector>

#include <benchmark/benchmark.h>

#include "ergocert/harnack.hpp"
#include "ergocert/index_profile.hpp"
#include "ergocert/kernel.hpp"
#include "ergocert/phi.hpp"
#include "ergocert/scenario.hpp"
#include "ergocert/solver.hpp"
#include "ergocert/worst_set.hpp"

namespace {

using namespace ergocert;

Kernel Chain(benchmark::State& state) {
  const Bundle b = RandomChain(static_cast<std::size_t>(state.range(0)), 0.2, 7);
  return *b.kernel;
}

void BM_Power(benchmark::State& state) {
  const Kernel p = Chain(state);
  for (auto _ : state) benchmark::DoNotOptimize(Power(p, 1024).matrix().data());
}
BENCHMARK(BM_Power)->RangeMultiplier(2)->Range(16, 256);

void BM_Cesaro(benchmark::State& state) {
  const Kernel p = Chain(state);
  for (auto _ : state) benchmark::DoNotOptimize(Cesaro(p, 1000).matrix().data());
}
BENCHMARK(BM_Cesaro)->RangeMultiplier(2)->Range(16, 256);

void BM_SolveEigen(benchmark::State& state) {
  const Kernel p = Chain(state);
  for (auto _ : state) benchmark::DoNotOptimize(SolveEigen(p));
}
BENCHMARK(BM_SolveEigen)->RangeMultiplier(2)->Range(16, 256);

void BM_SolveCesaroAdjoint(benchmark::State& state) {
  const Kernel p = Chain(state);
  const Measure m = Measure::Uniform(p.space());
  for (auto _ : state) benchmark::DoNotOptimize(SolveCesaroAdjoint(p, m));
}
BENCHMARK(BM_SolveCesaroAdjoint)->RangeMultiplier(2)->Range(16, 128);

void BM_WorstSetSearch(benchmark::State& state) {
  const Kernel p = Chain(state);
  const Measure m = Measure::Uniform(p.space());
  const Phi phi = Phi::Linear(1.0);
  const Measure row = p.row(0);
  // Prefix scan only; the exhaustive cross-check is exponential.
  for (auto _ : state) benchmark::DoNotOptimize(WorstSetSearch(row, m, phi, 0).value);
}
BENCHMARK(BM_WorstSetSearch)->RangeMultiplier(4)->Range(16, 1024);

void BM_Knapsack(benchmark::State& state) {
  const Kernel p = Chain(state);
  const Vector values = p.matrix().row(0).transpose();
  const Vector weights = p.matrix().row(1).transpose() + Vector::Constant(values.size(), 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(Knapsack(values, weights, 0.25).value);
}
BENCHMARK(BM_Knapsack)->RangeMultiplier(2)->Range(16, 128);

void BM_IndexProfile(benchmark::State& state) {
  const Kernel p = Chain(state);
  const Measure m = Measure::Uniform(p.space());
  const std::vector<double> eps = DefaultEpsilonGrid(m);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeIndexProfile(p, m, eps, 64, IndexMethod::kFractional));
  }
}
BENCHMARK(BM_IndexProfile)->RangeMultiplier(2)->Range(16, 128);

void BM_HarnackConstant(benchmark::State& state) {
  // Mixed with the uniform kernel so both rows have full support; otherwise
  // the constant is +inf after the support check.
  const Kernel sparse = Chain(state);
  const std::size_t n = sparse.size();
  const Kernel uniform(sparse.space(), Matrix::Constant(n, n, 1.0 / static_cast<double>(n)));
  const std::vector<double> half(n, 0.5);
  const Kernel p = ConvexCombination(sparse, uniform, half);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeHarnackConstant(p, 0, 1, 2.0));
}
BENCHMARK(BM_HarnackConstant)->RangeMultiplier(4)->Range(16, 1024);

}  // namespace

BENCHMARK_MAIN();
