// Copyright 2026 The qdisc Authors
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
#include <numbers>
#include <random>

#include "qdisc/simulator.hpp"
#include "qdisc/solver.hpp"

namespace {

using namespace qdisc;

Ensemble random_pure(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<DensityOp> states;
  for (std::size_t k = 0; k < n; ++k) {
    states.push_back(DensityOp::pure(BlochDirection::normalized(Vec3(g(rng), g(rng), g(rng)))));
  }
  return Ensemble::equiprobable(std::move(states));
}

Ensemble trine() {
  std::vector<DensityOp> states;
  for (int k = 0; k < 3; ++k) {
    states.push_back(DensityOp::pure(BlochDirection::from_angles(std::numbers::pi / 2, 2 * std::numbers::pi * k / 3)));
  }
  return Ensemble::equiprobable(std::move(states));
}

void BM_SolveTrine(benchmark::State& state) {
  const Ensemble e = trine();
  for (auto _ : state) benchmark::DoNotOptimize(solve(e).p_error);
}
BENCHMARK(BM_SolveTrine);

void BM_SolveRandomPure(benchmark::State& state) {
  const Ensemble e = random_pure(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(solve(e).p_error);
}
BENCHMARK(BM_SolveRandomPure)->Arg(3)->Arg(4)->Arg(6)->Arg(8)->Arg(12);

void BM_CheckGlobal(benchmark::State& state) {
  const Ensemble e = random_pure(static_cast<std::size_t>(state.range(0)), 2);
  const Povm p = solve(e).canonical_povm;
  for (auto _ : state) benchmark::DoNotOptimize(check_global(p, e).verdict);
}
BENCHMARK(BM_CheckGlobal)->Arg(3)->Arg(8)->Arg(32);

void BM_Simulate(benchmark::State& state) {
  const Ensemble e = trine();
  const Povm p = solve(e).canonical_povm;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(e, p, 100'000, 0, static_cast<unsigned>(state.range(0))).empirical_error);
  }
}
BENCHMARK(BM_Simulate)->Arg(1)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
