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

#include <random>

#include "qdisc/oracle.hpp"

namespace {

using namespace qdisc;

Ensemble random_mixed(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<DensityOp> states;
  std::vector<double> priors;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    states.push_back(DensityOp::from_bloch_vector(u(rng) * Vec3(g(rng), g(rng), g(rng)).normalized()));
    priors.push_back(u(rng));
    total += priors.back();
  }
  double rest = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) rest -= (priors[k] /= total);
  priors.back() = rest;
  return Ensemble(std::move(states), std::move(priors));
}

void BM_SolveDual(benchmark::State& state) {
  const Ensemble e = random_mixed(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dual(e).p_error);
}
BENCHMARK(BM_SolveDual)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Arg(64);

void BM_RecoverPovm(benchmark::State& state) {
  const Ensemble e = random_mixed(static_cast<std::size_t>(state.range(0)), 4);
  const DualResult r = solve_dual(e);
  for (auto _ : state) benchmark::DoNotOptimize(recover_povm_from_dual(r, e).size());
}
BENCHMARK(BM_RecoverPovm)->Arg(4)->Arg(16);

}  // namespace
