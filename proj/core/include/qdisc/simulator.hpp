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
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qdisc/conditions.hpp"
#include "qdisc/ensemble.hpp"

namespace qdisc {

/// Stateless counter-based generator: the output depends only on
/// (seed, counter), so trials can be evaluated in any order or partition.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t bits(std::uint64_t counter) const;
  /// Uniform in [0, 1) with 53 random bits.
  double uniform(std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

struct SimulationReport {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::uint64_t>> counts;  // counts[j][k]: prepared j, outcome k
  std::vector<std::vector<double>> confusion;      // row-normalised counts
  double empirical_error = 0.0;
  double analytic_error = 0.0;
  /// sqrt(P_e (1 - P_e) / trials) with the analytic P_e.
  double standard_error = 0.0;
};

/// Row j: Tr(Pi_k rho_j) over k, clamped and renormalised. Throws
/// ValidationError for probabilities below -1e-12.
std::vector<std::vector<double>> outcome_distribution(const Ensemble& e, const Povm& p);

/// Born-rule Monte Carlo. Trial i draws j ~ priors, then k ~ Tr(Pi_k rho_j),
/// using only (seed, i). Results are identical for any thread count.
SimulationReport simulate(const Ensemble& e, const Povm& p, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads = 1);

nlohmann::json to_json(const SimulationReport& r);
/// Comma-separated confusion matrix, one row per prepared state.
std::string confusion_csv(const SimulationReport& r);

}  // namespace qdisc
