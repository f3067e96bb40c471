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

// Brute-force ground truth for the minimum error probability.
//
// Dual problem: minimise Tr C over Hermitian C = s 1 + v.sigma subject to
//   min eig(C - p_k rho_k) = s - p_k/2 - |v - a_k| >= 0,   a_k = p_k b_k / 2.
// Eliminating s leaves min_v max_k (p_k/2 + |v - a_k|): an additively
// weighted smallest enclosing ball of the points a_k.
//
// solve_dual runs multi-start local descent on an exact-penalty form of the
// constraints, then polishes the best point by solving the tight-constraint
// equations exactly on candidate active sets and checking the KKT
// multipliers. A polished point with non-negative multipliers is globally
// optimal because the problem is convex.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "qdisc/conditions.hpp"
#include "qdisc/ensemble.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/qubit.hpp"

namespace qdisc {

struct DualOptions {
  int restarts = 16;
  long iteration_budget = 100'000;  // per restart, all penalty stages
  double initial_penalty = 10.0;
  double penalty_growth = 10.0;
  int penalty_stages = 3;
  double initial_smoothing = 1e-2;
  double smoothing_decay = 1e-2;
};

struct DualResult {
  HermitianOp2 c_star;
  double p_error = 1.0;
  long iterations = 0;
  /// Smallest min eig(C - p_k rho_k); >= -1e-9 for a feasible result.
  double min_slack = 0.0;
  std::uint64_t seed = 0;
  int winning_restart = -1;
  /// Size of the active set certified by the polish step.
  std::size_t support = 0;
};

class DualSolveFailure : public NumericFailure {
 public:
  DualSolveFailure(const std::string& what, DualResult best)
      : NumericFailure(what), best_(best) {}
  const DualResult& best_iterate() const { return best_; }

 private:
  DualResult best_;
};

/// Deterministic for a fixed seed. Throws DualSolveFailure when no KKT point
/// is certified.
DualResult solve_dual(const Ensemble& e, std::uint64_t seed = 0, const DualOptions& opts = {});

/// Measurement stationary for the dual solution; certified with check_global.
/// Throws NumericFailure when no candidate active set verifies.
Povm recover_povm_from_dual(const DualResult& r, const Ensemble& e);

struct PrimalSearchResult {
  Povm povm;
  double p_error = 1.0;
};

/// Random rank-one measurements completed to POVMs and refined by stochastic
/// hill climbing. Only an upper bound on the optimum.
PrimalSearchResult primal_random_search(const Ensemble& e, std::uint64_t seed, int restarts = 8,
                                        int iterations_per_restart = 4000);

nlohmann::json to_json(const DualResult& r);

}  // namespace qdisc
