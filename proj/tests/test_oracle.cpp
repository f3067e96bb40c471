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
#include <catch_amalgamated.hpp>

#include "qdisc/oracle.hpp"
#include "qdisc/solver.hpp"
#include "test_helpers.hpp"

using namespace qdisc;
using namespace qdisc::testing;
using Catch::Approx;

TEST_CASE("dual examples", "[oracle]") {
  SECTION("orthogonal states") {
    const Ensemble e = Ensemble::equiprobable({pure_at(0, 0), pure_at(kPi, 0)});
    const DualResult r = solve_dual(e);
    CHECK(r.p_error == Approx(0.0).margin(1e-8));
    CHECK(coefficient_distance(r.c_star, 0.5 * HermitianOp2::identity()) <= 1e-8);
  }
  SECTION("trine") {
    const DualResult r = solve_dual(trine());
    CHECK(r.p_error == Approx(1.0 / 3.0).margin(1e-8));
    CHECK(r.min_slack >= -1e-9);
    CHECK(r.p_error == Approx(1.0 - r.c_star.trace()).margin(1e-12));
  }
  SECTION("identical states") {
    const DensityOp rho = pure_at(0.9, 0.1);
    const DualResult r = solve_dual(Ensemble::equiprobable({rho, rho}));
    CHECK(r.p_error == Approx(0.5).margin(1e-8));
    CHECK(coefficient_distance(r.c_star, 0.5 * rho.op()) <= 1e-8);
  }
  SECTION("tetrahedron") {
    CHECK(solve_dual(tetrahedron()).p_error == Approx(0.5).margin(1e-8));
  }
}

TEST_CASE("dual is deterministic per seed", "[oracle]") {
  std::mt19937_64 rng(9);
  const Ensemble e = random_general_ensemble(rng, 5);
  const DualResult a = solve_dual(e, 42);
  const DualResult b = solve_dual(e, 42);
  CHECK(a.c_star.scalar == b.c_star.scalar);
  CHECK(a.c_star.bloch == b.c_star.bloch);
  CHECK(a.p_error == b.p_error);
  CHECK(a.iterations == b.iterations);
  CHECK(a.winning_restart == b.winning_restart);
  CHECK(a.seed == 42);
}

TEST_CASE("dual agrees with the constructive solver", "[oracle]") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 60; ++i) {
    const Ensemble e = random_pure_ensemble(rng, 2 + static_cast<std::size_t>(i % 6));
    const auto sol = solve(e);
    const DualResult r = solve_dual(e, static_cast<std::uint64_t>(i));
    REQUIRE(r.p_error == Approx(sol.p_error).margin(1e-6));
    REQUIRE(r.min_slack >= -1e-9);
  }
}

TEST_CASE("POVM recovery from the dual", "[oracle]") {
  SECTION("trine") {
    const Ensemble e = trine();
    const Povm p = recover_povm_from_dual(solve_dual(e), e);
    CHECK(check_global(p, e).verdict == Verdict::kOptimal);
    for (const auto& el : p.elements()) CHECK(el.weight() == Approx(2.0 / 3.0).margin(1e-7));
  }
  SECTION("two states") {
    const Ensemble e = Ensemble::equiprobable({pure_at(0, 0), pure_at(kPi / 2, 0)});
    const Povm p = recover_povm_from_dual(solve_dual(e), e);
    CHECK(check_global(p, e).verdict == Verdict::kOptimal);
    const Vec3 d = (e.state(0).bloch_vector() - e.state(1).bloch_vector()).normalized();
    CHECK(coefficient_distance(p.element(0).op(), projector(d)) <= 1e-7);
    CHECK(coefficient_distance(p.element(1).op(), projector(-d)) <= 1e-7);
  }
  SECTION("tetrahedron") {
    const Ensemble e = tetrahedron();
    const Povm p = recover_povm_from_dual(solve_dual(e), e);
    CHECK(check_global(p, e).verdict == Verdict::kOptimal);
    for (const auto& el : p.elements()) CHECK(el.weight() == Approx(0.5).margin(1e-7));
  }
  SECTION("random mixed ensembles with unequal priors") {
    std::mt19937_64 rng(27);
    for (int i = 0; i < 40; ++i) {
      const Ensemble e = random_general_ensemble(rng, 2 + static_cast<std::size_t>(i % 5));
      const DualResult r = solve_dual(e, static_cast<std::uint64_t>(i));
      const Povm p = recover_povm_from_dual(r, e);
      REQUIRE(check_global(p, e).verdict == Verdict::kOptimal);
      REQUIRE(error_probability(p, e) == Approx(r.p_error).margin(1e-8));
    }
  }
}

TEST_CASE("primal search", "[oracle]") {
  SECTION("orthogonal states") {
    const Ensemble e = Ensemble::equiprobable({pure_at(0, 0), pure_at(kPi, 0)});
    CHECK(primal_random_search(e, 0).p_error <= 1e-9);
  }
  SECTION("trine") {
    CHECK(primal_random_search(trine(), 0).p_error <= 1.0 / 3.0 + 1e-4);
  }
  SECTION("never beats the dual") {
    std::mt19937_64 rng(33);
    for (int i = 0; i < 20; ++i) {
      const Ensemble e = random_general_ensemble(rng, 2 + static_cast<std::size_t>(i % 4));
      const auto found = primal_random_search(e, static_cast<std::uint64_t>(i), 2, 800);
      REQUIRE(found.p_error >= solve_dual(e).p_error - 1e-6);
      REQUIRE(found.p_error == Approx(error_probability(found.povm, e)).margin(1e-12));
    }
  }
}
