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

#include "qdisc/strategy.hpp"
#include "test_helpers.hpp"

using namespace qdisc;
using namespace qdisc::testing;
using Catch::Approx;

namespace {

std::vector<Vec3> equatorial(const std::vector<double>& longitudes) {
  std::vector<Vec3> out;
  for (double phi : longitudes) out.emplace_back(std::cos(phi), std::sin(phi), 0.0);
  return out;
}

}  // namespace

TEST_CASE("trine directions give a single vertex", "[strategy]") {
  const auto poly = build_weight_polytope({0, 1, 2}, equatorial({0.0, deg(120), deg(240)}));
  REQUIRE(poly.vertices.size() == 1);
  CHECK(poly.dimension == 0);
  CHECK(poly.equality_rank == 3);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK(poly.vertices[0](i) == Approx(2.0 / 3.0));
}

TEST_CASE("four equatorial directions give a segment", "[strategy]") {
  const auto poly = build_weight_polytope({0, 1, 2, 3}, equatorial({0.0, deg(90), deg(180), deg(270)}));
  CHECK(poly.dimension == 1);
  CHECK(poly.vertices.size() == 2);
  for (const auto& v : poly.vertices) {
    CHECK((poly.equality_matrix() * v - WeightPolytope::rhs()).norm() <= 1e-12);
    CHECK((v.array() > 1e-12).count() == 2);
  }
}

TEST_CASE("tetrahedron directions give a single vertex", "[strategy]") {
  const Ensemble e = tetrahedron();
  std::vector<Vec3> dirs;
  for (const auto& s : e.states()) dirs.push_back(s.bloch_vector());
  const auto poly = build_weight_polytope({0, 1, 2, 3}, dirs);
  REQUIRE(poly.vertices.size() == 1);
  CHECK(poly.equality_rank == 4);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(poly.vertices[0](i) == Approx(0.5));
}

TEST_CASE("directions in an open half plane give no measurement", "[strategy]") {
  const auto poly = build_weight_polytope({0, 1, 2}, equatorial({0.0, deg(30), deg(60)}));
  CHECK(poly.empty());
  CHECK(poly.dimension == -1);
}

TEST_CASE("vertices respect the support bound", "[strategy]") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    const std::size_t m = 3 + static_cast<std::size_t>(i % 6);
    std::vector<std::size_t> hyps(m);
    std::vector<Vec3> dirs;
    for (std::size_t k = 0; k < m; ++k) {
      hyps[k] = k;
      dirs.push_back(random_unit(rng));
    }
    const auto poly = build_weight_polytope(hyps, dirs);
    for (const auto& v : poly.vertices) {
      REQUIRE((v.array() > 1e-9).count() <= poly.equality_rank);
      REQUIRE((v.array() >= 0.0).all());
      REQUIRE((poly.equality_matrix() * v - WeightPolytope::rhs()).norm() <= 1e-9);
      const Povm p = povm_from_weights(m, poly, v);
      REQUIRE(p.completeness_residual() <= 1e-9);
    }
  }
}

TEST_CASE("inconsistent systems have no vertices", "[strategy]") {
  Eigen::MatrixXd a(2, 2);
  a << 1, 1, 1, 1;
  CHECK(enumerate_vertices(a, Eigen::Vector2d(1, 2)).empty());
  CHECK(enumerate_vertices(Eigen::MatrixXd(4, 0), WeightPolytope::rhs()).empty());
}

TEST_CASE("affine dimension", "[strategy]") {
  CHECK(affine_dimension({}) == -1);
  CHECK(affine_dimension({Eigen::Vector2d(1, 0)}) == 0);
  CHECK(affine_dimension({Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1), Eigen::Vector2d(0.5, 0.5)}) == 1);
  CHECK(affine_dimension({Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(0, 0, 1)}) == 2);
}

TEST_CASE("derive_from_lagrangian recovers the trine measurement", "[strategy]") {
  const Ensemble e = trine();
  const auto d = derive_from_lagrangian((1.0 / 3.0) * HermitianOp2::identity(), e);
  CHECK(d.free_hypotheses.empty());
  CHECK(d.eligible.size() == 3);
  REQUIRE(d.canonical);
  CHECK(d.active_set == std::vector<std::size_t>{0, 1, 2});
  CHECK(error_probability(*d.canonical, e) == Approx(1.0 / 3.0).margin(1e-12));
  CHECK(check_global(*d.canonical, e).verdict == Verdict::kOptimal);
}

TEST_CASE("derive_from_lagrangian with a free hypothesis", "[strategy]") {
  const DensityOp rho = pure_at(0.4, 1.0);
  const Ensemble e = Ensemble::equiprobable({rho, rho});
  const auto d = derive_from_lagrangian(0.5 * rho.op(), e);
  CHECK(d.free_hypotheses == std::vector<std::size_t>{0, 1});
  REQUIRE(d.canonical);
  CHECK(error_probability(*d.canonical, e) == Approx(0.5));
}

TEST_CASE("derive_from_lagrangian for an infeasible C", "[strategy]") {
  const auto d = derive_from_lagrangian(HermitianOp2::identity(), trine());
  CHECK(d.eligible.empty());
  CHECK_FALSE(d.canonical);
}
