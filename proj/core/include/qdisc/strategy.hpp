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

// Measurements compatible with a given Lagrangian operator C.
//
// For each hypothesis k, C - p_k rho_k is a PSD qubit operator. If it is full
// rank, Pi_k must vanish; if it has rank one, Pi_k must be a non-negative
// multiple of the projector onto its kernel; if it vanishes, Pi_k is free.
// Only the weights w_k = Tr Pi_k remain, and completeness
//   sum_k w_k = 2,   sum_k w_k d_k = 0
// cuts them down to a polytope. Every point of the polytope is an optimal
// measurement when C is dual feasible.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "qdisc/conditions.hpp"
#include "qdisc/ensemble.hpp"
#include "qdisc/qubit.hpp"

namespace qdisc {

/// {w >= 0 : [1; d_1 .. d_m] w = (2, 0, 0, 0)} over fixed unit directions.
struct WeightPolytope {
  std::vector<std::size_t> hypotheses;  // hypothesis index of each column
  std::vector<Vec3> directions;
  std::vector<Eigen::VectorXd> vertices;
  int dimension = -1;  // affine hull dimension; -1 when empty
  int equality_rank = 0;

  bool empty() const { return vertices.empty(); }
  Eigen::MatrixXd equality_matrix() const;
  static Eigen::Vector4d rhs() { return {2.0, 0.0, 0.0, 0.0}; }
};

/// Enumerates basic feasible solutions of {w >= 0 : A w = b}. Each vertex has
/// at most rank(A) non-zero entries. Throws NumericFailure when the number of
/// candidate bases exceeds max_bases.
std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                                double tol = kCertificationTol,
                                                std::size_t max_bases = 2'000'000);

/// Dimension of the affine hull of a point set; -1 for an empty set.
int affine_dimension(const std::vector<Eigen::VectorXd>& points, double tol = kCertificationTol);

WeightPolytope build_weight_polytope(std::vector<std::size_t> hypotheses,
                                     std::vector<Vec3> directions,
                                     double tol = kCertificationTol);

/// Rank-one POVM with the given weights on the polytope's columns; other
/// hypotheses get zero elements.
Povm povm_from_weights(std::size_t num_hypotheses, const WeightPolytope& polytope,
                       const Eigen::VectorXd& weights);

struct ElementKernel {
  std::size_t hypothesis = 0;
  /// Kernel direction of C - p_k rho_k; empty when that operator vanishes.
  std::optional<Vec3> direction;
};

struct DerivedStrategy {
  std::vector<ElementKernel> eligible;   // hypotheses passing the det test
  std::vector<std::size_t> free_hypotheses;  // C = p_k rho_k: any element allowed
  WeightPolytope polytope;               // over eligible rank-one directions
  std::optional<Povm> canonical;         // empty when no measurement fits
  std::vector<std::size_t> active_set;   // support of the canonical POVM
};

/// Derives every measurement that is stationary for c. Does not check dual
/// feasibility of c; callers certify the canonical POVM with check_global.
DerivedStrategy derive_from_lagrangian(const HermitianOp2& c, const Ensemble& e,
                                       double det_tol = kCertificationTol);

}  // namespace qdisc
