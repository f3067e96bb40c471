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

// Constructive minimum-error solver for equiprobable pure qubit ensembles.
//
// The solver proposes a Lagrangian operator C first and only then derives
// the measurements compatible with it (see strategy.hpp). Candidates for C
// come from the geometry of the Bloch vectors:
//
//  * two states: the Helstrom operator (p1 rho1 + p2 rho2 + |p1 rho1 - p2 rho2|)/2;
//  * states sharing a latitude around an axis n at polar angle theta:
//      C = p/2 (1 + sin theta) 1 + p/2 cos theta n.sigma,
//    with equatorial elements at each state's longitude;
//  * states that form a POVM after positive rescaling: C = p 1.
//
// Larger ensembles fall back to 3- and 2-element subsets. Every candidate is
// checked for dual feasibility against the full ensemble before it is used.

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "qdisc/conditions.hpp"
#include "qdisc/ensemble.hpp"
#include "qdisc/errors.hpp"
#include "qdisc/qubit.hpp"
#include "qdisc/strategy.hpp"

namespace qdisc {

/// Orthonormal basis {|+>, |->} in which every state has the same diagonal.
struct LatitudeBasis {
  BlochDirection axis;                 // Bloch vector of |+>
  BlochDirection longitude_reference;  // orthogonal to axis
  double common_latitude = 0.0;        // polar angle in [0, pi/2]

  double cos_latitude() const { return std::cos(common_latitude); }
  double sin_latitude() const { return std::sin(common_latitude); }
  double longitude_of(const Vec3& b) const;
  /// <+|rho|+> and <-|rho|->.
  double plus_population(const DensityOp& rho) const;
  double minus_population(const DensityOp& rho) const;
  /// Unit vector in the equatorial plane at the given longitude.
  Vec3 equatorial_direction(double longitude) const;
};

enum class SolutionCase { kTwoState, kCommonLatitude, kYuenPom, kSubset, kBinaryFallback };
const char* to_string(SolutionCase c);

struct OptimalSolution {
  HermitianOp2 lagrangian;
  double p_error = 0.0;
  SolutionCase case_tag = SolutionCase::kTwoState;
  std::vector<std::size_t> active_set;
  /// Element direction per active hypothesis; empty for a full-rank element.
  std::vector<std::optional<BlochDirection>> directions;
  std::vector<double> weights;  // Tr Pi_k per active hypothesis
  WeightPolytope weight_polytope;
  Povm canonical_povm;
  Certificate certificate;
  std::optional<LatitudeBasis> latitude;
  /// Hypotheses of the 3- or 2-subset that produced C (subset cases only).
  std::vector<std::size_t> generating_subset;
};

/// Throws ValidationError unless all states are pure and N >= 3; throws
/// DegenerateConfiguration when every triple has coincident Bloch vectors.
std::optional<LatitudeBasis> find_common_latitude_basis(const std::vector<DensityOp>& states);

struct CandidatePovm {
  std::vector<double> longitudes;  // per state
  std::vector<Vec3> directions;    // equatorial, per state
  Eigen::VectorXd weights;         // per state, sum 2
  WeightPolytope polytope;         // over distinct longitudes
  /// Two or more states shared a longitude and were merged into one column.
  bool merged = false;
};

/// Equatorial candidate measurement for states on the basis latitude. Empty
/// when no non-negative weights complete it, i.e. when all longitudes lie in
/// one open semicircle.
std::optional<CandidatePovm> construct_candidate_povm(const LatitudeBasis& basis,
                                                      const std::vector<DensityOp>& states);

/// 1 - p - 2p sqrt(<+|rho|+><-|rho|->) with p = 1/N. Throws ValidationError if
/// the ensemble is not equiprobable, not on the latitude, or not formable.
double min_error_common_latitude(const Ensemble& e, const LatitudeBasis& basis);

/// C for the latitude solution with prior p.
HermitianOp2 latitude_lagrangian(const LatitudeBasis& basis, double prior);
/// (a + b + |a - b|)/2
HermitianOp2 helstrom_lagrangian(const HermitianOp2& a, const HermitianOp2& b);

/// Any priors, pure or mixed; requires N = 2.
OptimalSolution helstrom_two_state(const Ensemble& e);

/// Weights w > 0 (where possible) with sum w = 2 and sum w_k b_k = 0.
std::optional<Eigen::VectorXd> check_yuen_case(const Ensemble& e);

/// Raised when no candidate passes verification; the caller should hand the
/// ensemble to the dual oracle.
class SolverExhausted : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

/// Throws UnsupportedRegime for unequal priors or mixed states.
OptimalSolution solve_equiprobable_pure(const Ensemble& e);

/// Dispatches N = 2 (any priors) to helstrom_two_state and everything else to
/// solve_equiprobable_pure.
OptimalSolution solve(const Ensemble& e);

struct OptimalFamily {
  std::vector<ElementKernel> kernels;
  std::vector<std::size_t> free_hypotheses;  // kernel not unique
  WeightPolytope polytope;
  std::vector<Povm> vertex_povms;  // one optimal POVM per polytope vertex
  std::optional<Povm> minimal_povm;  // fewest non-zero elements
  std::size_t minimal_support = 0;
  bool non_unique = false;
};

OptimalFamily enumerate_optimal_family(const OptimalSolution& sol, const Ensemble& e);

}  // namespace qdisc
