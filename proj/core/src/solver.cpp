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
#include "qdisc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

namespace qdisc {

const char* to_string(SolutionCase c) {
  switch (c) {
    case SolutionCase::kTwoState: return "two-state";
    case SolutionCase::kCommonLatitude: return "common-latitude";
    case SolutionCase::kYuenPom: return "yuen-pom";
    case SolutionCase::kSubset: return "subset";
    case SolutionCase::kBinaryFallback: return "binary-fallback";
  }
  return "unknown";
}

double LatitudeBasis::longitude_of(const Vec3& b) const {
  const Vec3& n = axis.vector();
  const Vec3& x = longitude_reference.vector();
  const Vec3 y = n.cross(x);
  return wrap_angle(std::atan2(b.dot(y), b.dot(x)));
}

double LatitudeBasis::plus_population(const DensityOp& rho) const {
  return 0.5 * (1.0 + axis.vector().dot(rho.bloch_vector()));
}

double LatitudeBasis::minus_population(const DensityOp& rho) const {
  return 0.5 * (1.0 - axis.vector().dot(rho.bloch_vector()));
}

Vec3 LatitudeBasis::equatorial_direction(double longitude) const {
  const Vec3& x = longitude_reference.vector();
  const Vec3 y = axis.vector().cross(x);
  return std::cos(longitude) * x + std::sin(longitude) * y;
}

namespace {

// Plane through three points on the sphere, oriented towards them.
std::optional<LatitudeBasis> basis_from_triple(const Vec3& b1, const Vec3& b2, const Vec3& b3) {
  const Vec3 normal = (b1 - b2).cross(b1 - b3);
  if (normal.norm() < kDegenerateCrossTol) return std::nullopt;
  Vec3 n = normal.normalized();
  double c = n.dot(b1);
  if (c < 0.0) {
    n = -n;
    c = -c;
  }
  Vec3 transverse = b1 - c * n;
  const Vec3 ref = transverse.norm() > kStructuralTol ? transverse.normalized() : any_orthogonal(n);
  LatitudeBasis basis;
  basis.axis = BlochDirection::normalized(n);
  basis.longitude_reference = BlochDirection::normalized(ref);
  basis.common_latitude = std::acos(std::clamp(c, 0.0, 1.0));
  return basis;
}

bool on_latitude(const LatitudeBasis& basis, const Vec3& b) {
  return std::abs(basis.axis.vector().dot(b) - basis.cos_latitude()) <= kCertificationTol;
}

}  // namespace

std::optional<LatitudeBasis> find_common_latitude_basis(const std::vector<DensityOp>& states) {
  if (states.size() < 3) throw ValidationError("common latitude needs at least three states");
  for (const auto& s : states) {
    if (!s.is_pure()) throw ValidationError("common latitude search needs pure states");
  }
  const std::size_t n = states.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto basis = basis_from_triple(states[i].bloch_vector(), states[j].bloch_vector(),
                                       states[k].bloch_vector());
        if (!basis) continue;
        for (const auto& s : states) {
          if (!on_latitude(*basis, s.bloch_vector())) return std::nullopt;
        }
        return basis;
      }
    }
  }
  throw DegenerateConfiguration("all triples of Bloch vectors are collinear or coincident");
}

std::optional<CandidatePovm> construct_candidate_povm(const LatitudeBasis& basis,
                                                      const std::vector<DensityOp>& states) {
  CandidatePovm cand;
  // Distinct longitudes become polytope columns; coincident ones share a column.
  std::vector<std::size_t> column_of(states.size());
  std::vector<std::size_t> first_state;
  std::vector<Vec3> columns;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const Vec3 b = states[k].bloch_vector();
    if (!on_latitude(basis, b)) throw ValidationError("state is not on the common latitude");
    const double phi = basis.longitude_of(b);
    const Vec3 d = basis.equatorial_direction(phi);
    cand.longitudes.push_back(phi);
    cand.directions.push_back(d);
    auto it = std::find_if(columns.begin(), columns.end(), [&](const Vec3& c) {
      return (c - d).norm() <= kCertificationTol;
    });
    if (it == columns.end()) {
      column_of[k] = columns.size();
      first_state.push_back(k);
      columns.push_back(d);
    } else {
      column_of[k] = static_cast<std::size_t>(it - columns.begin());
      cand.merged = true;
    }
  }
  cand.polytope = build_weight_polytope(first_state, columns);
  if (cand.polytope.empty()) return std::nullopt;
  const Eigen::VectorXd& w = cand.polytope.vertices.front();
  cand.weights = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(states.size()));
  for (std::size_t c = 0; c < first_state.size(); ++c) {
    cand.weights(static_cast<Eigen::Index>(first_state[c])) = w(static_cast<Eigen::Index>(c));
  }
  return cand;
}

HermitianOp2 latitude_lagrangian(const LatitudeBasis& basis, double prior) {
  return {0.5 * prior * (1.0 + basis.sin_latitude()),
          0.5 * prior * basis.cos_latitude() * basis.axis.vector()};
}

HermitianOp2 helstrom_lagrangian(const HermitianOp2& a, const HermitianOp2& b) {
  const HermitianOp2 gap = a - b;
  const double r = gap.bloch.norm();
  HermitianOp2 abs_gap;
  if (r < kStructuralTol) {
    abs_gap = {std::abs(gap.scalar), Vec3::Zero()};
  } else {
    const double up = std::abs(gap.scalar + r);
    const double down = std::abs(gap.scalar - r);
    abs_gap = {0.5 * (up + down), 0.5 * (up - down) * gap.bloch / r};
  }
  return 0.5 * (a + b + abs_gap);
}

double min_error_common_latitude(const Ensemble& e, const LatitudeBasis& basis) {
  if (!e.is_equiprobable()) throw ValidationError("latitude formula needs equal priors");
  if (!construct_candidate_povm(basis, e.states())) {
    throw ValidationError("equatorial candidate is not formable; use the binary fallback");
  }
  const double p = e.prior(0);
  const DensityOp& rho = e.state(0);
  return 1.0 - p - 2.0 * p * std::sqrt(basis.plus_population(rho) * basis.minus_population(rho));
}

namespace {

// Derives the canonical measurement for c and certifies it. Empty if c admits
// no measurement or the certificate fails.
std::optional<OptimalSolution> realise(const HermitianOp2& c, const Ensemble& e,
                                       SolutionCase tag) {
  DerivedStrategy derived = derive_from_lagrangian(c, e);
  if (!derived.canonical) return std::nullopt;
  Certificate cert = check_global(*derived.canonical, e);
  if (cert.verdict != Verdict::kOptimal) return std::nullopt;

  std::vector<std::optional<BlochDirection>> directions;
  std::vector<double> weights;
  for (std::size_t k : derived.active_set) {
    const HermitianOp2& op = derived.canonical->element(k).op();
    weights.push_back(op.trace());
    if (op.min_eigenvalue() > kCertificationTol) {
      directions.emplace_back(std::nullopt);
    } else {
      directions.emplace_back(BlochDirection::normalized(op.bloch));
    }
  }
  return OptimalSolution{
      .lagrangian = c,
      .p_error = 1.0 - c.trace(),
      .case_tag = tag,
      .active_set = derived.active_set,
      .directions = std::move(directions),
      .weights = std::move(weights),
      .weight_polytope = std::move(derived.polytope),
      .canonical_povm = std::move(*derived.canonical),
      .certificate = std::move(cert),
      .latitude = std::nullopt,
      .generating_subset = {},
  };
}

std::vector<DensityOp> pick(const Ensemble& e, std::initializer_list<std::size_t> idx) {
  std::vector<DensityOp> out;
  for (std::size_t i : idx) out.push_back(e.state(i));
  return out;
}

}  // namespace

OptimalSolution helstrom_two_state(const Ensemble& e) {
  if (e.size() != 2) throw ValidationError("Helstrom measurement needs exactly two states");
  const HermitianOp2 c = helstrom_lagrangian(e.weighted(0), e.weighted(1));
  auto sol = realise(c, e, SolutionCase::kTwoState);
  if (!sol) throw NumericFailure("Helstrom measurement failed certification");
  sol->generating_subset = {0, 1};
  return std::move(*sol);
}

std::optional<Eigen::VectorXd> check_yuen_case(const Ensemble& e) {
  std::vector<std::size_t> hyps(e.size());
  std::vector<Vec3> dirs;
  for (std::size_t k = 0; k < e.size(); ++k) {
    hyps[k] = k;
    const Vec3 b = e.state(k).bloch_vector();
    if (b.norm() < kStructuralTol) return std::nullopt;
    dirs.push_back(b.normalized());
  }
  const WeightPolytope poly = build_weight_polytope(hyps, dirs);
  if (poly.empty()) return std::nullopt;
  // Vertex centroid lies in the relative interior, so it is positive wherever
  // some solution is.
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(e.size()));
  for (const auto& v : poly.vertices) w += v;
  return w / static_cast<double>(poly.vertices.size());
}

OptimalSolution solve_equiprobable_pure(const Ensemble& e) {
  if (!e.is_equiprobable()) {
    throw UnsupportedRegime("constructive solver needs equal priors for N >= 3; use the oracle");
  }
  if (!e.all_pure()) {
    throw UnsupportedRegime("constructive solver needs pure states for N >= 3; use the oracle");
  }
  const std::size_t n = e.size();
  if (n == 2) return helstrom_two_state(e);
  const double p = e.prior(0);

  // Every state on one latitude, elements formable.
  std::optional<LatitudeBasis> basis;
  try {
    basis = find_common_latitude_basis(e.states());
  } catch (const DegenerateConfiguration&) {
    basis.reset();
  }
  if (basis && construct_candidate_povm(*basis, e.states())) {
    if (auto sol = realise(latitude_lagrangian(*basis, p), e, SolutionCase::kCommonLatitude)) {
      sol->latitude = basis;
      return std::move(*sol);
    }
  }

  // States form a POVM after rescaling: C proportional to the identity.
  if (check_yuen_case(e)) {
    if (auto sol = realise(p * HermitianOp2::identity(), e, SolutionCase::kYuenPom)) {
      return std::move(*sol);
    }
  }

  // Triples, closest to the equator first.
  struct Triple {
    double abs_cos;
    std::size_t i, j, k;
    LatitudeBasis basis;
  };
  std::vector<Triple> triples;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto b = basis_from_triple(e.state(i).bloch_vector(), e.state(j).bloch_vector(),
                                   e.state(k).bloch_vector());
        if (b) triples.push_back({std::abs(b->cos_latitude()), i, j, k, *b});
      }
    }
  }
  std::stable_sort(triples.begin(), triples.end(), [](const Triple& a, const Triple& b) {
    return std::tie(a.abs_cos, a.i, a.j, a.k) < std::tie(b.abs_cos, b.i, b.j, b.k);
  });
  for (const auto& t : triples) {
    if (!construct_candidate_povm(t.basis, pick(e, {t.i, t.j, t.k}))) continue;
    const HermitianOp2 c = latitude_lagrangian(t.basis, p);
    if (!is_dual_feasible(c, e)) continue;
    if (auto sol = realise(c, e, SolutionCase::kSubset)) {
      sol->latitude = t.basis;
      sol->generating_subset = {t.i, t.j, t.k};
      return std::move(*sol);
    }
  }

  // Pairs, least overlap first.
  struct Pair {
    double overlap;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.push_back({pairwise_overlap(e, i, j).value, i, j});
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    return std::tie(a.overlap, a.i, a.j) < std::tie(b.overlap, b.i, b.j);
  });
  for (const auto& pr : pairs) {
    const HermitianOp2 c = helstrom_lagrangian(e.weighted(pr.i), e.weighted(pr.j));
    if (!is_dual_feasible(c, e)) continue;
    if (auto sol = realise(c, e, SolutionCase::kBinaryFallback)) {
      sol->generating_subset = {pr.i, pr.j};
      return std::move(*sol);
    }
  }
  throw SolverExhausted("no latitude, POVM-forming, subset or pair candidate verified for " +
                        std::to_string(n) + " states");
}

OptimalSolution solve(const Ensemble& e) {
  if (e.size() == 2) return helstrom_two_state(e);
  return solve_equiprobable_pure(e);
}

OptimalFamily enumerate_optimal_family(const OptimalSolution& sol, const Ensemble& e) {
  DerivedStrategy derived = derive_from_lagrangian(sol.lagrangian, e);
  OptimalFamily fam;
  fam.kernels = std::move(derived.eligible);
  fam.free_hypotheses = std::move(derived.free_hypotheses);
  fam.polytope = std::move(derived.polytope);
  for (const auto& v : fam.polytope.vertices) {
    fam.vertex_povms.push_back(povm_from_weights(e.size(), fam.polytope, v));
  }
  auto support = [&](const Povm& p) {
    return static_cast<std::size_t>(std::count_if(p.elements().begin(), p.elements().end(),
                                                  [](const Effect& el) { return !el.is_zero(kCertificationTol); }));
  };
  for (const auto& p : fam.vertex_povms) {
    if (!fam.minimal_povm || support(p) < fam.minimal_support) {
      fam.minimal_povm = p;
      fam.minimal_support = support(p);
    }
  }
  if (!fam.minimal_povm) {
    fam.minimal_povm = sol.canonical_povm;
    fam.minimal_support = support(sol.canonical_povm);
  }
  fam.non_unique = fam.polytope.dimension >= 1 || !fam.free_hypotheses.empty();
  return fam;
}

}  // namespace qdisc
