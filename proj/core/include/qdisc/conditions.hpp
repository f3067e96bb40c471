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

// Optimality certification for minimum-error measurements.
//
// For a measurement {Pi_k} on the ensemble {(p_k, rho_k)} define the
// Lagrangian operator C = sum_j p_j rho_j Pi_j. The measurement is optimal
// iff C is Hermitian and C - p_k rho_k >= 0 for every k; then
// P_e = 1 - Tr C. Any Hermitian C satisfying the same inequalities is dual
// feasible and 1 - Tr C lower-bounds the error of every measurement.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qdisc/ensemble.hpp"
#include "qdisc/qubit.hpp"

namespace qdisc {

/// One effect per hypothesis, zero effects allowed.
class Povm {
 public:
  /// Throws ValidationError if the elements do not sum to the identity
  /// within completeness_tol.
  explicit Povm(std::vector<Effect> elements, double completeness_tol = kCertificationTol);

  std::size_t size() const { return elements_.size(); }
  const std::vector<Effect>& elements() const { return elements_; }
  const Effect& element(std::size_t k) const { return elements_.at(k); }
  /// Distance of sum_k Pi_k from the identity.
  double completeness_residual() const;

 private:
  std::vector<Effect> elements_;
};

/// Builds a POVM from arbitrary PSD operators A_k by S^{-1/2} A_k S^{-1/2},
/// S = sum_k A_k. Throws ValidationError if S is singular.
Povm recomplete(const std::vector<HermitianOp2>& raw);

/// Parses {"elements": [{"scalar": s, "bloch": [x, y, z]}, ...]}; a report
/// carrying it under a "povm" key is accepted too.
Povm load_povm(std::string_view document);
Povm povm_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Povm& p);

enum class Verdict { kOptimal, kStationaryOnly, kNonOptimal };
const char* to_string(Verdict v);

struct Certificate {
  HermitianOp2 lagrangian;           // Hermitian part of C
  double error_probability = 0.0;
  std::vector<double> feasibility_slacks;     // min eig(C - p_k rho_k)
  std::vector<double> stationarity_residuals; // ||(C - p_k rho_k) Pi_k||
  double hermiticity_residual = 0.0;
  double completeness_residual = 0.0;
  double tolerance = kCertificationTol;
  Verdict verdict = Verdict::kNonOptimal;
};

nlohmann::json to_json(const Certificate& c);

struct Lagrangian {
  Operator2 op;
  double hermiticity_residual = 0.0;
};

/// Throws ValidationError if the POVM and ensemble sizes differ.
Lagrangian compute_lagrangian(const Povm& p, const Ensemble& e);

/// 1 - sum_k p_k Tr(rho_k Pi_k), clamped to [0, 1].
double error_probability(const Povm& p, const Ensemble& e);

Certificate check_global(const Povm& p, const Ensemble& e, double tol = kCertificationTol);

std::vector<double> check_stationarity(const Povm& p, const Ensemble& e);

std::vector<double> check_dual_feasible(const HermitianOp2& c, const Ensemble& e);
bool is_dual_feasible(const HermitianOp2& c, const Ensemble& e, double tol = kCertificationTol);

/// true_k iff |det(c - p_k rho_k)| <= tol. Hypotheses with false must get a
/// zero element in any measurement that is stationary for c.
std::vector<bool> check_det_condition(const HermitianOp2& c, const Ensemble& e,
                                      double tol = kCertificationTol);

}  // namespace qdisc
