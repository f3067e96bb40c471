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

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "qdisc/errors.hpp"
#include "qdisc/qubit.hpp"

namespace qdisc {

enum class EnsembleErrorCode {
  kMalformedDocument,
  kBlochOutOfRange,
  kPriorsNotNormalized,
  kNegativePrior,
  kSizeMismatch,
  kTooFewStates,
};

const char* to_string(EnsembleErrorCode code);

class EnsembleError : public ValidationError {
 public:
  EnsembleError(EnsembleErrorCode code, const std::string& what)
      : ValidationError(what), code_(code) {}
  EnsembleErrorCode code() const { return code_; }

 private:
  EnsembleErrorCode code_;
};

/// The hypotheses {(p_j, rho_j)}: N >= 2 density operators with priors
/// summing to one. Immutable once constructed.
class Ensemble {
 public:
  Ensemble(std::vector<DensityOp> states, std::vector<double> priors);
  static Ensemble equiprobable(std::vector<DensityOp> states);

  std::size_t size() const { return states_.size(); }
  const std::vector<DensityOp>& states() const { return states_; }
  const std::vector<double>& priors() const { return priors_; }
  const DensityOp& state(std::size_t j) const { return states_.at(j); }
  double prior(std::size_t j) const { return priors_.at(j); }
  /// p_j rho_j
  HermitianOp2 weighted(std::size_t j) const { return priors_.at(j) * states_.at(j).op(); }

  bool is_equiprobable(double tol = kStructuralTol) const;
  bool all_pure(double tol = kCertificationTol) const;
  /// Index pairs (j < k) whose Bloch vectors coincide within tol.
  std::vector<std::pair<std::size_t, std::size_t>> duplicate_pairs(
      double tol = kCertificationTol) const;

 private:
  std::vector<DensityOp> states_;
  std::vector<double> priors_;
};

/// Parses the ensemble document format. Accepts the ensemble object itself or
/// any document carrying it under an "ensemble" key (e.g. a run report).
Ensemble load_ensemble(std::string_view document);
Ensemble ensemble_from_json(const nlohmann::json& doc);
nlohmann::json to_json(const Ensemble& e);
std::string serialize_ensemble(const Ensemble& e);

struct Overlap {
  double value = 0.0;
  /// Set when either state is mixed; value is then Tr(rho_j rho_k).
  bool mixed = false;
};

/// |<psi_j|psi_k>|^2 = (1 + b_j.b_k)/2 for pure states.
Overlap pairwise_overlap(const Ensemble& e, std::size_t j, std::size_t k);

}  // namespace qdisc
