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
#include "qdisc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

namespace qdisc {

const char* to_string(EnsembleErrorCode code) {
  switch (code) {
    case EnsembleErrorCode::kMalformedDocument: return "malformed-document";
    case EnsembleErrorCode::kBlochOutOfRange: return "bloch-out-of-range";
    case EnsembleErrorCode::kPriorsNotNormalized: return "priors-not-normalized";
    case EnsembleErrorCode::kNegativePrior: return "negative-prior";
    case EnsembleErrorCode::kSizeMismatch: return "size-mismatch";
    case EnsembleErrorCode::kTooFewStates: return "too-few-states";
  }
  return "unknown";
}

Ensemble::Ensemble(std::vector<DensityOp> states, std::vector<double> priors)
    : states_(std::move(states)), priors_(std::move(priors)) {
  if (states_.size() < 2) {
    throw EnsembleError(EnsembleErrorCode::kTooFewStates, "an ensemble needs at least two states");
  }
  if (states_.size() != priors_.size()) {
    throw EnsembleError(EnsembleErrorCode::kSizeMismatch,
                        "number of priors must equal number of states");
  }
  for (double p : priors_) {
    if (!std::isfinite(p) || p < 0.0) {
      throw EnsembleError(EnsembleErrorCode::kNegativePrior, "priors must be non-negative");
    }
  }
  const double total = std::accumulate(priors_.begin(), priors_.end(), 0.0);
  if (std::abs(total - 1.0) > kStructuralTol) {
    throw EnsembleError(EnsembleErrorCode::kPriorsNotNormalized, "priors must sum to 1");
  }
}

Ensemble Ensemble::equiprobable(std::vector<DensityOp> states) {
  const std::size_t n = states.size();
  std::vector<double> priors(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return Ensemble(std::move(states), std::move(priors));
}

bool Ensemble::is_equiprobable(double tol) const {
  const double p = 1.0 / static_cast<double>(size());
  return std::all_of(priors_.begin(), priors_.end(),
                     [&](double q) { return std::abs(q - p) <= tol; });
}

bool Ensemble::all_pure(double tol) const {
  return std::all_of(states_.begin(), states_.end(),
                     [&](const DensityOp& r) { return r.is_pure(tol); });
}

std::vector<std::pair<std::size_t, std::size_t>> Ensemble::duplicate_pairs(double tol) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t j = 0; j < size(); ++j) {
    for (std::size_t k = j + 1; k < size(); ++k) {
      if ((states_[j].bloch_vector() - states_[k].bloch_vector()).norm() <= tol) {
        out.emplace_back(j, k);
      }
    }
  }
  return out;
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw EnsembleError(EnsembleErrorCode::kMalformedDocument, what);
}

double number_at(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    malformed(std::string("expected numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

Vec3 vec3_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 3) malformed("Bloch vector must be an array of 3 numbers");
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) malformed("Bloch vector entries must be numbers");
    v(i) = j[i].get<double>();
  }
  return v;
}

DensityOp state_from(const nlohmann::json& s) {
  if (!s.is_object()) malformed("each state must be an object");
  Vec3 b;
  if (s.contains("bloch")) {
    b = vec3_from(s.at("bloch"));
  } else if (s.contains("angles")) {
    const auto& a = s.at("angles");
    if (!a.is_object()) malformed("'angles' must be an object");
    b = BlochDirection::from_angles(number_at(a, "theta"), number_at(a, "phi")).vector();
  } else {
    malformed("state needs a 'bloch' or 'angles' field");
  }
  if (!b.allFinite()) malformed("Bloch vector has non-finite entries");
  if (b.norm() > 1.0 + 2.0 * kStructuralTol) {
    throw EnsembleError(EnsembleErrorCode::kBlochOutOfRange, "Bloch vector length exceeds 1");
  }
  return DensityOp::from_bloch_vector(b);
}

}  // namespace

Ensemble ensemble_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) malformed("ensemble document must be an object");
  if (!doc.contains("states") && doc.contains("ensemble")) {
    return ensemble_from_json(doc.at("ensemble"));
  }
  if (!doc.contains("states") || !doc.at("states").is_array()) {
    malformed("ensemble document needs a 'states' array");
  }
  std::vector<DensityOp> states;
  for (const auto& s : doc.at("states")) states.push_back(state_from(s));
  if (!doc.contains("priors") || doc.at("priors").is_null()) {
    if (states.size() < 2) {
      throw EnsembleError(EnsembleErrorCode::kTooFewStates, "an ensemble needs at least two states");
    }
    return Ensemble::equiprobable(std::move(states));
  }
  const auto& pj = doc.at("priors");
  if (!pj.is_array()) malformed("'priors' must be an array");
  std::vector<double> priors;
  for (const auto& p : pj) {
    if (!p.is_number()) malformed("priors must be numbers");
    priors.push_back(p.get<double>());
  }
  return Ensemble(std::move(states), std::move(priors));
}

Ensemble load_ensemble(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    malformed(std::string("ensemble document is not valid JSON: ") + e.what());
  }
  return ensemble_from_json(doc);
}

nlohmann::json to_json(const Ensemble& e) {
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : e.states()) {
    const Vec3 b = s.bloch_vector();
    states.push_back({{"bloch", {b(0), b(1), b(2)}}});
  }
  return {{"states", states}, {"priors", e.priors()}};
}

std::string serialize_ensemble(const Ensemble& e) { return to_json(e).dump(2); }

Overlap pairwise_overlap(const Ensemble& e, std::size_t j, std::size_t k) {
  const DensityOp& a = e.state(j);
  const DensityOp& b = e.state(k);
  return {trace_product(a.op(), b.op()), !(a.is_pure() && b.is_pure())};
}

}  // namespace qdisc
