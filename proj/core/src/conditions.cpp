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
#include "qdisc/conditions.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace qdisc {

Povm::Povm(std::vector<Effect> elements, double completeness_tol)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw ValidationError("a POVM needs at least one element");
  const double r = completeness_residual();
  if (!(r <= completeness_tol)) {
    throw ValidationError("POVM elements do not sum to the identity (residual " +
                          std::to_string(r) + ")");
  }
}

double Povm::completeness_residual() const {
  HermitianOp2 sum;
  for (const auto& e : elements_) sum += e.op();
  return (sum - HermitianOp2::identity()).norm();
}

Povm recomplete(const std::vector<HermitianOp2>& raw) {
  HermitianOp2 total;
  for (const auto& a : raw) total += a;
  const HermitianOp2 root = inverse_sqrt(total, kCertificationTol);
  std::vector<Effect> elements;
  elements.reserve(raw.size());
  for (const auto& a : raw) {
    elements.push_back(Effect::from_op(sandwich(root, a), kCertificationTol));
  }
  return Povm(std::move(elements));
}

namespace {

[[noreturn]] void bad_povm(const std::string& what) {
  throw ValidationError("invalid POVM document: " + what);
}

}  // namespace

Povm povm_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) bad_povm("expected an object");
  if (!doc.contains("elements") && doc.contains("povm")) return povm_from_json(doc.at("povm"));
  if (!doc.contains("elements") || !doc.at("elements").is_array()) {
    bad_povm("missing 'elements' array");
  }
  std::vector<Effect> elements;
  for (const auto& el : doc.at("elements")) {
    if (!el.is_object() || !el.contains("scalar") || !el.contains("bloch") ||
        !el.at("scalar").is_number() || !el.at("bloch").is_array() || el.at("bloch").size() != 3) {
      bad_povm("each element needs numeric 'scalar' and 3-entry 'bloch'");
    }
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
      if (!el.at("bloch")[i].is_number()) bad_povm("bloch entries must be numbers");
      v(i) = el.at("bloch")[i].get<double>();
    }
    elements.push_back(Effect::from_op({el.at("scalar").get<double>(), v}, kCertificationTol));
  }
  return Povm(std::move(elements));
}

Povm load_povm(std::string_view document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    bad_povm(e.what());
  }
  return povm_from_json(doc);
}

nlohmann::json to_json(const Povm& p) {
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : p.elements()) {
    const auto& v = e.op().bloch;
    elements.push_back({{"scalar", e.op().scalar}, {"bloch", {v(0), v(1), v(2)}}});
  }
  return {{"elements", elements}};
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kOptimal: return "optimal";
    case Verdict::kStationaryOnly: return "stationary-only";
    case Verdict::kNonOptimal: return "non-optimal";
  }
  return "unknown";
}

nlohmann::json to_json(const Certificate& c) {
  const auto& v = c.lagrangian.bloch;
  return {{"verdict", to_string(c.verdict)},
          {"error_probability", c.error_probability},
          {"lagrangian", {{"scalar", c.lagrangian.scalar}, {"bloch", {v(0), v(1), v(2)}}}},
          {"feasibility_slacks", c.feasibility_slacks},
          {"stationarity_residuals", c.stationarity_residuals},
          {"hermiticity_residual", c.hermiticity_residual},
          {"completeness_residual", c.completeness_residual},
          {"tolerance", c.tolerance}};
}

namespace {

void require_matching(const Povm& p, const Ensemble& e) {
  if (p.size() != e.size()) {
    throw ValidationError("POVM has " + std::to_string(p.size()) + " elements but ensemble has " +
                          std::to_string(e.size()) + " states");
  }
}

}  // namespace

Lagrangian compute_lagrangian(const Povm& p, const Ensemble& e) {
  require_matching(p, e);
  Operator2 c;
  for (std::size_t j = 0; j < e.size(); ++j) {
    c += op_mul(e.weighted(j), p.element(j).op());
  }
  return {c, c.anti_hermitian_norm()};
}

double error_probability(const Povm& p, const Ensemble& e) {
  require_matching(p, e);
  double success = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    success += trace_product(e.weighted(k), p.element(k).op());
  }
  const double pe = 1.0 - success;
  if (pe < -kStructuralTol || pe > 1.0 + kStructuralTol) {
    throw ValidationError("error probability outside [0, 1]; POVM or ensemble is invalid");
  }
  return std::clamp(pe, 0.0, 1.0);
}

namespace {

std::vector<double> stationarity_residuals(const Operator2& c, const Povm& p, const Ensemble& e) {
  std::vector<double> out(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    const Operator2 gap = c - Operator2(e.weighted(k));
    out[k] = op_mul(gap, Operator2(p.element(k).op())).operator_norm();
  }
  return out;
}

}  // namespace

std::vector<double> check_stationarity(const Povm& p, const Ensemble& e) {
  return stationarity_residuals(compute_lagrangian(p, e).op, p, e);
}

Certificate check_global(const Povm& p, const Ensemble& e, double tol) {
  const Lagrangian lag = compute_lagrangian(p, e);
  Certificate cert;
  cert.tolerance = tol;
  cert.lagrangian = lag.op.hermitian_part();
  cert.hermiticity_residual = lag.hermiticity_residual;
  cert.completeness_residual = p.completeness_residual();
  cert.error_probability = error_probability(p, e);
  cert.feasibility_slacks = check_dual_feasible(cert.lagrangian, e);
  cert.stationarity_residuals = stationarity_residuals(lag.op, p, e);

  const bool hermitian = cert.hermiticity_residual <= tol;
  const bool feasible = std::all_of(cert.feasibility_slacks.begin(), cert.feasibility_slacks.end(),
                                    [&](double s) { return s >= -tol; });
  const bool stationary =
      std::all_of(cert.stationarity_residuals.begin(), cert.stationarity_residuals.end(),
                  [&](double r) { return r <= tol; });
  if (hermitian && feasible) {
    cert.verdict = Verdict::kOptimal;
  } else if (hermitian && stationary) {
    cert.verdict = Verdict::kStationaryOnly;
  } else {
    cert.verdict = Verdict::kNonOptimal;
  }
  return cert;
}

std::vector<double> check_dual_feasible(const HermitianOp2& c, const Ensemble& e) {
  std::vector<double> slacks(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    slacks[k] = (c - e.weighted(k)).min_eigenvalue();
  }
  return slacks;
}

bool is_dual_feasible(const HermitianOp2& c, const Ensemble& e, double tol) {
  const auto slacks = check_dual_feasible(c, e);
  return std::all_of(slacks.begin(), slacks.end(), [&](double s) { return s >= -tol; });
}

std::vector<bool> check_det_condition(const HermitianOp2& c, const Ensemble& e, double tol) {
  std::vector<bool> out(e.size());
  for (std::size_t k = 0; k < e.size(); ++k) {
    out[k] = std::abs((c - e.weighted(k)).det()) <= tol;
  }
  return out;
}

}  // namespace qdisc
