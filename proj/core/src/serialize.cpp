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
#include "qdisc/serialize.hpp"

#include "qdisc/conditions.hpp"

namespace qdisc {

nlohmann::json to_json(const Vec3& v) { return {v(0), v(1), v(2)}; }

nlohmann::json to_json(const HermitianOp2& h) {
  return {{"scalar", h.scalar}, {"bloch", to_json(h.bloch)}};
}

nlohmann::json to_json(const LatitudeBasis& b) {
  return {{"axis", to_json(b.axis.vector())},
          {"longitude_reference", to_json(b.longitude_reference.vector())},
          {"common_latitude", b.common_latitude}};
}

nlohmann::json to_json(const WeightPolytope& p) {
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& d : p.directions) dirs.push_back(to_json(d));
  nlohmann::json verts = nlohmann::json::array();
  for (const auto& v : p.vertices) verts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  return {{"hypotheses", p.hypotheses},
          {"directions", dirs},
          {"equality_rank", p.equality_rank},
          {"dimension", p.dimension},
          {"vertices", verts}};
}

nlohmann::json to_json(const OptimalSolution& s) {
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto& d : s.directions) {
    dirs.push_back(d ? to_json(d->vector()) : nlohmann::json(nullptr));
  }
  nlohmann::json out = {{"case", to_string(s.case_tag)},
                        {"p_error", s.p_error},
                        {"lagrangian", to_json(s.lagrangian)},
                        {"active_set", s.active_set},
                        {"directions", dirs},
                        {"weights", s.weights},
                        {"polytope_dimension", s.weight_polytope.dimension},
                        {"weight_polytope", to_json(s.weight_polytope)}};
  if (s.latitude) out["latitude"] = to_json(*s.latitude);
  if (!s.generating_subset.empty()) out["generating_subset"] = s.generating_subset;
  return out;
}

nlohmann::json to_json(const OptimalFamily& f) {
  nlohmann::json kernels = nlohmann::json::array();
  for (const auto& k : f.kernels) {
    kernels.push_back({{"hypothesis", k.hypothesis},
                       {"direction", k.direction ? to_json(*k.direction) : nlohmann::json(nullptr)}});
  }
  nlohmann::json vertex_povms = nlohmann::json::array();
  for (const auto& p : f.vertex_povms) vertex_povms.push_back(to_json(p));
  nlohmann::json out = {{"kernels", kernels},
                        {"free_hypotheses", f.free_hypotheses},
                        {"polytope", to_json(f.polytope)},
                        {"polytope_dimension", f.polytope.dimension},
                        {"non_unique", f.non_unique},
                        {"vertex_povms", vertex_povms},
                        {"minimal_support", f.minimal_support}};
  if (f.minimal_povm) out["minimal_povm"] = to_json(*f.minimal_povm);
  return out;
}

}  // namespace qdisc
