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

// JSON views of solver results. Conversions for the other types live next to
// them (ensemble.hpp, conditions.hpp, oracle.hpp, simulator.hpp).

#include <nlohmann/json.hpp>

#include "qdisc/solver.hpp"

namespace qdisc {

nlohmann::json to_json(const HermitianOp2& h);
nlohmann::json to_json(const Vec3& v);
nlohmann::json to_json(const LatitudeBasis& b);
nlohmann::json to_json(const WeightPolytope& p);
nlohmann::json to_json(const OptimalSolution& s);
nlohmann::json to_json(const OptimalFamily& f);

}  // namespace qdisc
