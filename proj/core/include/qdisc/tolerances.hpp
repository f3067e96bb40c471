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

namespace qdisc {

// Representation error: reconstruction, idempotence, unit norms.
inline constexpr double kStructuralTol = 1e-12;
// Certification: PSD slacks, completeness, stationarity residuals.
inline constexpr double kCertificationTol = 1e-9;
// Agreement between the constructive solver and the iterative dual oracle.
inline constexpr double kOracleAgreementTol = 1e-6;
// Active-set detection on an iterative dual solution.
inline constexpr double kActiveSetTol = 1e-7;
// Cross products below this norm mark a degenerate triple of Bloch vectors.
inline constexpr double kDegenerateCrossTol = 1e-10;

}  // namespace qdisc
