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

// Test-only builders, random generators and reference computations. The
// reference routines work on raw 2x2 complex matrices and never call the
// Pauli-form arithmetic they are used to check.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "qdisc/conditions.hpp"
#include "qdisc/ensemble.hpp"
#include "qdisc/qubit.hpp"

namespace qdisc::testing {

inline constexpr double kPi = std::numbers::pi;
inline double deg(double d) { return d * kPi / 180.0; }

inline DensityOp pure_at(double theta, double phi) {
  return DensityOp::pure(BlochDirection::from_angles(theta, phi));
}

/// Equiprobable pure states at a common polar angle around +z.
inline Ensemble latitude_ensemble(double theta, const std::vector<double>& longitudes) {
  std::vector<DensityOp> states;
  for (double phi : longitudes) states.push_back(pure_at(theta, phi));
  return Ensemble::equiprobable(std::move(states));
}

inline Ensemble trine() { return latitude_ensemble(kPi / 2, {0.0, deg(120), deg(240)}); }

inline Ensemble tetrahedron() {
  std::vector<DensityOp> states;
  for (const Vec3& v : {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1), Vec3(-1, -1, 1)}) {
    states.push_back(DensityOp::from_bloch_vector(v.normalized()));
  }
  return Ensemble::equiprobable(std::move(states));
}

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec3 v;
  do {
    v = Vec3(n(rng), n(rng), n(rng));
  } while (v.norm() < 1e-6);
  return v.normalized();
}

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return q.toRotationMatrix();
}

/// Rotation by angle about axis (Rodrigues).
inline Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()) * v;
}

inline Ensemble rotated(const Ensemble& e, const Eigen::Matrix3d& r) {
  std::vector<DensityOp> states;
  for (const auto& s : e.states()) states.push_back(DensityOp::from_bloch_vector(r * s.bloch_vector()));
  return Ensemble(std::move(states), e.priors());
}

inline Ensemble random_pure_ensemble(std::mt19937_64& rng, std::size_t n) {
  std::vector<DensityOp> states;
  for (std::size_t k = 0; k < n; ++k) states.push_back(DensityOp::from_bloch_vector(random_unit(rng)));
  return Ensemble::equiprobable(std::move(states));
}

/// Mixed states and unequal priors.
inline Ensemble random_general_ensemble(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<DensityOp> states;
  std::vector<double> priors;
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double radius = u(rng) < 0.3 ? 1.0 : std::cbrt(u(rng));
    states.push_back(DensityOp::from_bloch_vector(radius * random_unit(rng)));
    priors.push_back(0.05 + u(rng));
    total += priors.back();
  }
  for (double& p : priors) p /= total;
  // Absorb rounding so the priors sum to 1 to machine precision.
  double rest = 1.0;
  for (std::size_t k = 0; k + 1 < n; ++k) rest -= priors[k];
  priors.back() = rest;
  return Ensemble(std::move(states), std::move(priors));
}

/// Random valid POVM: random PSD operators rescaled by S^{-1/2}.
inline Povm random_povm(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  while (true) {
    std::vector<HermitianOp2> raw;
    for (std::size_t k = 0; k < n; ++k) {
      const double r = u(rng);
      raw.push_back(u(rng) * HermitianOp2(0.5, 0.5 * r * random_unit(rng)));
    }
    try {
      return recomplete(raw);
    } catch (const ValidationError&) {
    }
  }
}

using Mat2 = Eigen::Matrix2cd;

inline Mat2 raw_matrix(const HermitianOp2& h) {
  const std::complex<double> i(0.0, 1.0);
  Mat2 sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  return h.scalar * Mat2::Identity() + h.bloch(0) * sx + h.bloch(1) * sy + h.bloch(2) * sz;
}

/// Eigenvalues of a Hermitian 2x2 matrix from its characteristic polynomial.
inline std::pair<double, double> charpoly_eigenvalues(const Mat2& m) {
  const double tr = m.trace().real();
  const double det = m.determinant().real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  return {tr / 2.0 + disc, tr / 2.0 - disc};
}

/// 1 - sum_k p_k Tr(rho_k Pi_k) from raw matrices.
inline double reference_error(const Ensemble& e, const Povm& p) {
  std::complex<double> success = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    success += e.prior(k) * (raw_matrix(e.state(k).op()) * raw_matrix(p.element(k).op())).trace();
  }
  return 1.0 - success.real();
}

/// Perturbs the direction of every non-zero rank-one element by angle about a
/// random perpendicular axis and re-completes with S^{-1/2}.
inline Povm perturb_directions(const Povm& p, double angle, std::mt19937_64& rng) {
  std::vector<HermitianOp2> raw;
  for (const auto& el : p.elements()) {
    const HermitianOp2& op = el.op();
    if (op.norm() <= kCertificationTol || op.bloch.norm() <= kCertificationTol) {
      raw.push_back(op);
      continue;
    }
    const Vec3 d = op.bloch.normalized();
    Vec3 axis = d.cross(random_unit(rng));
    while (axis.norm() < 1e-6) axis = d.cross(random_unit(rng));
    const Vec3 nd = rotate(d, axis, angle);
    raw.push_back(HermitianOp2(op.scalar, op.bloch.norm() * nd));
  }
  return recomplete(raw);
}

}  // namespace qdisc::testing
