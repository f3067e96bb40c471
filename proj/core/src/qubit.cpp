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
#include "qdisc/qubit.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "qdisc/errors.hpp"

namespace qdisc {
namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return {a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0)};
}

// Plain (non-conjugating) bilinear product.
cd bilinear(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return a(0) * b(0) + a(1) * b(1) + a(2) * b(2);
}

Mat2c pauli_matrix(cd s, const Eigen::Vector3cd& v) {
  Mat2c m;
  m << s + v(2), v(0) - kI * v(1), v(0) + kI * v(1), s - v(2);
  return m;
}

}  // namespace

HermitianOp2 HermitianOp2::from_matrix(const Mat2c& m, double tol) {
  const double anti = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (anti > tol) {
    throw ValidationError("matrix is not Hermitian (residual " + std::to_string(anti) + ")");
  }
  const Mat2c h = 0.5 * (m + m.adjoint());
  const double s = 0.5 * (h(0, 0).real() + h(1, 1).real());
  const double z = 0.5 * (h(0, 0).real() - h(1, 1).real());
  return {s, Vec3(h(1, 0).real(), h(1, 0).imag(), z)};
}

Mat2c HermitianOp2::matrix() const {
  return pauli_matrix(scalar, bloch.cast<cd>());
}

double coefficient_distance(const HermitianOp2& a, const HermitianOp2& b) {
  return std::max(std::abs(a.scalar - b.scalar), (a.bloch - b.bloch).cwiseAbs().maxCoeff());
}

Mat2c Operator2::matrix() const { return pauli_matrix(scalar, bloch); }

double Operator2::anti_hermitian_norm() const {
  // (M - M^dagger)/2 = i (Im s + Im v.sigma), a Hermitian operator times i.
  return std::abs(scalar.imag()) + bloch.imag().norm();
}

double Operator2::operator_norm() const {
  // M^dagger M = a + w.sigma with
  //   a = |c0|^2 + |c|^2,  w = 2 Re(conj(c0) c) + i (conj(c) x c).
  const double a = std::norm(scalar) + bloch.squaredNorm();
  const Eigen::Vector3cd cc = bloch.conjugate();
  const Vec3 w = (2.0 * (std::conj(scalar) * bloch) + kI * cross(cc, bloch)).real();
  return std::sqrt(std::max(0.0, a + w.norm()));
}

Operator2 op_mul(const Operator2& a, const Operator2& b) {
  return {a.scalar * b.scalar + bilinear(a.bloch, b.bloch),
          a.scalar * b.bloch + b.scalar * a.bloch + kI * cross(a.bloch, b.bloch)};
}

HermitianOp2 sandwich(const HermitianOp2& a, const HermitianOp2& b) {
  return op_mul(op_mul(Operator2(a), Operator2(b)), Operator2(a)).hermitian_part();
}

HermitianOp2 inverse_sqrt(const HermitianOp2& h, double tol) {
  const EigenDecomposition eig = eigen_decompose(h);
  if (eig.values[1] <= tol) {
    throw ValidationError("inverse_sqrt needs a positive definite operator");
  }
  return (1.0 / std::sqrt(eig.values[0])) * eig.projectors[0] +
         (1.0 / std::sqrt(eig.values[1])) * eig.projectors[1];
}

EigenDecomposition eigen_decompose(const HermitianOp2& h) {
  EigenDecomposition out;
  const double r = h.bloch.norm();
  out.values = {h.scalar + r, h.scalar - r};
  Vec3 axis;
  if (r < kStructuralTol) {
    out.degenerate = true;
    axis = Vec3::UnitZ();
  } else {
    axis = h.bloch / r;
  }
  out.projectors = {projector(axis), projector(-axis)};
  return out;
}

BlochDirection BlochDirection::from_unit(const Vec3& v, double tol) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > tol) {
    throw ValidationError("Bloch direction must be a unit vector");
  }
  return BlochDirection(v);
}

BlochDirection BlochDirection::normalized(const Vec3& v) {
  const double n = v.norm();
  if (!v.allFinite() || n < kStructuralTol) {
    throw ValidationError("cannot normalise a zero vector");
  }
  return BlochDirection(v / n);
}

BlochDirection BlochDirection::from_angles(double theta, double phi) {
  return BlochDirection(Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                             std::cos(theta)));
}

BlochDirection BlochDirection::operator-() const { return BlochDirection(-v_); }

double BlochDirection::latitude(const Vec3& axis) const { return angle_between(v_, axis); }

double BlochDirection::longitude(const Vec3& axis, const Vec3& reference) const {
  const Vec3 n = axis.normalized();
  const Vec3 x = (reference - reference.dot(n) * n).normalized();
  const Vec3 y = n.cross(x);
  return wrap_angle(std::atan2(v_.dot(y), v_.dot(x)));
}

double angle_between(const Vec3& a, const Vec3& b) {
  // atan2 form stays accurate near 0 and pi.
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double wrap_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(phi, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;
  return w;
}

Vec3 any_orthogonal(const Vec3& v) {
  const Vec3 n = v.normalized();
  // Cross with the coordinate axis least aligned with v.
  Eigen::Index i = 0;
  n.cwiseAbs().minCoeff(&i);
  return n.cross(Vec3::Unit(i)).normalized();
}

DensityOp DensityOp::from_bloch_vector(const Vec3& b) {
  if (!b.allFinite()) throw ValidationError("Bloch vector has non-finite entries");
  if (b.norm() > 1.0 + 2.0 * kStructuralTol) {
    throw ValidationError("Bloch vector length exceeds 1");
  }
  return DensityOp(HermitianOp2(0.5, 0.5 * b));
}

DensityOp DensityOp::from_op(const HermitianOp2& h) {
  if (std::abs(h.trace() - 1.0) > kStructuralTol) {
    throw ValidationError("density operator must have unit trace");
  }
  return from_bloch_vector(2.0 * h.bloch);
}

Effect Effect::from_op(const HermitianOp2& h, double tol, double upper_tol) {
  if (h.min_eigenvalue() < -tol || h.max_eigenvalue() > 1.0 + upper_tol) {
    throw ValidationError("effect eigenvalues must lie in [0, 1]");
  }
  return Effect(h);
}

Effect Effect::rank_one(double weight, const BlochDirection& d) {
  if (weight < 0.0 || weight > 1.0 + kCertificationTol) {
    throw ValidationError("rank-one effect weight must lie in [0, 1]");
  }
  return Effect(weight * projector(d.vector()));
}

Effect projector_from_direction(const BlochDirection& d) { return Effect::rank_one(1.0, d); }

Effect projector_from_direction(const Vec3& d) {
  return projector_from_direction(BlochDirection::from_unit(d));
}

}  // namespace qdisc
