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

// Closed-form linear algebra for single-qubit operators.
//
// Every 2x2 Hermitian operator is written H = s*1 + v.sigma with real s and a
// real 3-vector v, so its eigenvalues are s +/- |v| and its eigenprojectors
// are (1 +/- v.sigma/|v|)/2. Non-Hermitian products use the same form with
// complex coefficients.

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <array>
#include <cmath>
#include <complex>

#include "qdisc/tolerances.hpp"

namespace qdisc {

using Vec3 = Eigen::Vector3d;
using Mat2c = Eigen::Matrix2cd;

struct HermitianOp2 {
  double scalar = 0.0;
  Vec3 bloch = Vec3::Zero();

  HermitianOp2() = default;
  HermitianOp2(double s, const Vec3& v) : scalar(s), bloch(v) {}

  static HermitianOp2 identity() { return {1.0, Vec3::Zero()}; }
  static HermitianOp2 zero() { return {}; }
  /// Throws ValidationError if m is not Hermitian within tol.
  static HermitianOp2 from_matrix(const Mat2c& m, double tol = kStructuralTol);

  Mat2c matrix() const;
  double trace() const { return 2.0 * scalar; }
  double det() const { return scalar * scalar - bloch.squaredNorm(); }
  double max_eigenvalue() const { return scalar + bloch.norm(); }
  double min_eigenvalue() const { return scalar - bloch.norm(); }
  /// Largest absolute eigenvalue.
  double norm() const { return std::abs(scalar) + bloch.norm(); }

  HermitianOp2& operator+=(const HermitianOp2& o) {
    scalar += o.scalar;
    bloch += o.bloch;
    return *this;
  }
  HermitianOp2& operator-=(const HermitianOp2& o) {
    scalar -= o.scalar;
    bloch -= o.bloch;
    return *this;
  }
  HermitianOp2& operator*=(double k) {
    scalar *= k;
    bloch *= k;
    return *this;
  }
  friend HermitianOp2 operator+(HermitianOp2 a, const HermitianOp2& b) { return a += b; }
  friend HermitianOp2 operator-(HermitianOp2 a, const HermitianOp2& b) { return a -= b; }
  friend HermitianOp2 operator*(double k, HermitianOp2 a) { return a *= k; }
  friend HermitianOp2 operator*(HermitianOp2 a, double k) { return a *= k; }
  friend HermitianOp2 operator-(HermitianOp2 a) { return a *= -1.0; }
};

/// Max-norm distance between two operators' (scalar, bloch) coefficients.
double coefficient_distance(const HermitianOp2& a, const HermitianOp2& b);

/// Tr(a b) = 2 (a.scalar b.scalar + a.bloch . b.bloch).
inline double trace_product(const HermitianOp2& a, const HermitianOp2& b) {
  return 2.0 * (a.scalar * b.scalar + a.bloch.dot(b.bloch));
}

/// A general (not necessarily Hermitian) 2x2 operator c0*1 + c.sigma.
struct Operator2 {
  std::complex<double> scalar{0.0, 0.0};
  Eigen::Vector3cd bloch = Eigen::Vector3cd::Zero();

  Operator2() = default;
  Operator2(std::complex<double> s, const Eigen::Vector3cd& v) : scalar(s), bloch(v) {}
  explicit Operator2(const HermitianOp2& h)
      : scalar(h.scalar), bloch(h.bloch.cast<std::complex<double>>()) {}

  Mat2c matrix() const;
  std::complex<double> trace() const { return 2.0 * scalar; }
  Operator2 adjoint() const { return {std::conj(scalar), bloch.conjugate()}; }
  /// (M + M^dagger)/2
  HermitianOp2 hermitian_part() const { return {scalar.real(), bloch.real()}; }
  /// Operator norm of (M - M^dagger)/2.
  double anti_hermitian_norm() const;
  /// Largest singular value.
  double operator_norm() const;

  Operator2& operator+=(const Operator2& o) {
    scalar += o.scalar;
    bloch += o.bloch;
    return *this;
  }
  Operator2& operator-=(const Operator2& o) {
    scalar -= o.scalar;
    bloch -= o.bloch;
    return *this;
  }
  friend Operator2 operator+(Operator2 a, const Operator2& b) { return a += b; }
  friend Operator2 operator-(Operator2 a, const Operator2& b) { return a -= b; }
};

/// Matrix product in Pauli form:
/// (a0 + a.sigma)(b0 + b.sigma) = a0 b0 + a.b + (a0 b + b0 a + i a x b).sigma
Operator2 op_mul(const Operator2& a, const Operator2& b);
inline Operator2 op_mul(const HermitianOp2& a, const HermitianOp2& b) {
  return op_mul(Operator2(a), Operator2(b));
}

/// a b a, which is Hermitian whenever a and b are.
HermitianOp2 sandwich(const HermitianOp2& a, const HermitianOp2& b);

/// Inverse square root of a positive definite operator.
/// Throws ValidationError if min eigenvalue <= tol.
HermitianOp2 inverse_sqrt(const HermitianOp2& h, double tol = kStructuralTol);

struct EigenDecomposition {
  std::array<double, 2> values;  // descending
  std::array<HermitianOp2, 2> projectors;
  // |bloch| below kStructuralTol: projectors are the computational basis.
  bool degenerate = false;
};

EigenDecomposition eigen_decompose(const HermitianOp2& h);

inline double min_eigenvalue(const HermitianOp2& h) { return h.min_eigenvalue(); }

/// A unit vector on the Bloch sphere.
class BlochDirection {
 public:
  BlochDirection() = default;
  /// Throws ValidationError unless | |v| - 1 | <= tol.
  static BlochDirection from_unit(const Vec3& v, double tol = kStructuralTol);
  /// Throws ValidationError for |v| below kStructuralTol.
  static BlochDirection normalized(const Vec3& v);
  /// Polar angle theta from +z, azimuth phi from +x.
  static BlochDirection from_angles(double theta, double phi);

  const Vec3& vector() const { return v_; }
  BlochDirection operator-() const;

  /// Polar angle from axis, in [0, pi].
  double latitude(const Vec3& axis) const;
  /// Azimuth in [0, 2 pi) measured from reference around axis (right-handed).
  double longitude(const Vec3& axis, const Vec3& reference) const;

 private:
  explicit BlochDirection(const Vec3& v) : v_(v) {}
  Vec3 v_ = Vec3::UnitZ();
};

/// Rank-one projector (1 + d.sigma)/2.
inline HermitianOp2 projector(const Vec3& unit) { return {0.5, 0.5 * unit}; }

/// Angle in [0, pi] between two non-zero vectors.
double angle_between(const Vec3& a, const Vec3& b);

/// Wrap an angle to [0, 2 pi).
double wrap_angle(double phi);

/// Any unit vector orthogonal to a non-zero v.
Vec3 any_orthogonal(const Vec3& v);


/// Trace-one positive operator; scalar part fixed at 1/2.
class DensityOp {
 public:
  DensityOp() = default;
  /// Bloch vector b with |b| <= 1; rho = (1 + b.sigma)/2.
  static DensityOp from_bloch_vector(const Vec3& b);
  static DensityOp pure(const BlochDirection& d) { return from_bloch_vector(d.vector()); }
  /// Throws ValidationError unless h has trace 1 and is PSD.
  static DensityOp from_op(const HermitianOp2& h);

  const HermitianOp2& op() const { return op_; }
  Vec3 bloch_vector() const { return 2.0 * op_.bloch; }
  double purity_radius() const { return 2.0 * op_.bloch.norm(); }
  bool is_pure(double tol = kCertificationTol) const {
    return std::abs(purity_radius() - 1.0) <= tol;
  }

 private:
  explicit DensityOp(const HermitianOp2& h) : op_(h) {}
  HermitianOp2 op_{0.5, Vec3::Zero()};
};

/// POVM element: 0 <= E <= 1.
class Effect {
 public:
  Effect() = default;
  /// Throws ValidationError if an eigenvalue leaves [-tol, 1 + upper_tol].
  static Effect from_op(const HermitianOp2& h, double tol = kStructuralTol,
                        double upper_tol = kCertificationTol);
  static Effect zero() { return Effect(HermitianOp2::zero()); }
  static Effect identity() { return Effect(HermitianOp2::identity()); }
  /// weight * (1 + d.sigma)/2, weight in [0, 1].
  static Effect rank_one(double weight, const BlochDirection& d);

  const HermitianOp2& op() const { return op_; }
  double weight() const { return op_.trace(); }
  bool is_zero(double tol = kStructuralTol) const { return op_.norm() <= tol; }

 private:
  explicit Effect(const HermitianOp2& h) : op_(h) {}
  HermitianOp2 op_;
};

/// Unit-trace projector along d. Throws ValidationError for non-unit d.
Effect projector_from_direction(const BlochDirection& d);
Effect projector_from_direction(const Vec3& d);

}  // namespace qdisc
