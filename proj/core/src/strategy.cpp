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
#include "qdisc/strategy.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "qdisc/errors.hpp"

namespace qdisc {

Eigen::MatrixXd WeightPolytope::equality_matrix() const {
  Eigen::MatrixXd a(4, static_cast<Eigen::Index>(directions.size()));
  for (std::size_t i = 0; i < directions.size(); ++i) {
    a(0, static_cast<Eigen::Index>(i)) = 1.0;
    a.block<3, 1>(1, static_cast<Eigen::Index>(i)) = directions[i];
  }
  return a;
}

namespace {

// Advances a sorted r-combination of {0..m-1}; false when exhausted.
bool next_combination(std::vector<Eigen::Index>& idx, Eigen::Index m) {
  const auto r = static_cast<Eigen::Index>(idx.size());
  for (Eigen::Index i = r - 1; i >= 0; --i) {
    if (idx[static_cast<std::size_t>(i)] < m - r + i) {
      ++idx[static_cast<std::size_t>(i)];
      for (Eigen::Index j = i + 1; j < r; ++j) {
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

double binomial(Eigen::Index m, Eigen::Index r) {
  double out = 1.0;
  for (Eigen::Index i = 0; i < r; ++i) {
    out *= static_cast<double>(m - i) / static_cast<double>(i + 1);
  }
  return out;
}

}  // namespace

std::vector<Eigen::VectorXd> enumerate_vertices(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                                double tol, std::size_t max_bases) {
  std::vector<Eigen::VectorXd> vertices;
  const Eigen::Index m = a.cols();
  if (m == 0) return vertices;

  // Reduce to r independent rows through the SVD.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff) ++r;
  if (r == 0) return vertices;
  const Eigen::MatrixXd ut = svd.matrixU().transpose();
  const Eigen::VectorXd bt = ut * b;
  if (bt.tail(bt.size() - r).norm() > tol) return vertices;  // inconsistent system
  const Eigen::MatrixXd reduced = ut.topRows(r) * a;
  const Eigen::VectorXd rhs = bt.head(r);

  if (binomial(m, r) > static_cast<double>(max_bases)) {
    throw NumericFailure("weight polytope has too many candidate bases to enumerate");
  }

  std::vector<Eigen::Index> idx(static_cast<std::size_t>(r));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  do {
    Eigen::MatrixXd sub(r, r);
    for (Eigen::Index i = 0; i < r; ++i) sub.col(i) = reduced.col(idx[static_cast<std::size_t>(i)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sub);
    lu.setThreshold(1e-10);
    if (lu.rank() < r) continue;
    const Eigen::VectorXd ws = lu.solve(rhs);
    if ((ws.array() < -tol).any()) continue;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
    for (Eigen::Index i = 0; i < r; ++i) {
      w(idx[static_cast<std::size_t>(i)]) = std::max(0.0, ws(i));
    }
    if ((a * w - b).norm() > tol) continue;
    const bool seen = std::any_of(vertices.begin(), vertices.end(), [&](const Eigen::VectorXd& v) {
      return (v - w).cwiseAbs().maxCoeff() <= tol;
    });
    if (!seen) vertices.push_back(std::move(w));
  } while (next_combination(idx, m));
  return vertices;
}

int affine_dimension(const std::vector<Eigen::VectorXd>& points, double tol) {
  if (points.empty()) return -1;
  if (points.size() == 1) return 0;
  Eigen::MatrixXd diffs(points.front().size(), static_cast<Eigen::Index>(points.size() - 1));
  for (std::size_t i = 1; i < points.size(); ++i) {
    diffs.col(static_cast<Eigen::Index>(i - 1)) = points[i] - points.front();
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * std::max(1.0, sv(0))) ++rank;
  }
  return rank;
}

WeightPolytope build_weight_polytope(std::vector<std::size_t> hypotheses,
                                     std::vector<Vec3> directions, double tol) {
  WeightPolytope poly;
  poly.hypotheses = std::move(hypotheses);
  poly.directions = std::move(directions);
  if (poly.directions.empty()) return poly;
  const Eigen::MatrixXd a = poly.equality_matrix();
  poly.equality_rank = static_cast<int>(Eigen::JacobiSVD<Eigen::MatrixXd>(a).setThreshold(tol).rank());
  poly.vertices = enumerate_vertices(a, WeightPolytope::rhs(), tol);
  poly.dimension = affine_dimension(poly.vertices, tol);
  return poly;
}

Povm povm_from_weights(std::size_t num_hypotheses, const WeightPolytope& polytope,
                       const Eigen::VectorXd& weights) {
  std::vector<HermitianOp2> ops(num_hypotheses);
  for (std::size_t i = 0; i < polytope.hypotheses.size(); ++i) {
    ops.at(polytope.hypotheses[i]) +=
        weights(static_cast<Eigen::Index>(i)) * projector(polytope.directions[i]);
  }
  std::vector<Effect> elements;
  elements.reserve(num_hypotheses);
  for (const auto& op : ops) elements.push_back(Effect::from_op(op, kCertificationTol));
  return Povm(std::move(elements));
}

DerivedStrategy derive_from_lagrangian(const HermitianOp2& c, const Ensemble& e, double det_tol) {
  DerivedStrategy out;
  std::vector<std::size_t> hyps;
  std::vector<Vec3> dirs;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const HermitianOp2 gap = c - e.weighted(k);
    if (gap.norm() <= det_tol) {
      out.free_hypotheses.push_back(k);
      out.eligible.push_back({k, std::nullopt});
    } else if (std::abs(gap.det()) <= det_tol && gap.bloch.norm() > kStructuralTol) {
      // Kernel of s + v.sigma with s = |v| is the -v eigenvector.
      const Vec3 d = -gap.bloch.normalized();
      out.eligible.push_back({k, d});
      hyps.push_back(k);
      dirs.push_back(d);
    }
  }
  out.polytope = build_weight_polytope(std::move(hyps), std::move(dirs));

  if (!out.polytope.empty()) {
    out.canonical = povm_from_weights(e.size(), out.polytope, out.polytope.vertices.front());
  } else if (!out.free_hypotheses.empty()) {
    std::vector<Effect> elements(e.size(), Effect::zero());
    elements[out.free_hypotheses.front()] = Effect::identity();
    out.canonical = Povm(std::move(elements));
  }
  if (out.canonical) {
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (!out.canonical->element(k).is_zero(kCertificationTol)) out.active_set.push_back(k);
    }
  }
  return out;
}

}  // namespace qdisc
