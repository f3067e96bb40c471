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
#include "qdisc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qdisc/strategy.hpp"

namespace qdisc {
namespace {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

// p_k rho_k = c_k + a_k.sigma
struct DualData {
  std::vector<double> c;
  std::vector<Vec3> a;
};

DualData dual_data(const Ensemble& e) {
  DualData d;
  for (std::size_t k = 0; k < e.size(); ++k) {
    const HermitianOp2 w = e.weighted(k);
    d.c.push_back(w.scalar);
    d.a.push_back(w.bloch);
  }
  return d;
}

// Smallest feasible s for a given v.
double feasible_scalar(const DualData& d, const Vec3& v) {
  double s = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < d.c.size(); ++k) s = std::max(s, d.c[k] + (v - d.a[k]).norm());
  return s;
}

double softplus(double z, double tau) {
  const double u = z / tau;
  return u > 0.0 ? z + tau * std::log1p(std::exp(-u)) : tau * std::log1p(std::exp(u));
}

double sigmoid(double u) {
  return u >= 0.0 ? 1.0 / (1.0 + std::exp(-u)) : std::exp(u) / (1.0 + std::exp(u));
}

// 2 s + mu sum_k softplus(c_k + |v - a_k|_tau - s), with |y|_tau = sqrt(|y|^2 + tau^2).
double penalty(const DualData& d, const Vec4& x, double mu, double tau, Vec4* grad) {
  const double s = x(0);
  const Vec3 v = x.tail<3>();
  double f = 2.0 * s;
  if (grad) *grad << 2.0, 0.0, 0.0, 0.0;
  for (std::size_t k = 0; k < d.c.size(); ++k) {
    const Vec3 diff = v - d.a[k];
    const double nrm = std::sqrt(diff.squaredNorm() + tau * tau);
    const double z = d.c[k] + nrm - s;
    f += mu * softplus(z, tau);
    if (grad) {
      const double sg = mu * sigmoid(z / tau);
      (*grad)(0) -= sg;
      grad->tail<3>() += sg * diff / nrm;
    }
  }
  return f;
}

// BFGS with Armijo backtracking. Returns iterations used.
long minimise(const DualData& d, Vec4& x, double mu, double tau, long budget) {
  Mat4 h = Mat4::Identity();
  Vec4 g;
  double f = penalty(d, x, mu, tau, &g);
  long it = 0;
  for (; it < budget; ++it) {
    if (g.norm() < 1e-13) break;
    Vec4 dir = -h * g;
    if (dir.dot(g) >= 0.0) {
      h.setIdentity();
      dir = -g;
    }
    double step = 1.0;
    Vec4 xn, gn;
    double fn = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * dir;
      fn = penalty(d, xn, mu, tau, &gn);
      if (fn <= f + 1e-4 * step * g.dot(dir)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const Vec4 sk = xn - x;
    const Vec4 yk = gn - g;
    const double sy = sk.dot(yk);
    if (sy > 1e-18) {
      const double rho = 1.0 / sy;
      const Mat4 left = Mat4::Identity() - rho * sk * yk.transpose();
      h = left * h * left.transpose() + rho * sk * sk.transpose();
    }
    const bool stalled = sk.norm() < 1e-15 * (1.0 + x.norm());
    x = xn;
    g = gn;
    f = fn;
    if (stalled) break;
  }
  return it;
}

struct Polished {
  Vec3 v;
  double s;
  std::size_t support;
};

// Tight-constraint point for subset idx, or nothing if it fails KKT or
// global feasibility.
std::optional<Polished> solve_support(const DualData& d, const std::vector<std::size_t>& idx) {
  const std::size_t m = idx.size();
  auto verify = [&](const Vec3& v, double s) -> std::optional<Polished> {
    const double s_all = feasible_scalar(d, v);
    if (s_all > s + 1e-11) return std::nullopt;
    return Polished{v, s_all, m};
  };
  if (m == 1) {
    const std::size_t k = idx[0];
    return verify(d.a[k], d.c[k]);
  }

  const Vec3& a0 = d.a[idx[0]];
  const double c0 = d.c[idx[0]];
  const auto mm = static_cast<Eigen::Index>(m - 1);
  Eigen::MatrixXd edges(3, mm);
  Eigen::VectorXd r(mm), q(mm);
  for (Eigen::Index i = 0; i < mm; ++i) {
    const std::size_t k = idx[static_cast<std::size_t>(i + 1)];
    edges.col(i) = d.a[k] - a0;
    r(i) = edges.col(i).squaredNorm() - (d.c[k] * d.c[k] - c0 * c0);
    q(i) = 2.0 * (d.c[k] - c0);
  }
  const Eigen::MatrixXd gram = 2.0 * edges.transpose() * edges;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(1e-12);
  if (lu.rank() < mm) return std::nullopt;
  const Vec3 w0 = edges * lu.solve(r);
  const Vec3 w1 = edges * lu.solve(q);

  // |w0 + s w1|^2 = (s - c0)^2
  const double qa = w1.squaredNorm() - 1.0;
  const double qb = 2.0 * (w0.dot(w1) + c0);
  const double qc = w0.squaredNorm() - c0 * c0;
  std::vector<double> roots;
  if (std::abs(qa) < 1e-14) {
    if (std::abs(qb) > 1e-300) roots.push_back(-qc / qb);
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < -1e-14) return std::nullopt;
    const double sq = std::sqrt(std::max(0.0, disc));
    const double t = -0.5 * (qb + std::copysign(sq, qb));
    roots.push_back(t / qa);
    if (std::abs(t) > 1e-300) roots.push_back(qc / t);
  }

  std::optional<Polished> best;
  for (double s : roots) {
    if (!std::isfinite(s)) continue;
    const Vec3 v = a0 + w0 + s * w1;
    Eigen::MatrixXd kkt(4, static_cast<Eigen::Index>(m));
    bool ok = true;
    for (std::size_t i = 0; i < m && ok; ++i) {
      const std::size_t k = idx[i];
      const Vec3 diff = v - d.a[k];
      const double dist = diff.norm();
      if (dist < 1e-14 || std::abs(dist - (s - d.c[k])) > 1e-9) {
        ok = false;
        break;
      }
      kkt(0, static_cast<Eigen::Index>(i)) = 1.0;
      kkt.block<3, 1>(1, static_cast<Eigen::Index>(i)) = diff / dist;
    }
    if (!ok) continue;
    const Eigen::Vector4d target(1.0, 0.0, 0.0, 0.0);
    const Eigen::VectorXd mult = kkt.completeOrthogonalDecomposition().solve(target);
    if ((kkt * mult - target).norm() > 1e-9 || (mult.array() < -1e-9).any()) continue;
    auto cand = verify(v, s);
    if (cand && (!best || cand->s < best->s)) best = cand;
  }
  return best;
}

bool next_subset(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t r = idx.size();
  for (std::size_t i = r; i-- > 0;) {
    if (idx[i] < n - r + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<Polished> polish(const DualData& d, const Vec3& v_hint) {
  const std::size_t n = d.c.size();
  std::vector<double> g(n);
  for (std::size_t k = 0; k < n; ++k) g[k] = d.c[k] + (v_hint - d.a[k]).norm();
  const double top = *std::max_element(g.begin(), g.end());

  std::size_t last_size = 0;
  for (double band : {1e-6, 1e-4, 1e-2, std::numeric_limits<double>::infinity()}) {
    std::vector<std::size_t> near;
    for (std::size_t k = 0; k < n; ++k) {
      if (g[k] >= top - band) near.push_back(k);
    }
    if (near.size() == last_size) continue;
    last_size = near.size();
    std::optional<Polished> best;
    for (std::size_t m = 1; m <= std::min<std::size_t>(4, near.size()); ++m) {
      std::vector<std::size_t> pos(m);
      for (std::size_t i = 0; i < m; ++i) pos[i] = i;
      do {
        std::vector<std::size_t> idx(m);
        for (std::size_t i = 0; i < m; ++i) idx[i] = near[pos[i]];
        auto cand = solve_support(d, idx);
        if (cand && (!best || cand->s < best->s - 1e-15)) best = cand;
      } while (next_subset(pos, near.size()));
    }
    if (best) return best;
  }
  return std::nullopt;
}

DualResult make_result(const Ensemble& e, const Vec3& v, double s, std::uint64_t seed) {
  DualResult r;
  r.c_star = {s, v};
  r.p_error = 1.0 - r.c_star.trace();
  const auto slacks = check_dual_feasible(r.c_star, e);
  r.min_slack = *std::min_element(slacks.begin(), slacks.end());
  r.seed = seed;
  return r;
}

}  // namespace

DualResult solve_dual(const Ensemble& e, std::uint64_t seed, const DualOptions& opts) {
  const DualData d = dual_data(e);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> box(-0.5, 0.5);
  std::uniform_real_distribution<double> lift(0.0, 0.5);

  long total_iterations = 0;
  Vec3 best_v = Vec3::Zero();
  double best_obj = std::numeric_limits<double>::infinity();
  int best_restart = -1;
  for (int restart = 0; restart < std::max(1, opts.restarts); ++restart) {
    Vec4 x;
    x.tail<3>() = Vec3(box(rng), box(rng), box(rng));
    x(0) = feasible_scalar(d, x.tail<3>()) + lift(rng);
    double mu = opts.initial_penalty;
    double tau = opts.initial_smoothing;
    long used = 0;
    for (int stage = 0; stage < opts.penalty_stages && used < opts.iteration_budget; ++stage) {
      used += minimise(d, x, mu, tau, opts.iteration_budget - used);
      mu *= opts.penalty_growth;
      tau *= opts.smoothing_decay;
    }
    total_iterations += used;
    const double obj = feasible_scalar(d, x.tail<3>());
    // Strict comparison keeps the lowest restart index on ties.
    if (obj < best_obj) {
      best_obj = obj;
      best_v = x.tail<3>();
      best_restart = restart;
    }
  }

  auto polished = polish(d, best_v);
  if (!polished) {
    DualResult best = make_result(e, best_v, best_obj, seed);
    best.iterations = total_iterations;
    best.winning_restart = best_restart;
    throw DualSolveFailure("dual descent did not reach a certified KKT point", best);
  }
  DualResult out = make_result(e, polished->v, polished->s, seed);
  out.iterations = total_iterations;
  out.winning_restart = best_restart;
  out.support = polished->support;
  return out;
}

Povm recover_povm_from_dual(const DualResult& r, const Ensemble& e) {
  for (double tol : {kActiveSetTol, kCertificationTol}) {
    const DerivedStrategy derived = derive_from_lagrangian(r.c_star, e, tol);
    if (!derived.canonical) continue;
    if (check_global(*derived.canonical, e).verdict == Verdict::kOptimal) {
      return *derived.canonical;
    }
  }
  throw NumericFailure("no non-negative completion of the dual's kernel directions verifies");
}

namespace {

struct RankOneParams {
  std::vector<Vec3> directions;
  std::vector<double> log_weights;
};

std::optional<Povm> complete(const RankOneParams& p) {
  std::vector<HermitianOp2> raw;
  for (std::size_t k = 0; k < p.directions.size(); ++k) {
    raw.push_back(std::exp(p.log_weights[k]) * projector(p.directions[k]));
  }
  try {
    return recomplete(raw);
  } catch (const ValidationError&) {
    return std::nullopt;
  }
}

Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec3 v;
  do {
    v = Vec3(normal(rng), normal(rng), normal(rng));
  } while (v.norm() < 1e-8);
  return v.normalized();
}

}  // namespace

PrimalSearchResult primal_random_search(const Ensemble& e, std::uint64_t seed, int restarts,
                                        int iterations_per_restart) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t n = e.size();

  std::vector<Effect> guess(n, Effect::zero());
  guess[0] = Effect::identity();
  PrimalSearchResult best{Povm(std::move(guess)), 0.0};
  best.p_error = error_probability(best.povm, e);

  for (int restart = 0; restart < std::max(1, restarts); ++restart) {
    RankOneParams params;
    for (std::size_t k = 0; k < n; ++k) {
      const Vec3 b = e.state(k).bloch_vector();
      // First restart starts from the square-root measurement directions.
      if (restart == 0 && b.norm() > 1e-8) {
        params.directions.push_back(b.normalized());
        params.log_weights.push_back(std::log(std::max(e.prior(k), 1e-12)));
      } else {
        params.directions.push_back(random_unit(rng));
        params.log_weights.push_back(normal(rng));
      }
    }
    auto povm = complete(params);
    double current = povm ? error_probability(*povm, e) : 2.0;
    double step = 0.3;
    int failures = 0;
    for (int it = 0; it < iterations_per_restart && step > 1e-7; ++it) {
      RankOneParams trial = params;
      for (std::size_t k = 0; k < n; ++k) {
        trial.directions[k] =
            (trial.directions[k] + step * Vec3(normal(rng), normal(rng), normal(rng))).normalized();
        trial.log_weights[k] += step * normal(rng);
      }
      auto candidate = complete(trial);
      if (!candidate) continue;
      const double pe = error_probability(*candidate, e);
      if (pe < current) {
        current = pe;
        params = std::move(trial);
        povm = std::move(candidate);
        failures = 0;
      } else if (++failures > 40) {
        step *= 0.5;
        failures = 0;
      }
    }
    if (povm && current < best.p_error) {
      best.p_error = current;
      best.povm = std::move(*povm);
    }
  }
  return best;
}

nlohmann::json to_json(const DualResult& r) {
  const auto& v = r.c_star.bloch;
  return {{"c_star", {{"scalar", r.c_star.scalar}, {"bloch", {v(0), v(1), v(2)}}}},
          {"p_error", r.p_error},
          {"iterations", r.iterations},
          {"min_slack", r.min_slack},
          {"seed", r.seed},
          {"winning_restart", r.winning_restart},
          {"support", r.support}};
}

}  // namespace qdisc
