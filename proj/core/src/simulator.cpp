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
#include "qdisc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <thread>

#include <nlohmann/json.hpp>

namespace qdisc {
namespace {

// SplitMix64 finaliser.
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t sample(const std::vector<double>& cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

std::vector<double> cumulative(const std::vector<double>& p) {
  std::vector<double> cdf(p.size());
  std::partial_sum(p.begin(), p.end(), cdf.begin());
  return cdf;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t counter) const { return mix(seed_ ^ mix(counter)); }

double CounterRng::uniform(std::uint64_t counter) const {
  return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

std::vector<std::vector<double>> outcome_distribution(const Ensemble& e, const Povm& p) {
  if (p.size() != e.size()) throw ValidationError("POVM and ensemble sizes differ");
  std::vector<std::vector<double>> rows(e.size(), std::vector<double>(p.size()));
  for (std::size_t j = 0; j < e.size(); ++j) {
    double total = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
      double q = trace_product(e.state(j).op(), p.element(k).op());
      if (q < -kStructuralTol) {
        throw ValidationError("negative outcome probability; POVM element is not PSD");
      }
      q = std::max(q, 0.0);
      rows[j][k] = q;
      total += q;
    }
    for (double& q : rows[j]) q /= total;
  }
  return rows;
}

SimulationReport simulate(const Ensemble& e, const Povm& p, std::uint64_t trials,
                          std::uint64_t seed, unsigned threads) {
  if (trials == 0) throw ValidationError("need at least one trial");
  const std::size_t n = e.size();
  const auto rows = outcome_distribution(e, p);
  std::vector<std::vector<double>> row_cdf;
  for (const auto& r : rows) row_cdf.push_back(cumulative(r));
  const auto prior_cdf = cumulative(e.priors());
  const CounterRng rng(seed);

  using Counts = std::vector<std::vector<std::uint64_t>>;
  auto run_range = [&](std::uint64_t begin, std::uint64_t end, Counts& counts) {
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::size_t j = sample(prior_cdf, rng.uniform(2 * i));
      const std::size_t k = sample(row_cdf[j], rng.uniform(2 * i + 1));
      ++counts[j][k];
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(
                                                                        std::min<std::uint64_t>(trials, 1024))));
  std::vector<Counts> partial(workers, Counts(n, std::vector<std::uint64_t>(n, 0)));
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t begin = std::min(trials, w * chunk);
      const std::uint64_t end = std::min(trials, begin + chunk);
      if (workers == 1) {
        run_range(begin, end, partial[w]);
      } else {
        pool.emplace_back([&, begin, end, w] { run_range(begin, end, partial[w]); });
      }
    }
  }

  SimulationReport report;
  report.trials = trials;
  report.seed = seed;
  report.counts.assign(n, std::vector<std::uint64_t>(n, 0));
  for (const auto& part : partial) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) report.counts[j][k] += part[j][k];
    }
  }
  std::uint64_t errors = 0;
  report.confusion.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint64_t row_total =
        std::accumulate(report.counts[j].begin(), report.counts[j].end(), std::uint64_t{0});
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) errors += report.counts[j][k];
      // Hypotheses never drawn keep an all-zero row.
      if (row_total > 0) {
        report.confusion[j][k] =
            static_cast<double>(report.counts[j][k]) / static_cast<double>(row_total);
      }
    }
  }
  report.empirical_error = static_cast<double>(errors) / static_cast<double>(trials);
  report.analytic_error = error_probability(p, e);
  report.standard_error = std::sqrt(report.analytic_error * (1.0 - report.analytic_error) /
                                    static_cast<double>(trials));
  return report;
}

nlohmann::json to_json(const SimulationReport& r) {
  return {{"trials", r.trials},
          {"seed", r.seed},
          {"empirical_error", r.empirical_error},
          {"analytic_error", r.analytic_error},
          {"standard_error", r.standard_error},
          {"confusion", r.confusion},
          {"counts", r.counts}};
}

std::string confusion_csv(const SimulationReport& r) {
  std::string out;
  char buf[64];
  for (const auto& row : r.confusion) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g", row[k]);
      if (k) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace qdisc
