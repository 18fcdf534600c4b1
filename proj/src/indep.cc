// Copyright 2026 The balhyp Authors
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

#include "balhyp/indep.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

#include "balhyp/parallel.h"

namespace balhyp {
namespace {

std::string Approx(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

}  // namespace

IndParams ComputeIndParams(int k, double epsilon, double avg_degree, Index n) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (!(epsilon > 0 && epsilon < 1)) {
    throw std::invalid_argument("epsilon must lie in (0, 1)");
  }
  if (!(avg_degree >= 2)) {
    throw std::invalid_argument("average degree D = " +
                                std::to_string(avg_degree) +
                                " is below 2; the parameter regime is invalid");
  }
  IndParams params;
  params.epsilon = epsilon;
  params.k = k;
  params.avg_degree = avg_degree;
  params.n = n;
  const double log_ratio = std::log(avg_degree) / avg_degree;
  params.p = std::pow((1 - epsilon / 4) / (k - 1) * log_ratio, 1.0 / (k - 1));
  if (!(params.p > 0 && params.p < 1)) {
    throw std::invalid_argument("inclusion probability p = " +
                                std::to_string(params.p) +
                                " outside (0, 1); the parameter regime is invalid");
  }
  params.delta = std::pow(avg_degree, -(1 - epsilon / 8) / (k - 1));
  const double target_fraction =
      std::pow((1 - epsilon) / (k - 1) * log_ratio, 1.0 / (k - 1));
  params.target = target_fraction * n;
  params.target_supported = target_fraction <= params.delta / 2;
  params.default_trials = static_cast<std::size_t>(
      std::clamp(std::ceil(8 / params.delta), 1.0, 1e5));
  return params;
}

IndParams ComputeIndParams(const KPartiteHypergraph& h, double epsilon) {
  const Index n = h.n();
  if (n == 0) throw std::invalid_argument("hypergraph has empty parts");
  return ComputeIndParams(h.k(), epsilon,
                          static_cast<double>(h.num_edges()) / n, n);
}

IndOutcome RunInd(const KPartiteHypergraph& h, double p, Seed seed) {
  h.RequireBalanced("the independent set procedure");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  const int k = h.k();
  const int last = k - 1;
  const Index n = h.n();
  Rng rng(seed);
  std::vector<std::vector<bool>> in(k, std::vector<bool>(n, false));
  for (int i = 0; i < last; ++i) {
    for (Index v = 0; v < n; ++v) in[i][v] = rng.Bernoulli(p);
  }
  for (Index v = 0; v < n; ++v) {
    bool admissible = true;
    for (std::uint32_t e : h.incident_edges({last, v})) {
      auto members = h.edge(e);
      bool covered = true;
      for (int i = 0; i < last && covered; ++i) covered = in[i][members[i]];
      if (covered) {
        admissible = false;
        break;
      }
    }
    in[last][v] = admissible;
  }
  IndOutcome out;
  out.seed = seed;
  out.raw.resize(k);
  out.part_sizes.resize(k);
  for (int i = 0; i < k; ++i) {
    for (Index v = 0; v < n; ++v) {
      if (in[i][v]) out.raw[i].push_back(v);
    }
    out.part_sizes[i] = out.raw[i].size();
  }
  const std::size_t side =
      *std::min_element(out.part_sizes.begin(), out.part_sizes.end());
  std::vector<std::vector<Index>> truncated(k);
  for (int i = 0; i < k; ++i) {
    truncated[i].assign(out.raw[i].begin(), out.raw[i].begin() + side);
  }
  out.balanced = BalancedSet(std::move(truncated));
  return out;
}

TrialSummary BestOfTrials(const KPartiteHypergraph& h, double p,
                          std::size_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trial count must be at least 1");
  h.RequireBalanced("best-of-trials");
  TrialSummary summary;
  summary.part_sizes.resize(trials);
  summary.sides.resize(trials);
  ParallelFor(trials, [&](std::size_t t) {
    IndOutcome o = RunInd(h, p, Seed{seed, t});
    summary.sides[t] = o.side();
    summary.part_sizes[t] = std::move(o.part_sizes);
  });
  summary.best_trial = static_cast<std::size_t>(
      std::max_element(summary.sides.begin(), summary.sides.end()) -
      summary.sides.begin());
  summary.best = RunInd(h, p, Seed{seed, summary.best_trial});
  return summary;
}

TrialSummary BestOfTrials(const KPartiteHypergraph& h, const IndParams& params,
                          std::size_t trials, std::uint64_t seed) {
  return BestOfTrials(h, params.p, trials, seed);
}

AlphaResult ExactAlphaB(const KPartiteHypergraph& h, double budget) {
  const Index max_side =
      *std::min_element(h.part_sizes().begin(), h.part_sizes().end());
  double total = 0;
  for (Index s = 0; s <= max_side; ++s) total += BalancedCandidateCount(h, s);
  if (total > budget) {
    throw BudgetExceeded("exact balanced independence number: " +
                         Approx(total) +
                         " candidate sets exceed the enumeration budget");
  }
  for (Index s = max_side; s > 0; --s) {
    if (auto found = FindBalancedIndependentSet(h, s, budget)) {
      return {s, std::move(*found)};
    }
  }
  return {0, BalancedSet::EmptyFor(h.k())};
}

}  // namespace balhyp
