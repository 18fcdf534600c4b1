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

// Randomized balanced independent sets.
//
// One trial of the procedure:
//   1. every vertex outside the last part joins I with probability p;
//   2. a last-part vertex v joins I iff no edge e through v has e - v
//      inside I;
//   3. every part of I is truncated to the smallest part size (highest
//      indices dropped first), giving a balanced independent set I'.
// Step 2 makes I independent, so I' always is.

#ifndef BALHYP_INDEP_H_
#define BALHYP_INDEP_H_

#include <cstddef>
#include <vector>

#include "balhyp/hypergraph.h"
#include "balhyp/models.h"
#include "balhyp/random.h"

namespace balhyp {

// Parameters for average degree D. Natural logarithms.
struct IndParams {
  double epsilon = 0;
  int k = 0;
  double avg_degree = 0;
  Index n = 0;
  // ((1 - eps/4)/(k - 1) * log D / D)^(1/(k-1))
  double p = 0;
  // D^(-(1 - eps/8)/(k - 1)); per-trial success is at least delta / 4 once D
  // is large.
  double delta = 0;
  // ((1 - eps)/(k - 1) * log D / D)^(1/(k-1)) * n, the per-part goal.
  double target = 0;
  // target / n <= delta / 2. Fails at small D, where the guarantee on the
  // last part does not cover the goal.
  bool target_supported = false;
  // ceil(8 / delta) clamped to [1, 1e5].
  std::size_t default_trials = 1;
};

// Throws std::invalid_argument unless k >= 2, 0 < epsilon < 1, D >= 2 and
// the resulting p lies in (0, 1).
IndParams ComputeIndParams(int k, double epsilon, double avg_degree, Index n);
// Uses D = |E| / n of an n-balanced hypergraph.
IndParams ComputeIndParams(const KPartiteHypergraph& h, double epsilon);

struct IndOutcome {
  std::vector<std::vector<Index>> raw;  // I, per part, ascending
  BalancedSet balanced;                 // I'
  std::vector<std::size_t> part_sizes;  // |I cap V_i|
  Seed seed;

  std::size_t side() const { return balanced.side(); }
};

// One trial. Throws std::invalid_argument when h is not n-balanced or p is
// outside [0, 1].
IndOutcome RunInd(const KPartiteHypergraph& h, double p, Seed seed);

struct TrialSummary {
  IndOutcome best;
  std::size_t best_trial = 0;
  // Per trial: |I cap V_i| for every part, and the side of I'.
  std::vector<std::vector<std::size_t>> part_sizes;
  std::vector<std::size_t> sides;
};

// Runs trials 0..trials-1 on streams Seed{seed, t} and keeps the largest I'
// (ties: lowest trial index). Trials may run concurrently; the result does
// not depend on scheduling.
TrialSummary BestOfTrials(const KPartiteHypergraph& h, double p,
                          std::size_t trials, std::uint64_t seed);
TrialSummary BestOfTrials(const KPartiteHypergraph& h, const IndParams& params,
                          std::size_t trials, std::uint64_t seed);

struct AlphaResult {
  std::size_t side = 0;
  BalancedSet witness;
};

// Exact balanced independence number (as a per-part side) with a witness.
// Throws BudgetExceeded when sum_s C(n,s)^k exceeds `budget`.
AlphaResult ExactAlphaB(const KPartiteHypergraph& h,
                        double budget = kDefaultEnumerationBudget);

}  // namespace balhyp

#endif  // BALHYP_INDEP_H_
