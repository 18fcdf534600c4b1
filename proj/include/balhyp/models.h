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

// Random k-partite hypergraphs and the sparse upper-bound construction:
// sample H(k, N, p), delete the highest-degree vertices of each part, and
// bound the chance that a balanced independent set of a given side
// survives.

#ifndef BALHYP_MODELS_H_
#define BALHYP_MODELS_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "balhyp/hypergraph.h"
#include "balhyp/random.h"

namespace balhyp {

// Raised by exhaustive searches whose enumeration would exceed the budget.
// Never accompanied by a partial answer.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultEnumerationBudget = 1e8;

// Parameters of the upper-bound construction for target maximum degree
// Delta and final part size n. All logarithms are natural.
struct UpperBoundParams {
  double epsilon = 0;
  int k = 0;
  double delta = 0;  // target maximum degree
  Index n = 0;
  double gamma = 0;  // epsilon / (2 k^2)
  double big_n = 0;  // n / (1 - gamma)
  double p = 0;      // Delta / ((1 + gamma) N^(k-1))
  double s = 0;      // ((k + eps)/(k - 1) * log Delta / Delta)^(1/(k-1)) * n

  // gamma * N rounded up: removed per part.
  Index trim_count = 0;
  // Integer part size to sample, n + trim_count.
  Index sample_size = 0;
  // s rounded down.
  Index side = 0;
};

// Throws std::invalid_argument unless k >= 2, 0 < epsilon, Delta > 1,
// gamma < 1, 0 < p <= 1 and s <= n.
UpperBoundParams ComputeUpperBoundParams(double epsilon, int k, double delta,
                                         Index n);

// Samples H(k, N, p): every one of the N^k transversals is an edge
// independently with probability p. Output depends only on the arguments.
// Throws std::invalid_argument for k < 2, N < 1, p outside [0, 1], or
// N^k beyond 2^63.
KPartiteHypergraph SampleHknp(int k, Index big_n, double p, Seed seed);

// Transversal counts up to this use one uniform variate per transversal;
// larger spaces use geometric gap skipping.
inline constexpr std::uint64_t kBernoulliSamplingLimit = 10'000'000;

// Removes the t highest-degree vertices of every part (ties: lower index
// removed first). Throws std::invalid_argument unless t < every part size.
InducedSubhypergraph TrimTopDegree(const KPartiteHypergraph& h, Index t);

// Samples H(k, N, p) with the ledger's integer N and trims trim_count
// vertices per part, leaving an n-balanced hypergraph.
struct UpperBoundInstance {
  KPartiteHypergraph sampled;
  InducedSubhypergraph trimmed;
  bool degree_target_met = false;  // Delta(trimmed) <= Delta
};
UpperBoundInstance BuildUpperBoundInstance(const UpperBoundParams& params,
                                           Seed seed);

// log of C(N, s)^k (1 - p)^(s^k), evaluated with lgamma/log1p. Returns
// -infinity when p == 1 and s >= 1.
double LogUnionBoundBis(int k, std::uint64_t big_n, std::uint64_t s, double p);
// exp(LogUnionBoundBis); may be larger than 1 (a vacuous bound).
double UnionBoundBis(int k, std::uint64_t big_n, std::uint64_t s, double p);

// C(n_1, s) * ... * C(n_k, s) as a double.
double BalancedCandidateCount(const KPartiteHypergraph& h, std::uint64_t s);

// Exhaustive search for a balanced independent set of side s. Enumeration
// order is lexicographic over the subsets of parts 0..k-2; the last part is
// filled with its lowest-index admissible vertices. Throws BudgetExceeded
// when BalancedCandidateCount(h, s) exceeds `budget`.
std::optional<BalancedSet> FindBalancedIndependentSet(
    const KPartiteHypergraph& h, std::uint64_t s,
    double budget = kDefaultEnumerationBudget);

bool ExistsBalancedIndependentSet(const KPartiteHypergraph& h, std::uint64_t s,
                                  double budget = kDefaultEnumerationBudget);

}  // namespace balhyp

#endif  // BALHYP_MODELS_H_
