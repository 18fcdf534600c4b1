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

// Two-stage balanced coloring.
//
// Random phase: vertices outside the last part get uniform colors in [q];
// each last-part vertex v then picks uniformly from its list
//   L(v) = { c : no edge e through v has every member of e - v colored c },
// or stays uncolored when L(v) is empty (the failed set U_k).
//
// Rebalancing: with target class size n_c, the last part drops each class
// to n_c (lowest indices first), which fixes the uncolored set U_k'. The
// other parts then drop their classes to n_c, preferring "good" vertices,
// those with fewer than Delta~ edges meeting U_k'. Every class then meets
// every part exactly n_c times.
//
// Completion: the uncolored vertices induce an n'-balanced residual H_phi
// with n' = n - q * n_c; when its maximum degree is small it is colored from
// a perfect complement matching on fresh colors q+1, q+2, .... Attempts are
// checked, never assumed; after max_retries failures the whole hypergraph
// is colored from a matching instead.

#ifndef BALHYP_COLORING_H_
#define BALHYP_COLORING_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "balhyp/hypergraph.h"
#include "balhyp/matching.h"
#include "balhyp/random.h"

namespace balhyp {

// Parameter ledger for maximum degree Delta. Natural logarithms.
struct ColParams {
  double epsilon = 0;
  int k = 0;
  double max_degree = 0;  // Delta
  Index n = 0;
  double gamma = 0;        // epsilon / (2 k^2)
  double q_real = 0;       // (1 + gamma/2) ((k-1) Delta / log Delta)^(1/(k-1))
  Color q = 0;             // ceil(q_real)
  double delta = 0;        // exp(-Delta^(gamma/50))
  double omega = 0;        // 1 / (Delta (log Delta)^(1/(2(k-1))))
  double delta_tilde = 0;  // gamma/(2k) ((k-1) Delta / log Delta)^(1/(k-1))
  std::size_t delta_tilde_eff = 1;  // max(ceil(delta_tilde), 1)
  std::size_t n_c = 0;              // floor((1 - 2 omega) n / q)
  std::size_t final_budget = 0;     // q + k * delta_tilde_eff
  // Set when delta_tilde < 1: Delta is far below the regime the analysis
  // needs, and the residual degree target is only met by luck.
  bool desk_scale_advisory = false;
};

// Throws std::invalid_argument unless k >= 2, epsilon > 0, log Delta > 1 and
// n >= q.
ColParams ComputeColParams(int k, double epsilon, double max_degree, Index n);

struct PhaseState {
  Color q = 0;
  PartialColoring coloring;
  // Last-part vertices left uncolored by the random phase (L(v) empty).
  std::vector<Index> failed;
  // |V_i(c)| right after the random phase; row c = 0 counts uncolored.
  std::vector<std::vector<std::size_t>> phase_class_sizes;

  // Filled in by Rebalance.
  bool rebalanced = false;
  std::size_t n_c = 0;
  // The target n_c exceeded some class and was lowered to the smallest one.
  bool balance_clamped = false;
  // Some class had too few good vertices; bad ones were uncolored too.
  bool good_shortfall = false;
  // U_k' = every uncolored last-part vertex after trimming the last part.
  std::vector<Index> uncolored_last;
  // bad_counts[c][i] = |B_i(c)| for i < k - 1.
  std::vector<std::vector<std::size_t>> bad_counts;
  // uncolored_bad[c][i] = bad vertices uncolored in V_i(c).
  std::vector<std::vector<std::size_t>> uncolored_bad;
};

// The list L(v) of colors still available to last-part vertex v, ascending.
std::vector<Color> AvailableColors(const KPartiteHypergraph& h,
                                   const PartialColoring& coloring, Index v,
                                   Color q);

// Random phase. One stream: first the colors of parts 0..k-2 (ascending),
// then one uniform T in (0,1] per last-part vertex (ascending); a vertex
// with nonempty L(v) takes the ceil(T |L(v)|)-th color of L(v).
// Throws std::invalid_argument when h is not n-balanced or q < 1.
PhaseState ColRandomPhase(const KPartiteHypergraph& h, Color q, Seed seed);

// Trims every class to n_c = min(params.n_c, smallest class) as described
// above. Flags, never fails.
PhaseState Rebalance(const KPartiteHypergraph& h, PhaseState state,
                     const ColParams& params);

// Subhypergraph induced by the uncolored vertices.
InducedSubhypergraph Residual(const KPartiteHypergraph& h,
                              const PhaseState& state);

struct AttemptRecord {
  std::size_t index = 0;
  std::size_t failed = 0;  // |U_k|
  bool failed_small = false;             // |U_k| <= 2 delta n
  bool classes_concentrated = false;     // |V_j(c)| within (n/q)(1 +- 2 omega)
  bool balance_clamped = false;
  bool good_shortfall = false;
  std::size_t n_c = 0;
  std::size_t residual_n = 0;
  std::size_t residual_max_degree = 0;
  bool accepted = false;
  std::string reason;  // why the attempt was rejected, empty if accepted
};

struct ColoringReport {
  PartialColoring coloring;
  std::string path;  // "main" or "fallback"
  std::optional<ColParams> params;
  Color q = 0;
  std::size_t delta_tilde_eff = 0;
  std::size_t retries_used = 0;
  std::size_t colors_used = 0;
  std::size_t residual_max_degree = 0;
  std::vector<AttemptRecord> attempts;
  std::vector<std::string> warnings;
  ColoringVerdict verdict;
};

inline constexpr std::size_t kDefaultColoringRetries = 20;

// Runs attempts 0..max_retries-1 of {random phase, rebalance, residual,
// completion} and returns the first accepted one; otherwise colors h from a
// complement matching. Accepting requires no clamping, Delta(H_phi) <=
// delta_tilde_eff, Delta(H_phi) <= n'/2, and a successful completion.
//
// Edgeless inputs use q = 1. Inputs with 0 < Delta(H) < 3 evaluate the
// ledger at Delta = 3. When the ledger is invalid (n < q) only the matching
// path runs. Throws MatchingError only when both paths fail, and
// std::invalid_argument when h is not n-balanced.
ColoringReport FullColoring(const KPartiteHypergraph& h, double epsilon,
                            std::uint64_t seed,
                            std::size_t max_retries = kDefaultColoringRetries,
                            std::size_t matching_restarts = kDefaultMatchingRestarts);

// Exact distribution of the lists of one last-part vertex, by enumerating
// every color assignment of the parts before the last.
struct ListStatistics {
  std::vector<double> lost;  // lost[c] = P[c not in L(v)], c in [1, q]
  double empty = 0;          // P[L(v) empty]
  std::uint64_t outcomes = 0;
};

// Throws BudgetExceeded when q^((k-1) n) exceeds `budget`.
ListStatistics ExactListStatistics(const KPartiteHypergraph& h, Color q,
                                   Index v, double budget = 1e7);

}  // namespace balhyp

#endif  // BALHYP_COLORING_H_
