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

// Perfect matchings of the k-partite complement, and the balanced coloring
// they induce. A balanced coloring exists iff the complement has a perfect
// matching: give each matching tuple one color, choosing the smallest color
// that creates no monochromatic edge. At most k * Delta edges meet a tuple,
// so k * Delta + 1 colors always suffice.

#ifndef BALHYP_MATCHING_H_
#define BALHYP_MATCHING_H_

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "balhyp/hypergraph.h"
#include "balhyp/random.h"

namespace balhyp {

struct Matching {
  std::vector<std::vector<Index>> edges;
  bool perfect = false;
};

// Checks that every tuple is a valid transversal, is not an edge of h, and
// shares no vertex with another tuple; when `m.perfect` is set, also that
// every vertex is covered.
Diagnostics ValidateComplementMatching(const KPartiteHypergraph& h,
                                       const Matching& m);

class MatchingError : public std::runtime_error {
 public:
  enum class Kind {
    kBudgetExhausted,     // search gave up; existence not disproved
    kNoPerfectMatching,   // a vertex lies in no complement tuple
  };
  MatchingError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::size_t kDefaultMatchingRestarts = 10'000;

struct PmSearchResult {
  Matching matching;
  std::size_t restarts_used = 0;
  std::vector<std::string> warnings;
};

// Randomized greedy search for a perfect matching of the complement of an
// n-balanced h. Part-0 vertices are matched in increasing order; each is
// extended part by part through uncovered vertices in random order, with a
// depth-first fallback over the candidates. A vertex that cannot be extended
// triggers local repair (release one, then two, earlier tuples and rebuild);
// if repair fails the search restarts, up to `restarts` times. Restart r
// draws from DeriveSeed(seed, ..., r).
//
// Throws MatchingError and std::invalid_argument (h not n-balanced).
PmSearchResult FindPerfectMatchingInComplement(
    const KPartiteHypergraph& h, Seed seed,
    std::size_t restarts = kDefaultMatchingRestarts);

inline constexpr double kDefaultBacktrackBudget = 1e8;

// Exhaustive backtracking; nullopt iff no perfect matching exists. Throws
// BudgetExceeded after `node_budget` search nodes.
std::optional<Matching> ExactPerfectMatchingInComplement(
    const KPartiteHypergraph& h, double node_budget = kDefaultBacktrackBudget);

// Colors the tuples of a perfect complement matching in order, each with the
// smallest color above `color_offset` that keeps the coloring proper. Uses
// at most k * Delta(h) + 1 colors; the bound is checked and a violation
// throws std::logic_error. Throws std::invalid_argument when `m` fails
// ValidateComplementMatching or is not perfect.
PartialColoring ColorFromMatching(const KPartiteHypergraph& h, const Matching& m,
                                  Color color_offset = 0);

struct FallbackResult {
  PartialColoring coloring;
  Matching matching;
  std::size_t colors_used = 0;
  std::vector<std::string> warnings;
};

// Matching search followed by ColorFromMatching. Runs with a warning when
// Delta(h) > n/2, outside the range where a matching is guaranteed.
FallbackResult FallbackColoring(const KPartiteHypergraph& h, Seed seed,
                                std::size_t restarts = kDefaultMatchingRestarts,
                                Color color_offset = 0);

}  // namespace balhyp

#endif  // BALHYP_MATCHING_H_
