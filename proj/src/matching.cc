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

#include "balhyp/matching.h"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "balhyp/models.h"

namespace balhyp {

namespace {

constexpr std::uint64_t kMatchingSeedTag = 0x6d61746368ULL;  // "match"
// Search nodes one extension may visit before it counts as a failure.
constexpr std::size_t kExtendNodeCap = 200'000;

// Largest number of edges through a single (k-1)-vertex selection.
std::size_t MaxCoCodegree(const KPartiteHypergraph& h) {
  const int k = h.k();
  std::size_t best = 0;
  for (int skip = 0; skip < k; ++skip) {
    std::unordered_map<std::uint64_t, std::size_t> counts;
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      auto members = h.edge(e);
      std::uint64_t key = 0;
      for (int i = 0; i < k; ++i) {
        if (i != skip) key = key * h.part_size(i) + members[i];
      }
      best = std::max(best, ++counts[key]);
    }
  }
  return best;
}

std::vector<std::string> PrecheckWarnings(const KPartiteHypergraph& h) {
  std::vector<std::string> warnings;
  const Index n = h.n();
  // Each (k-1)-selection extends to n transversals, so its complement
  // codegree is n minus its codegree in h.
  const std::size_t co_min = n - MaxCoCodegree(h);
  if (co_min + h.max_degree() < n) {
    warnings.push_back("complement codegree " + std::to_string(co_min) +
                       " is below n - Delta(H)");
  }
  if (2 * co_min < n) {
    warnings.push_back("complement (k-1)-codegree " + std::to_string(co_min) +
                       " is below n/2; a perfect matching is not guaranteed");
  }
  return warnings;
}

void RequireNoSaturatedVertex(const KPartiteHypergraph& h) {
  const Index n = h.n();
  if (n == 0) return;
  const std::uint64_t full = h.NumTransversals() / n;
  for (int i = 0; i < h.k(); ++i) {
    for (Index v = 0; v < n; ++v) {
      if (h.degree({i, v}) == full) {
        throw MatchingError(MatchingError::Kind::kNoPerfectMatching,
                            "vertex " + std::to_string(v) + " of part " +
                                std::to_string(i) +
                                " lies in no complement tuple");
      }
    }
  }
}

class GreedyMatcher {
 public:
  GreedyMatcher(const KPartiteHypergraph& h, Seed seed)
      : h_(h),
        k_(h.k()),
        n_(h.n()),
        covered_(k_, std::vector<char>(n_, 0)),
        tuple_of_(n_),
        rng_(seed) {}

  bool Run() {
    for (Index a = 0; a < n_; ++a) {
      if (auto t = Extend(a)) {
        Place(*t);
      } else if (!Repair(a)) {
        return false;
      }
    }
    return true;
  }

  Matching Result() const {
    Matching m;
    m.edges = tuple_of_;
    m.perfect = true;
    return m;
  }

 private:
  std::optional<std::vector<Index>> Extend(Index a) {
    std::vector<std::vector<Index>> candidates(k_);
    for (int i = 1; i < k_; ++i) {
      for (Index v = 0; v < n_; ++v) {
        if (!covered_[i][v]) candidates[i].push_back(v);
      }
      rng_.Shuffle(std::span<Index>(candidates[i]));
    }
    std::vector<Index> tuple(k_);
    tuple[0] = a;
    std::size_t nodes = 0;
    if (Descend(1, tuple, candidates, nodes)) return tuple;
    return std::nullopt;
  }

  bool Descend(int part, std::vector<Index>& tuple,
               const std::vector<std::vector<Index>>& candidates,
               std::size_t& nodes) {
    for (Index v : candidates[part]) {
      if (++nodes > kExtendNodeCap) return false;
      tuple[part] = v;
      if (part == k_ - 1) {
        if (!h_.HasEdge(tuple)) return true;
      } else if (Descend(part + 1, tuple, candidates, nodes)) {
        return true;
      }
    }
    return false;
  }

  void Place(const std::vector<Index>& t) {
    for (int i = 0; i < k_; ++i) covered_[i][t[i]] = 1;
    tuple_of_[t[0]] = t;
  }

  void Remove(Index a) {
    for (int i = 0; i < k_; ++i) covered_[i][tuple_of_[a][i]] = 0;
    tuple_of_[a].clear();
  }

  // Releases the tuples of `victims`, then tries to rebuild `a` and every
  // victim. Restores the previous state on failure.
  bool TryRebuild(Index a, std::span<const Index> victims) {
    std::vector<std::vector<Index>> saved;
    for (Index v : victims) {
      saved.push_back(tuple_of_[v]);
      Remove(v);
    }
    std::vector<Index> order = {a};
    order.insert(order.end(), victims.begin(), victims.end());
    std::vector<Index> placed;
    bool ok = true;
    for (Index x : order) {
      auto t = Extend(x);
      if (!t) {
        ok = false;
        break;
      }
      Place(*t);
      placed.push_back(x);
    }
    if (ok) return true;
    for (Index x : placed) Remove(x);
    for (const auto& t : saved) Place(t);
    return false;
  }

  bool Repair(Index a) {
    std::vector<Index> matched;
    for (Index b = 0; b < n_; ++b) {
      if (!tuple_of_[b].empty()) matched.push_back(b);
    }
    rng_.Shuffle(std::span<Index>(matched));
    for (Index b : matched) {
      const Index victims[] = {b};
      if (TryRebuild(a, victims)) return true;
    }
    // Depth two: a bounded number of random pairs.
    const std::size_t pairs = std::min<std::size_t>(
        4 * static_cast<std::size_t>(n_),
        matched.size() * (matched.size() - (matched.empty() ? 0 : 1)) / 2);
    for (std::size_t attempt = 0; attempt < pairs; ++attempt) {
      const std::size_t x = rng_.UniformInt(matched.size());
      std::size_t y = rng_.UniformInt(matched.size() - 1);
      if (y >= x) ++y;
      const Index victims[] = {matched[x], matched[y]};
      if (TryRebuild(a, victims)) return true;
    }
    return false;
  }

  const KPartiteHypergraph& h_;
  int k_;
  Index n_;
  std::vector<std::vector<char>> covered_;
  std::vector<std::vector<Index>> tuple_of_;
  Rng rng_;
};

class ExactMatcher {
 public:
  ExactMatcher(const KPartiteHypergraph& h, double budget)
      : h_(h),
        k_(h.k()),
        n_(h.n()),
        budget_(budget),
        covered_(k_, std::vector<char>(n_, 0)),
        tuples_(n_, std::vector<Index>(k_)) {}

  bool Search(Index a, int part) {
    if (a == n_) return true;
    if (part == k_) {
      if (h_.HasEdge(tuples_[a])) return false;
      return Search(a + 1, 1);
    }
    for (Index v = 0; v < n_; ++v) {
      if (covered_[part][v]) continue;
      if (++nodes_ > budget_) {
        throw BudgetExceeded("exact matching search exceeded its node budget");
      }
      covered_[part][v] = 1;
      tuples_[a][part] = v;
      if (Search(a, part + 1)) return true;
      covered_[part][v] = 0;
    }
    return false;
  }

  Matching Result() {
    for (Index a = 0; a < n_; ++a) tuples_[a][0] = a;
    return {tuples_, true};
  }

  void Prepare() {
    for (Index a = 0; a < n_; ++a) tuples_[a][0] = a;
  }

 private:
  const KPartiteHypergraph& h_;
  int k_;
  Index n_;
  double budget_;
  double nodes_ = 0;
  std::vector<std::vector<char>> covered_;
  std::vector<std::vector<Index>> tuples_;
};

}  // namespace

Diagnostics ValidateComplementMatching(const KPartiteHypergraph& h,
                                       const Matching& m) {
  Diagnostics d;
  const int k = h.k();
  std::vector<std::vector<int>> owner(k);
  for (int i = 0; i < k; ++i) owner[i].assign(h.part_size(i), -1);
  for (std::size_t t = 0; t < m.edges.size(); ++t) {
    const auto& tuple = m.edges[t];
    const std::string name = "tuple " + std::to_string(t);
    if (static_cast<int>(tuple.size()) != k) {
      d.violations.push_back(name + ": wrong arity");
      continue;
    }
    bool in_range = true;
    for (int i = 0; i < k; ++i) {
      if (tuple[i] >= h.part_size(i)) {
        d.violations.push_back(name + ": index out of range in part " +
                               std::to_string(i));
        in_range = false;
      }
    }
    if (!in_range) continue;
    if (h.HasEdge(tuple)) d.violations.push_back(name + ": is an edge of H");
    for (int i = 0; i < k; ++i) {
      int& o = owner[i][tuple[i]];
      if (o >= 0) {
        d.violations.push_back(name + ": shares part " + std::to_string(i) +
                               " vertex " + std::to_string(tuple[i]) +
                               " with tuple " + std::to_string(o));
      } else {
        o = static_cast<int>(t);
      }
    }
  }
  if (m.perfect) {
    for (int i = 0; i < k; ++i) {
      for (Index v = 0; v < h.part_size(i); ++v) {
        if (owner[i][v] < 0) {
          d.violations.push_back("vertex " + std::to_string(v) + " of part " +
                                 std::to_string(i) + " is uncovered");
        }
      }
    }
  }
  return d;
}

PmSearchResult FindPerfectMatchingInComplement(const KPartiteHypergraph& h,
                                               Seed seed,
                                               std::size_t restarts) {
  h.RequireBalanced("perfect matching search");
  PmSearchResult result;
  result.warnings = PrecheckWarnings(h);
  RequireNoSaturatedVertex(h);
  for (std::size_t r = 0; r < restarts; ++r) {
    GreedyMatcher matcher(h, DeriveSeed(seed, kMatchingSeedTag, r));
    if (matcher.Run()) {
      result.matching = matcher.Result();
      result.restarts_used = r + 1;
      return result;
    }
  }
  throw MatchingError(MatchingError::Kind::kBudgetExhausted,
                      "perfect matching search exhausted " +
                          std::to_string(restarts) + " restarts");
}

std::optional<Matching> ExactPerfectMatchingInComplement(
    const KPartiteHypergraph& h, double node_budget) {
  h.RequireBalanced("exact perfect matching search");
  ExactMatcher matcher(h, node_budget);
  matcher.Prepare();
  if (!matcher.Search(0, 1)) return std::nullopt;
  return matcher.Result();
}

PartialColoring ColorFromMatching(const KPartiteHypergraph& h, const Matching& m,
                                  Color color_offset) {
  Diagnostics d = ValidateComplementMatching(h, m);
  if (!d.ok()) {
    throw std::invalid_argument("not a complement matching: " +
                                d.violations.front());
  }
  if (!m.perfect || m.edges.size() != (h.k() == 0 ? 0 : h.part_size(0)) ||
      !h.is_balanced()) {
    throw std::invalid_argument("matching is not perfect");
  }
  const int k = h.k();
  const std::size_t bound = static_cast<std::size_t>(k) * h.max_degree() + 1;
  PartialColoring coloring = PartialColoring::For(h, color_offset);
  std::size_t used = 0;
  std::vector<char> forbidden;
  for (const auto& tuple : m.edges) {
    forbidden.assign(bound + 2, 0);
    for (int i = 0; i < k; ++i) {
      for (std::uint32_t e : h.incident_edges({i, tuple[i]})) {
        auto members = h.edge(e);
        // The edge turns monochromatic iff its members outside the tuple
        // already share one color.
        Color shared = kUncolored;
        bool blocks = true;
        for (int j = 0; j < k && blocks; ++j) {
          if (members[j] == tuple[j]) continue;
          const Color c = coloring.get({j, members[j]});
          if (c == kUncolored || (shared != kUncolored && c != shared)) {
            blocks = false;
          }
          shared = c;
        }
        if (blocks && shared > color_offset &&
            shared - color_offset < forbidden.size()) {
          forbidden[shared - color_offset] = 1;
        }
      }
    }
    std::size_t c = 1;
    while (forbidden[c]) ++c;
    if (c > bound) {
      throw std::logic_error("matching coloring exceeded k * Delta + 1 colors");
    }
    used = std::max(used, c);
    coloring.ExtendPalette(color_offset + static_cast<Color>(c));
    for (int i = 0; i < k; ++i) {
      coloring.set({i, tuple[i]}, color_offset + static_cast<Color>(c));
    }
  }
  return coloring;
}

FallbackResult FallbackColoring(const KPartiteHypergraph& h, Seed seed,
                                std::size_t restarts, Color color_offset) {
  h.RequireBalanced("fallback coloring");
  FallbackResult out;
  const Index n = h.n();
  if (2 * h.max_degree() > n) {
    out.warnings.push_back("Delta(H) = " + std::to_string(h.max_degree()) +
                           " exceeds n/2 = " + std::to_string(n / 2.0) +
                           "; proceeding without a guarantee");
  }
  PmSearchResult pm = FindPerfectMatchingInComplement(h, seed, restarts);
  out.warnings.insert(out.warnings.end(), pm.warnings.begin(),
                      pm.warnings.end());
  out.matching = std::move(pm.matching);
  out.coloring = ColorFromMatching(h, out.matching, color_offset);
  out.colors_used = out.coloring.num_colors_used();
  return out;
}

}  // namespace balhyp
