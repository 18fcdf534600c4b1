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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "balhyp/coloring.h"
#include "balhyp/models.h"
#include "oracles.h"

namespace balhyp {
namespace {

TEST(ColParams, LedgerK2) {
  const ColParams c = ComputeColParams(2, 0.2, 256, 100000);
  const double L = std::log(256.0);
  EXPECT_DOUBLE_EQ(c.gamma, 0.025);
  EXPECT_NEAR(c.q_real, 1.0125 * 256 / L, 1e-12);
  EXPECT_NEAR(c.q_real, 46.7433, 1e-4);
  EXPECT_EQ(c.q, 47u);
  EXPECT_NEAR(c.omega, 1 / (256 * std::sqrt(L)), 1e-15);
  EXPECT_NEAR(c.omega, 0.00165883, 1e-8);
  EXPECT_NEAR(c.delta_tilde, 0.025 / 4 * 256 / L, 1e-12);
  EXPECT_NEAR(c.delta_tilde, 0.288539, 1e-6);
  EXPECT_EQ(c.delta_tilde_eff, 1u);
  EXPECT_TRUE(c.desk_scale_advisory);
  EXPECT_EQ(c.n_c, static_cast<std::size_t>(std::floor((1 - 2 * c.omega) * 100000 / 47)));
  EXPECT_EQ(c.n_c, 2120u);
  EXPECT_NEAR(c.delta, std::exp(-std::pow(256.0, 0.025 / 50)), 1e-15);
}

TEST(ColParams, LedgerK3) {
  // (1 + 0.3/36) * sqrt(2e4 / log 1e4) = 46.99 rounds up to 47.
  const ColParams c = ComputeColParams(3, 0.3, 1e4, 100000);
  const double expected = (1 + 0.3 / 36) * std::sqrt(2e4 / std::log(1e4));
  EXPECT_NEAR(c.q_real, expected, 1e-12);
  EXPECT_EQ(c.q, static_cast<Color>(std::ceil(expected)));
  EXPECT_EQ(c.q, 47u);
}

TEST(ColParams, Rejected) {
  EXPECT_THROW(ComputeColParams(2, 0.2, std::exp(1.0), 1000), std::invalid_argument);
  EXPECT_THROW(ComputeColParams(2, 0.2, 256, 10), std::invalid_argument);
  EXPECT_THROW(ComputeColParams(1, 0.2, 256, 1000), std::invalid_argument);
}

TEST(RandomPhase, EdgelessColorsEverything) {
  const auto h = KPartiteHypergraph::Empty(3, 10);
  const PhaseState s = ColRandomPhase(h, 4, {1, 0});
  EXPECT_TRUE(s.failed.empty());
  EXPECT_TRUE(s.coloring.is_total());
}

TEST(RandomPhase, SingleColorBlocksCoveredVertices) {
  // q = 1: every vertex of parts 0..k-2 gets color 1, so a last-part vertex
  // with any edge has an empty list.
  const KPartiteHypergraph h({3, 3, 3}, {{0, 1, 0}, {2, 2, 2}});
  const PhaseState s = ColRandomPhase(h, 1, {1, 0});
  EXPECT_EQ(s.failed, (std::vector<Index>{0, 2}));
  EXPECT_TRUE(s.coloring.is_colored({2, 1}));
}

TEST(RandomPhase, AlwaysProperAndListsExact) {
  std::mt19937_64 gen(51);
  for (int round = 0; round < 300; ++round) {
    const int k = 2 + round % 3;
    const Index n = 5;
    const auto edges = oracle::RandomEdges(k, n, 0.3, gen);
    const KPartiteHypergraph h(std::vector<Index>(k, n), edges);
    const Color q = 1 + round % 3;
    const PhaseState s = ColRandomPhase(h, q, {static_cast<std::uint64_t>(round), 0});
    ASSERT_TRUE(CheckColoring(h, s.coloring).proper);
    // Recompute each list by scanning all edges.
    for (Index v = 0; v < n; ++v) {
      std::vector<Color> list;
      for (Color c = 1; c <= q; ++c) {
        bool lost = false;
        for (const auto& e : edges) {
          if (e[k - 1] != v) continue;
          bool all = true;
          for (int i = 0; i + 1 < k; ++i) all = all && s.coloring.get({i, e[i]}) == c;
          lost = lost || all;
        }
        if (!lost) list.push_back(c);
      }
      ASSERT_EQ(AvailableColors(h, s.coloring, v, q), list);
      const Color got = s.coloring.get({k - 1, v});
      if (list.empty()) {
        ASSERT_EQ(got, kUncolored);
      } else {
        ASSERT_TRUE(std::find(list.begin(), list.end(), got) != list.end());
      }
    }
  }
}

TEST(Rebalance, AlreadyBalancedIsIdentity) {
  const auto h = KPartiteHypergraph::Empty(2, 6);
  PhaseState s;
  s.q = 1;
  s.coloring = PartialColoring::For(h, 1);
  for (int i = 0; i < 2; ++i) {
    for (Index v = 0; v < 6; ++v) s.coloring.set({i, v}, 1);
  }
  ColParams params;
  params.n_c = 6;
  params.delta_tilde_eff = 1;
  const PhaseState r = Rebalance(h, s, params);
  EXPECT_EQ(r.coloring, s.coloring);
  EXPECT_FALSE(r.balance_clamped);
  EXPECT_FALSE(r.good_shortfall);
  EXPECT_TRUE(r.uncolored_last.empty());
}

TEST(Rebalance, ClassesEqualAndGoodVerticesPreferred) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const int k = 2 + seed % 2;
    const Index n = 120;
    const KPartiteHypergraph h =
        SampleHknp(k, n, 6.0 / std::pow(n, k - 1), {seed, 0});
    const Color q = 4;
    ColParams params;
    params.n_c = 20;
    params.delta_tilde_eff = 2;
    const PhaseState phase = ColRandomPhase(h, q, {seed, 1});
    const PhaseState r = Rebalance(h, phase, params);
    const auto sizes = r.coloring.ClassSizes();
    for (Color c = 1; c <= q; ++c) {
      for (int i = 0; i < k; ++i) {
        ASSERT_EQ(sizes[c][i], r.n_c);
        if (i + 1 < k) {
          // Uncolored in this class = phase size minus n_c.
          std::size_t cleared = 0;
          for (Index v = 0; v < n; ++v) {
            cleared += phase.coloring.get({i, v}) == c && !r.coloring.is_colored({i, v});
          }
          ASSERT_EQ(cleared, phase.phase_class_sizes[c][i] - r.n_c);
        }
      }
    }
    // Direct recount of edges meeting U_k' for every uncolored vertex.
    if (!r.good_shortfall) {
      std::vector<bool> in_u(n, false);
      for (Index w : r.uncolored_last) in_u[w] = true;
      for (int i = 0; i + 1 < k; ++i) {
        for (Index u = 0; u < n; ++u) {
          if (r.coloring.is_colored({i, u}) || !phase.coloring.is_colored({i, u})) continue;
          std::size_t touching = 0;
          for (std::size_t e = 0; e < h.num_edges(); ++e) {
            touching += h.edge(e)[i] == u && in_u[h.edge(e)[k - 1]];
          }
          ASSERT_LT(touching, params.delta_tilde_eff);
        }
      }
    }
  }
}

TEST(Residual, Extremes) {
  const KPartiteHypergraph h({3, 3}, {{0, 0}, {2, 1}});
  PhaseState s;
  s.coloring = PartialColoring::For(h, 3);
  EXPECT_EQ(Residual(h, s).graph, h);
  for (int i = 0; i < 2; ++i) {
    for (Index v = 0; v < 3; ++v) s.coloring.set({i, v}, 1 + v);
  }
  const auto empty = Residual(h, s);
  EXPECT_EQ(empty.graph.num_edges(), 0u);
  EXPECT_EQ(empty.graph.part_size(0), 0u);
}

TEST(FullColoring, EdgelessMainPathOneColor) {
  const ColoringReport r = FullColoring(KPartiteHypergraph::Empty(3, 8), 0.2, 1);
  EXPECT_EQ(r.path, "main");
  EXPECT_EQ(r.colors_used, 1u);
  EXPECT_TRUE(IsProperBalancedColoring(KPartiteHypergraph::Empty(3, 8), r.coloring, true));
}

TEST(FullColoring, LargeSparseInstance) {
  const Index n = 20000;
  const KPartiteHypergraph h = SampleHknp(2, n, 48.0 / n, {12, 0});
  const ColoringReport r = FullColoring(h, 0.2, 3);
  EXPECT_TRUE(IsProperBalancedColoring(h, r.coloring, true));
  if (r.path == "main") {
    EXPECT_LE(r.colors_used, r.q + 2 * r.residual_max_degree + 1);
    EXPECT_LE(r.residual_max_degree, r.delta_tilde_eff);
  } else {
    EXPECT_LE(r.colors_used, 2 * h.max_degree() + 1);
  }
}

TEST(FullColoring, Deterministic) {
  const KPartiteHypergraph h = SampleHknp(3, 30, 3.0 / 900, {2, 0});
  const ColoringReport a = FullColoring(h, 0.3, 9);
  const ColoringReport b = FullColoring(h, 0.3, 9);
  EXPECT_EQ(a.coloring, b.coloring);
  EXPECT_EQ(a.path, b.path);
  EXPECT_EQ(a.retries_used, b.retries_used);
}

TEST(FullColoring, RandomSmallInstancesValid) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const int k = 2 + s % 3;
    const Index n = 12 + s % 9;
    const KPartiteHypergraph h =
        SampleHknp(k, n, 2.5 / std::pow(n, k - 1), {s, 0});
    if (h.max_degree() * 2 > n) continue;
    const ColoringReport r = FullColoring(h, 0.2, s);
    ASSERT_TRUE(IsProperBalancedColoring(h, r.coloring, true)) << "seed " << s;
    if (r.path == "fallback") ASSERT_LE(r.colors_used, k * h.max_degree() + 1);
  }
}

TEST(ListStatistics, NegativeCorrelationExact) {
  // k = 2, n = 3, q = 2: only part 0 is colored at random, 2^3 outcomes.
  const KPartiteHypergraph h({3, 3}, {{0, 0}, {1, 0}, {2, 1}});
  const ListStatistics st = ExactListStatistics(h, 2, 0);
  EXPECT_EQ(st.outcomes, 8u);
  // Vertex 0 of part 1 sees part-0 vertices 0 and 1. Color c is lost when
  // either is c: P = 1 - (1/2)^2 = 3/4. The list is empty when both colors
  // appear among the two: P = 1/2.
  EXPECT_DOUBLE_EQ(st.lost[1], 0.75);
  EXPECT_DOUBLE_EQ(st.lost[2], 0.75);
  EXPECT_DOUBLE_EQ(st.empty, 0.5);
  EXPECT_LE(st.empty, st.lost[1] * st.lost[2] + 1e-12);
}

TEST(ListStatistics, BudgetEnforced) {
  EXPECT_THROW(ExactListStatistics(KPartiteHypergraph::Empty(2, 30), 3, 0, 1e6),
               BudgetExceeded);
}

}  // namespace
}  // namespace balhyp
