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

#include "balhyp/coloring.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "balhyp/models.h"

namespace balhyp {

namespace {

constexpr std::uint64_t kPhaseTag = 0x7068617365ULL;       // "phase"
constexpr std::uint64_t kCompletionTag = 0x636f6d706cULL;  // "compl"
constexpr std::uint64_t kEscapeTag = 0x657363617065ULL;    // "escape"

// Parameters for hypergraphs outside the ledger's domain.
ColParams EdgelessParams(int k, Index n) {
  ColParams p;
  p.k = k;
  p.n = n;
  p.q_real = 1;
  p.q = 1;
  p.delta_tilde_eff = 1;
  p.n_c = n;
  p.final_budget = 1;
  return p;
}

}  // namespace

ColParams ComputeColParams(int k, double epsilon, double max_degree, Index n) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  const double log_delta = std::log(max_degree);
  if (!(log_delta > 1)) {
    throw std::invalid_argument("Delta = " + std::to_string(max_degree) +
                                " too small; need log Delta > 1");
  }
  ColParams p;
  p.epsilon = epsilon;
  p.k = k;
  p.max_degree = max_degree;
  p.n = n;
  p.gamma = epsilon / (2.0 * k * k);
  const double base = std::pow((k - 1) * max_degree / log_delta, 1.0 / (k - 1));
  p.q_real = (1 + p.gamma / 2) * base;
  p.q = static_cast<Color>(std::ceil(p.q_real));
  p.delta = std::exp(-std::pow(max_degree, p.gamma / 50));
  p.omega = 1 / (max_degree * std::pow(log_delta, 1.0 / (2 * (k - 1))));
  p.delta_tilde = p.gamma / (2 * k) * base;
  p.delta_tilde_eff = std::max<std::size_t>(
      static_cast<std::size_t>(std::ceil(p.delta_tilde)), 1);
  if (n < p.q) {
    throw std::invalid_argument("n = " + std::to_string(n) +
                                " is below the palette size q = " +
                                std::to_string(p.q));
  }
  p.n_c = static_cast<std::size_t>(std::floor((1 - 2 * p.omega) * n / p.q));
  p.final_budget = p.q + k * p.delta_tilde_eff;
  p.desk_scale_advisory = p.delta_tilde < 1;
  return p;
}

std::vector<Color> AvailableColors(const KPartiteHypergraph& h,
                                   const PartialColoring& coloring, Index v,
                                   Color q) {
  const int last = h.k() - 1;
  std::vector<char> lost(q + 1, 0);
  for (std::uint32_t e : h.incident_edges({last, v})) {
    auto members = h.edge(e);
    const Color c = coloring.get({0, members[0]});
    if (c == kUncolored) continue;
    bool mono = true;
    for (int i = 1; i < last && mono; ++i) {
      mono = coloring.get({i, members[i]}) == c;
    }
    if (mono) lost[c] = 1;
  }
  std::vector<Color> list;
  for (Color c = 1; c <= q; ++c) {
    if (!lost[c]) list.push_back(c);
  }
  return list;
}

PhaseState ColRandomPhase(const KPartiteHypergraph& h, Color q, Seed seed) {
  h.RequireBalanced("the random coloring phase");
  if (q < 1) throw std::invalid_argument("palette size q must be at least 1");
  const int last = h.k() - 1;
  const Index n = h.n();
  PhaseState state;
  state.q = q;
  state.coloring = PartialColoring::For(h, q);
  Rng rng(seed);
  for (int i = 0; i < last; ++i) {
    for (Index v = 0; v < n; ++v) {
      state.coloring.set({i, v}, 1 + static_cast<Color>(rng.UniformInt(q)));
    }
  }
  for (Index v = 0; v < n; ++v) {
    const double t = rng.UniformOpenClosed();
    const std::vector<Color> list = AvailableColors(h, state.coloring, v, q);
    if (list.empty()) {
      state.failed.push_back(v);
      continue;
    }
    std::size_t rank = static_cast<std::size_t>(std::ceil(t * list.size()));
    rank = std::clamp<std::size_t>(rank, 1, list.size());
    state.coloring.set({last, v}, list[rank - 1]);
  }
  state.phase_class_sizes = state.coloring.ClassSizes();
  return state;
}

PhaseState Rebalance(const KPartiteHypergraph& h, PhaseState state,
                     const ColParams& params) {
  const int k = h.k();
  const int last = k - 1;
  const Index n = h.n();
  const Color q = state.q;
  PartialColoring& coloring = state.coloring;
  const auto sizes = coloring.ClassSizes();

  std::size_t smallest = n;
  for (Color c = 1; c <= q; ++c) {
    for (int i = 0; i < k; ++i) smallest = std::min(smallest, sizes[c][i]);
  }
  state.n_c = std::min(params.n_c, smallest);
  state.balance_clamped = state.n_c < params.n_c;

  // Trim the last part.
  std::vector<std::size_t> excess(q + 1, 0);
  for (Color c = 1; c <= q; ++c) excess[c] = sizes[c][last] - state.n_c;
  for (Index v = 0; v < n; ++v) {
    const Color c = coloring.get({last, v});
    if (c != kUncolored && excess[c] > 0) {
      coloring.clear({last, v});
      --excess[c];
    }
  }
  state.uncolored_last.clear();
  for (Index v = 0; v < n; ++v) {
    if (!coloring.is_colored({last, v})) state.uncolored_last.push_back(v);
  }

  // touching[i][u] = number of edges through u meeting U_k'. Each edge has
  // exactly one last-part member, so summing over U_k' counts it once.
  std::vector<std::vector<std::size_t>> touching(last, std::vector<std::size_t>(n, 0));
  for (Index w : state.uncolored_last) {
    for (std::uint32_t e : h.incident_edges({last, w})) {
      auto members = h.edge(e);
      for (int i = 0; i < last; ++i) ++touching[i][members[i]];
    }
  }
  const std::size_t threshold = params.delta_tilde_eff;
  state.bad_counts.assign(q + 1, std::vector<std::size_t>(last, 0));
  state.uncolored_bad.assign(q + 1, std::vector<std::size_t>(last, 0));
  for (int i = 0; i < last; ++i) {
    std::vector<std::vector<Index>> good(q + 1), bad(q + 1);
    for (Index u = 0; u < n; ++u) {
      const Color c = coloring.get({i, u});
      if (c == kUncolored) continue;
      (touching[i][u] >= threshold ? bad : good)[c].push_back(u);
    }
    for (Color c = 1; c <= q; ++c) {
      state.bad_counts[c][i] = bad[c].size();
      std::size_t need = sizes[c][i] - state.n_c;
      for (Index u : good[c]) {
        if (need == 0) break;
        coloring.clear({i, u});
        --need;
      }
      if (need > 0) state.good_shortfall = true;
      for (Index u : bad[c]) {
        if (need == 0) break;
        coloring.clear({i, u});
        ++state.uncolored_bad[c][i];
        --need;
      }
    }
  }
  state.rebalanced = true;
  return state;
}

InducedSubhypergraph Residual(const KPartiteHypergraph& h,
                              const PhaseState& state) {
  std::vector<std::vector<Index>> keep(h.k());
  for (int i = 0; i < h.k(); ++i) {
    for (Index v = 0; v < h.part_size(i); ++v) {
      if (!state.coloring.is_colored({i, v})) keep[i].push_back(v);
    }
  }
  return Induced(h, keep);
}

ColoringReport FullColoring(const KPartiteHypergraph& h, double epsilon,
                            std::uint64_t seed, std::size_t max_retries,
                            std::size_t matching_restarts) {
  h.RequireBalanced("full coloring");
  const int k = h.k();
  const Index n = h.n();
  ColoringReport report;
  const Seed root{seed, 0};

  std::optional<ColParams> params;
  if (h.num_edges() == 0) {
    params = EdgelessParams(k, n);
  } else {
    double delta = static_cast<double>(h.max_degree());
    if (delta < 3) {
      report.warnings.push_back("Delta(H) = " + std::to_string(h.max_degree()) +
                                " is below 3; ledger evaluated at Delta = 3");
      delta = 3;
    }
    try {
      params = ComputeColParams(k, epsilon, delta, n);
      if (params->desk_scale_advisory) {
        report.warnings.push_back(
            "delta_tilde = " + std::to_string(params->delta_tilde) +
            " < 1: Delta is far below the asymptotic regime");
      }
    } catch (const std::invalid_argument& e) {
      report.warnings.push_back(std::string("random phase skipped: ") + e.what());
    }
  }
  report.params = params;

  if (params) {
    report.q = params->q;
    report.delta_tilde_eff = params->delta_tilde_eff;
    const double nq = static_cast<double>(n) / params->q;
    for (std::size_t r = 0; r < max_retries; ++r) {
      report.retries_used = r + 1;
      AttemptRecord rec;
      rec.index = r;
      PhaseState state =
          ColRandomPhase(h, params->q, DeriveSeed(root, kPhaseTag, r));
      rec.failed = state.failed.size();
      rec.failed_small = rec.failed <= 2 * params->delta * n;
      rec.classes_concentrated = true;
      for (Color c = 1; c <= params->q; ++c) {
        for (int i = 0; i < k; ++i) {
          const double size = static_cast<double>(state.phase_class_sizes[c][i]);
          if (std::abs(size - nq) > 2 * params->omega * nq) {
            rec.classes_concentrated = false;
          }
        }
      }
      state = Rebalance(h, std::move(state), *params);
      rec.balance_clamped = state.balance_clamped;
      rec.good_shortfall = state.good_shortfall;
      rec.n_c = state.n_c;
      InducedSubhypergraph residual = Residual(h, state);
      rec.residual_n = residual.graph.part_size(0);
      rec.residual_max_degree = residual.graph.max_degree();
      if (state.balance_clamped) {
        rec.reason = "class sizes below n_c";
      } else if (rec.residual_max_degree > params->delta_tilde_eff) {
        rec.reason = "residual degree above delta_tilde_eff";
      } else if (2 * rec.residual_max_degree > rec.residual_n) {
        rec.reason = "residual degree above n'/2";
      }
      if (!rec.reason.empty()) {
        report.attempts.push_back(rec);
        continue;
      }
      try {
        FallbackResult completion = FallbackColoring(
            residual.graph, DeriveSeed(root, kCompletionTag, r),
            matching_restarts, params->q);
        PartialColoring merged = std::move(state.coloring);
        merged.ExtendPalette(completion.coloring.palette());
        for (int i = 0; i < k; ++i) {
          const auto& original = residual.original_index[i];
          for (Index v = 0; v < original.size(); ++v) {
            merged.set({i, original[v]}, completion.coloring.get({i, v}));
          }
        }
        const std::size_t bound =
            params->q + static_cast<std::size_t>(k) * rec.residual_max_degree + 1;
        if (merged.palette() > bound) {
          throw std::logic_error("main path exceeded q + k Delta(H_phi) + 1 colors");
        }
        rec.accepted = true;
        report.attempts.push_back(rec);
        report.path = "main";
        report.coloring = std::move(merged);
        report.residual_max_degree = rec.residual_max_degree;
        break;
      } catch (const MatchingError& e) {
        rec.reason = std::string("completion failed: ") + e.what();
        report.attempts.push_back(rec);
      }
    }
  }

  if (report.path.empty()) {
    FallbackResult escape = FallbackColoring(
        h, DeriveSeed(root, kEscapeTag, 0), matching_restarts);
    report.warnings.insert(report.warnings.end(), escape.warnings.begin(),
                           escape.warnings.end());
    report.path = "fallback";
    report.coloring = std::move(escape.coloring);
  }
  report.colors_used = report.coloring.num_colors_used();
  report.verdict = CheckColoring(h, report.coloring);
  if (!report.verdict.ok(/*require_total=*/true)) {
    throw std::logic_error("full coloring produced an invalid coloring");
  }
  return report;
}

ListStatistics ExactListStatistics(const KPartiteHypergraph& h, Color q,
                                   Index v, double budget) {
  h.RequireBalanced("exact list statistics");
  const int last = h.k() - 1;
  const Index n = h.n();
  const std::size_t free_vertices = static_cast<std::size_t>(last) * n;
  if (std::pow(static_cast<double>(q), static_cast<double>(free_vertices)) >
      budget) {
    throw BudgetExceeded("exact list statistics: too many color assignments");
  }
  PartialColoring coloring = PartialColoring::For(h, q);
  std::vector<Color> digits(free_vertices, 1);
  ListStatistics stats;
  std::vector<std::uint64_t> lost(q + 1, 0);
  std::uint64_t empty = 0;
  while (true) {
    for (std::size_t j = 0; j < free_vertices; ++j) {
      coloring.set({static_cast<int>(j / n), static_cast<Index>(j % n)}, digits[j]);
    }
    const auto list = AvailableColors(h, coloring, v, q);
    std::vector<char> in_list(q + 1, 0);
    for (Color c : list) in_list[c] = 1;
    for (Color c = 1; c <= q; ++c) lost[c] += !in_list[c];
    empty += list.empty();
    ++stats.outcomes;
    std::size_t j = free_vertices;
    while (j > 0 && digits[j - 1] == q) digits[--j] = 1;
    if (j == 0) break;
    ++digits[j - 1];
  }
  stats.lost.assign(q + 1, 0);
  for (Color c = 1; c <= q; ++c) {
    stats.lost[c] = static_cast<double>(lost[c]) / stats.outcomes;
  }
  stats.empty = static_cast<double>(empty) / stats.outcomes;
  return stats;
}

}  // namespace balhyp
