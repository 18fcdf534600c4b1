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

#include "balhyp/models.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace balhyp {
namespace {

std::string Approx(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// Rounds a ledger quantity that should be integral up to float noise.
double CeilTolerant(double x) { return std::ceil(x - 1e-9 * std::max(1.0, x)); }
double FloorTolerant(double x) { return std::floor(x + 1e-9 * std::max(1.0, x)); }

double LogBinomial(std::uint64_t n, std::uint64_t s) {
  return std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
}

// Advances `combo` (sorted, values < n) to the next s-subset in
// lexicographic order; false after the last one.
bool NextCombination(std::vector<Index>& combo, Index n) {
  const std::size_t s = combo.size();
  std::size_t i = s;
  while (i > 0 && combo[i - 1] == n - s + i - 1) --i;
  if (i == 0) return false;
  ++combo[i - 1];
  for (std::size_t j = i; j < s; ++j) combo[j] = combo[j - 1] + 1;
  return true;
}

}  // namespace

UpperBoundParams ComputeUpperBoundParams(double epsilon, int k, double delta,
                                         Index n) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (!(delta > 1)) throw std::invalid_argument("Delta must exceed 1");
  if (n < 1) throw std::invalid_argument("n must be positive");
  UpperBoundParams u;
  u.epsilon = epsilon;
  u.k = k;
  u.delta = delta;
  u.n = n;
  u.gamma = epsilon / (2.0 * k * k);
  if (!(u.gamma < 1)) throw std::invalid_argument("gamma must be below 1");
  u.big_n = n / (1 - u.gamma);
  u.p = delta / ((1 + u.gamma) * std::pow(u.big_n, k - 1));
  if (!(u.p > 0 && u.p <= 1)) {
    throw std::invalid_argument("edge probability p = " + std::to_string(u.p) +
                                " outside (0, 1]");
  }
  u.s = std::pow((k + epsilon) / (k - 1) * std::log(delta) / delta,
                 1.0 / (k - 1)) * n;
  if (u.s > n) {
    throw std::invalid_argument("side s = " + std::to_string(u.s) +
                                " exceeds n; Delta too small");
  }
  u.trim_count = static_cast<Index>(CeilTolerant(u.gamma * u.big_n));
  u.sample_size = n + u.trim_count;
  u.side = static_cast<Index>(FloorTolerant(u.s));
  return u;
}

KPartiteHypergraph SampleHknp(int k, Index big_n, double p, Seed seed) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (big_n < 1) throw std::invalid_argument("N must be at least 1");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  std::vector<Index> sizes(k, big_n);
  std::uint64_t total = 1;
  for (int i = 0; i < k; ++i) {
    if (total > (std::uint64_t{1} << 63) / big_n) {
      throw std::invalid_argument("N^k too large to sample");
    }
    total *= big_n;
  }
  std::vector<Index> flat;
  auto emit = [&](std::uint64_t id) {
    // Most significant digit is part 0, so increasing ids are sorted.
    const std::size_t at = flat.size();
    flat.resize(at + k);
    for (int i = k - 1; i >= 0; --i) {
      flat[at + i] = static_cast<Index>(id % big_n);
      id /= big_n;
    }
  };
  Rng rng(seed);
  if (p == 0) {
    // edgeless
  } else if (p == 1) {
    for (std::uint64_t id = 0; id < total; ++id) emit(id);
  } else if (total <= kBernoulliSamplingLimit) {
    for (std::uint64_t id = 0; id < total; ++id) {
      if (rng.Bernoulli(p)) emit(id);
    }
  } else {
    // Gaps between successive edges are i.i.d. Geometric(p).
    const double log_q = std::log1p(-p);
    std::uint64_t next = 0;  // first id not yet decided
    while (next < total) {
      const double gap = std::floor(std::log(rng.UniformOpenClosed()) / log_q);
      if (gap >= static_cast<double>(total - next)) break;
      next += static_cast<std::uint64_t>(gap);
      emit(next++);
    }
  }
  return KPartiteHypergraph::FromFlat(std::move(sizes), std::move(flat));
}

InducedSubhypergraph TrimTopDegree(const KPartiteHypergraph& h, Index t) {
  std::vector<std::vector<Index>> keep(h.k());
  for (int i = 0; i < h.k(); ++i) {
    const Index size = h.part_size(i);
    if (t >= size) {
      throw std::invalid_argument("trim count " + std::to_string(t) +
                                  " must be below part size " +
                                  std::to_string(size));
    }
    std::vector<Index> order(size);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
      return h.degree({i, a}) > h.degree({i, b});
    });
    keep[i].assign(order.begin() + t, order.end());
  }
  return Induced(h, keep);
}

UpperBoundInstance BuildUpperBoundInstance(const UpperBoundParams& params,
                                           Seed seed) {
  KPartiteHypergraph sampled =
      SampleHknp(params.k, params.sample_size, params.p, seed);
  InducedSubhypergraph trimmed = TrimTopDegree(sampled, params.trim_count);
  const bool met = trimmed.graph.max_degree() <= params.delta;
  return {std::move(sampled), std::move(trimmed), met};
}

double LogUnionBoundBis(int k, std::uint64_t big_n, std::uint64_t s, double p) {
  if (s > big_n) throw std::invalid_argument("s must not exceed N");
  if (!(p >= 0 && p <= 1)) throw std::invalid_argument("p must lie in [0, 1]");
  if (s == 0) return 0.0;
  if (p == 1) return -std::numeric_limits<double>::infinity();
  return k * LogBinomial(big_n, s) + std::pow(static_cast<double>(s), k) * std::log1p(-p);
}

double UnionBoundBis(int k, std::uint64_t big_n, std::uint64_t s, double p) {
  return std::exp(LogUnionBoundBis(k, big_n, s, p));
}

double BalancedCandidateCount(const KPartiteHypergraph& h, std::uint64_t s) {
  double count = 1;
  for (Index size : h.part_sizes()) {
    if (s > size) return 0;
    count *= std::exp(LogBinomial(size, s));
  }
  return std::round(count);
}

std::optional<BalancedSet> FindBalancedIndependentSet(
    const KPartiteHypergraph& h, std::uint64_t s, double budget) {
  const int k = h.k();
  if (s == 0) return BalancedSet::EmptyFor(k);
  for (Index size : h.part_sizes()) {
    if (s > size) return std::nullopt;
  }
  if (BalancedCandidateCount(h, s) > budget) {
    throw BudgetExceeded("balanced independent set search: C(n,s)^k = " +
                         Approx(BalancedCandidateCount(h, s)) +
                         " exceeds the enumeration budget");
  }
  const int last = k - 1;
  std::vector<std::vector<Index>> combo(k - 1);
  std::vector<std::vector<bool>> member(k - 1);
  for (int i = 0; i < last; ++i) {
    combo[i].resize(s);
    std::iota(combo[i].begin(), combo[i].end(), 0);
    member[i].assign(h.part_size(i), false);
  }
  std::vector<bool> blocked(h.part_size(last));
  while (true) {
    for (int i = 0; i < last; ++i) {
      std::fill(member[i].begin(), member[i].end(), false);
      for (Index v : combo[i]) member[i][v] = true;
    }
    // A last-part vertex is blocked when some edge through it has every
    // other member chosen.
    std::fill(blocked.begin(), blocked.end(), false);
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      auto members = h.edge(e);
      bool inside = true;
      for (int i = 0; i < last && inside; ++i) inside = member[i][members[i]];
      if (inside) blocked[members[last]] = true;
    }
    std::vector<Index> tail;
    for (Index v = 0; v < h.part_size(last) && tail.size() < s; ++v) {
      if (!blocked[v]) tail.push_back(v);
    }
    if (tail.size() == s) {
      std::vector<std::vector<Index>> parts = combo;
      parts.push_back(std::move(tail));
      return BalancedSet(std::move(parts));
    }
    int i = last - 1;
    while (i >= 0 && !NextCombination(combo[i], h.part_size(i))) {
      std::iota(combo[i].begin(), combo[i].end(), 0);
      --i;
    }
    if (i < 0) return std::nullopt;
  }
}

bool ExistsBalancedIndependentSet(const KPartiteHypergraph& h, std::uint64_t s,
                                  double budget) {
  return FindBalancedIndependentSet(h, s, budget).has_value();
}

}  // namespace balhyp
