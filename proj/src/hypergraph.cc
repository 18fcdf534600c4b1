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

#include "balhyp/hypergraph.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace balhyp {

namespace {

std::string EdgeString(std::span<const Index> e) {
  std::string s = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(e[i]);
  }
  return s + ")";
}

bool LexLess(std::span<const Index> a, std::span<const Index> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Sorts k-strided edges lexicographically; returns false on duplicates.
bool SortFlat(int k, std::vector<Index>& flat) {
  const std::size_t m = flat.size() / k;
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  auto at = [&](std::size_t e) {
    return std::span<const Index>(flat.data() + e * k, k);
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return LexLess(at(a), at(b)); });
  std::vector<Index> sorted;
  sorted.reserve(flat.size());
  bool unique = true;
  for (std::size_t i = 0; i < m; ++i) {
    if (i > 0 && std::ranges::equal(at(order[i]), at(order[i - 1]))) {
      unique = false;
    }
    auto e = at(order[i]);
    sorted.insert(sorted.end(), e.begin(), e.end());
  }
  flat = std::move(sorted);
  return unique;
}

std::vector<Index> Flatten(int k, const std::vector<std::vector<Index>>& edges) {
  std::vector<Index> flat;
  flat.reserve(edges.size() * k);
  for (const auto& e : edges) flat.insert(flat.end(), e.begin(), e.end());
  return flat;
}

}  // namespace

Diagnostics Validate(const RawHypergraph& raw) {
  Diagnostics d;
  const int k = static_cast<int>(raw.part_sizes.size());
  if (k < 2) {
    d.violations.push_back("k must be at least 2, got " + std::to_string(k));
    return d;
  }
  std::vector<std::vector<Index>> well_formed;
  for (std::size_t e = 0; e < raw.edges.size(); ++e) {
    const auto& edge = raw.edges[e];
    if (static_cast<int>(edge.size()) != k) {
      d.violations.push_back("edge " + std::to_string(e) + " " +
                             EdgeString(edge) + ": expected " +
                             std::to_string(k) + " members");
      continue;
    }
    bool in_range = true;
    for (int i = 0; i < k; ++i) {
      if (edge[i] >= raw.part_sizes[i]) {
        d.violations.push_back("edge " + std::to_string(e) + " " +
                               EdgeString(edge) + ": index out of range in part " +
                               std::to_string(i));
        in_range = false;
      }
    }
    if (in_range) well_formed.push_back(edge);
  }
  std::vector<std::size_t> order(well_formed.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return well_formed[a] < well_formed[b];
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (well_formed[order[i]] == well_formed[order[i - 1]] &&
        (i < 2 || well_formed[order[i - 1]] != well_formed[order[i - 2]])) {
      d.violations.push_back("duplicate edge " +
                             EdgeString(well_formed[order[i]]));
    }
  }
  return d;
}

KPartiteHypergraph::KPartiteHypergraph(const RawHypergraph& raw)
    : KPartiteHypergraph(raw.part_sizes, raw.edges) {}

KPartiteHypergraph::KPartiteHypergraph(
    std::vector<Index> part_sizes, const std::vector<std::vector<Index>>& edges) {
  Diagnostics d = Validate(RawHypergraph{part_sizes, edges});
  if (!d.ok()) throw std::invalid_argument(d.violations.front());
  const int k = static_cast<int>(part_sizes.size());
  part_sizes_ = std::move(part_sizes);
  flat_edges_ = Flatten(k, edges);
  SortFlat(k, flat_edges_);
  BuildIncidence();
}

KPartiteHypergraph::KPartiteHypergraph(SortedTag, std::vector<Index> part_sizes,
                                       std::vector<Index> flat_edges)
    : part_sizes_(std::move(part_sizes)), flat_edges_(std::move(flat_edges)) {
  BuildIncidence();
}

KPartiteHypergraph KPartiteHypergraph::FromFlat(std::vector<Index> part_sizes,
                                                std::vector<Index> flat_edges) {
  const int k = static_cast<int>(part_sizes.size());
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (flat_edges.size() % k != 0) {
    throw std::invalid_argument("flat edge data is not a multiple of k");
  }
  for (std::size_t i = 0; i < flat_edges.size(); ++i) {
    if (flat_edges[i] >= part_sizes[i % k]) {
      throw std::invalid_argument(
          "edge " + std::to_string(i / k) + ": index out of range in part " +
          std::to_string(i % k));
    }
  }
  if (!SortFlat(k, flat_edges)) throw std::invalid_argument("duplicate edge");
  return KPartiteHypergraph(SortedTag{}, std::move(part_sizes),
                            std::move(flat_edges));
}

KPartiteHypergraph KPartiteHypergraph::Empty(int k, Index n) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  return KPartiteHypergraph(SortedTag{}, std::vector<Index>(k, n), {});
}

KPartiteHypergraph KPartiteHypergraph::Complete(int k, Index n) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  std::vector<Index> flat;
  if (n > 0) {
    std::vector<Index> t(k, 0);
    while (true) {
      flat.insert(flat.end(), t.begin(), t.end());
      int i = k - 1;
      while (i >= 0 && ++t[i] == n) t[i--] = 0;
      if (i < 0) break;
    }
  }
  return KPartiteHypergraph(SortedTag{}, std::vector<Index>(k, n),
                            std::move(flat));
}

void KPartiteHypergraph::BuildIncidence() {
  const int k = this->k();
  vertex_offset_.assign(k + 1, 0);
  for (int i = 0; i < k; ++i) {
    vertex_offset_[i + 1] = vertex_offset_[i] + part_sizes_[i];
  }
  const std::size_t nv = vertex_offset_.back();
  incidence_offset_.assign(nv + 1, 0);
  const std::size_t m = num_edges();
  for (std::size_t e = 0; e < m; ++e) {
    for (int i = 0; i < k; ++i) {
      ++incidence_offset_[vertex_offset_[i] + flat_edges_[e * k + i] + 1];
    }
  }
  max_degree_ = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    max_degree_ = std::max(max_degree_, incidence_offset_[v + 1]);
    incidence_offset_[v + 1] += incidence_offset_[v];
  }
  incidence_.resize(m * k);
  std::vector<std::size_t> fill(incidence_offset_.begin(),
                                incidence_offset_.end() - 1);
  for (std::size_t e = 0; e < m; ++e) {
    for (int i = 0; i < k; ++i) {
      incidence_[fill[vertex_offset_[i] + flat_edges_[e * k + i]]++] =
          static_cast<std::uint32_t>(e);
    }
  }
}

bool KPartiteHypergraph::is_balanced() const {
  return std::all_of(part_sizes_.begin(), part_sizes_.end(),
                     [&](Index s) { return s == part_sizes_[0]; });
}

Index KPartiteHypergraph::n() const {
  RequireBalanced("n()");
  return part_sizes_[0];
}

void KPartiteHypergraph::RequireBalanced(std::string_view operation) const {
  if (!is_balanced()) {
    throw std::invalid_argument(std::string(operation) +
                                " requires an n-balanced hypergraph");
  }
}

RawHypergraph KPartiteHypergraph::ToRaw() const {
  RawHypergraph raw{part_sizes_, {}};
  raw.edges.reserve(num_edges());
  for (std::size_t e = 0; e < num_edges(); ++e) {
    auto s = edge(e);
    raw.edges.emplace_back(s.begin(), s.end());
  }
  return raw;
}

std::uint64_t KPartiteHypergraph::NumTransversals() const {
  std::uint64_t total = 1;
  for (Index s : part_sizes_) {
    if (s == 0) return 0;
  }
  for (Index s : part_sizes_) {
    if (total > std::numeric_limits<std::uint64_t>::max() / s) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= s;
  }
  return total;
}

bool KPartiteHypergraph::HasEdge(std::span<const Index> tuple) const {
  std::size_t lo = 0;
  std::size_t hi = num_edges();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (LexLess(edge(mid), tuple)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo < num_edges() && std::ranges::equal(edge(lo), tuple);
}

std::span<const std::uint32_t> KPartiteHypergraph::incident_edges(
    Vertex v) const {
  if (v.part < 0 || v.part >= k() || v.index >= part_sizes_[v.part]) {
    throw std::out_of_range("vertex out of range");
  }
  const std::size_t g = GlobalId(v);
  return {incidence_.data() + incidence_offset_[g],
          incidence_offset_[g + 1] - incidence_offset_[g]};
}

DegreeProfile ComputeDegreeProfile(const KPartiteHypergraph& h) {
  DegreeProfile p;
  p.degrees.resize(h.k());
  for (int i = 0; i < h.k(); ++i) {
    p.degrees[i].resize(h.part_size(i));
    for (Index v = 0; v < h.part_size(i); ++v) {
      p.degrees[i][v] = h.degree({i, v});
    }
  }
  p.max_degree = h.max_degree();
  p.num_edges = h.num_edges();
  if (h.is_balanced()) p.n = h.part_size(0);
  p.min_codegree.assign(h.k() + 1, 0);
  for (int j = 1; j <= h.k(); ++j) p.min_codegree[j] = MinCodegree(h, j);
  return p;
}

std::size_t Codegree(const KPartiteHypergraph& h,
                     std::span<const Vertex> selection) {
  std::vector<bool> used(h.k(), false);
  for (const Vertex& v : selection) {
    if (v.part < 0 || v.part >= h.k() || v.index >= h.part_size(v.part)) {
      throw std::out_of_range("selected vertex out of range");
    }
    if (used[v.part]) {
      throw std::invalid_argument("selection has two vertices in part " +
                                  std::to_string(v.part));
    }
    used[v.part] = true;
  }
  if (selection.empty()) return h.num_edges();
  const Vertex* anchor = &selection[0];
  for (const Vertex& v : selection) {
    if (h.degree(v) < h.degree(*anchor)) anchor = &v;
  }
  std::size_t count = 0;
  for (std::uint32_t e : h.incident_edges(*anchor)) {
    auto members = h.edge(e);
    if (std::all_of(selection.begin(), selection.end(), [&](const Vertex& v) {
          return members[v.part] == v.index;
        })) {
      ++count;
    }
  }
  return count;
}

std::size_t MinCodegree(const KPartiteHypergraph& h, int j) {
  const int k = h.k();
  if (j < 1 || j > k) {
    throw std::invalid_argument("codegree size j must lie in [1, k]");
  }
  std::size_t best = std::numeric_limits<std::size_t>::max();
  // Enumerate j-subsets of parts as bitmasks in increasing order.
  std::vector<int> parts(j);
  std::iota(parts.begin(), parts.end(), 0);
  while (true) {
    // Selections are the tuples of the product of the chosen parts. Any
    // tuple not hit by a projected edge has codegree 0.
    long double selections = 1;
    for (int p : parts) selections *= h.part_size(p);
    std::unordered_map<std::uint64_t, std::size_t> counts;
    std::uint64_t stride_check = 1;
    bool fits = true;
    for (int p : parts) {
      if (stride_check > std::numeric_limits<std::uint64_t>::max() /
                             std::max<Index>(h.part_size(p), 1)) {
        fits = false;
      }
      stride_check *= std::max<Index>(h.part_size(p), 1);
    }
    if (!fits) {
      throw std::invalid_argument("min codegree: selection space too large");
    }
    for (std::size_t e = 0; e < h.num_edges(); ++e) {
      auto members = h.edge(e);
      std::uint64_t key = 0;
      for (int p : parts) key = key * h.part_size(p) + members[p];
      ++counts[key];
    }
    if (static_cast<long double>(counts.size()) < selections) {
      best = 0;
    } else {
      for (const auto& [key, c] : counts) best = std::min(best, c);
    }
    if (best == 0) break;
    int i = j - 1;
    while (i >= 0 && parts[i] == k - j + i) --i;
    if (i < 0) break;
    ++parts[i];
    for (int t = i + 1; t < j; ++t) parts[t] = parts[t - 1] + 1;
  }
  return best == std::numeric_limits<std::size_t>::max() ? 0 : best;
}

BalancedSet::BalancedSet(std::vector<std::vector<Index>> parts)
    : parts_(std::move(parts)) {
  for (auto& p : parts_) {
    if (p.size() != parts_[0].size()) {
      throw std::invalid_argument("balanced set parts differ in size");
    }
    std::sort(p.begin(), p.end());
    if (std::adjacent_find(p.begin(), p.end()) != p.end()) {
      throw std::invalid_argument("balanced set repeats a vertex");
    }
  }
}

bool IsBalancedIndependent(const KPartiteHypergraph& h, const BalancedSet& set) {
  if (set.k() != h.k()) {
    throw std::out_of_range("balanced set has the wrong number of parts");
  }
  std::vector<std::vector<bool>> member(h.k());
  for (int i = 0; i < h.k(); ++i) {
    member[i].assign(h.part_size(i), false);
    for (Index v : set.part(i)) {
      if (v >= h.part_size(i)) {
        throw std::out_of_range("balanced set vertex out of range");
      }
      member[i][v] = true;
    }
  }
  if (set.side() == 0) return true;
  // Scan only edges through members of part 0.
  for (Index v : set.part(0)) {
    for (std::uint32_t e : h.incident_edges({0, v})) {
      auto members = h.edge(e);
      bool inside = true;
      for (int i = 1; i < h.k() && inside; ++i) inside = member[i][members[i]];
      if (inside) return false;
    }
  }
  return true;
}

PartialColoring::PartialColoring(std::span<const Index> part_sizes,
                                 Color palette)
    : palette_(palette) {
  colors_.reserve(part_sizes.size());
  for (Index s : part_sizes) colors_.emplace_back(s, kUncolored);
}

void PartialColoring::set(Vertex v, Color c) {
  if (c > palette_) throw std::out_of_range("color outside the palette");
  colors_[v.part][v.index] = c;
}

void PartialColoring::ExtendPalette(Color palette) {
  palette_ = std::max(palette_, palette);
}

std::size_t PartialColoring::num_colored() const {
  std::size_t count = 0;
  for (const auto& part : colors_) {
    count += part.size() - std::count(part.begin(), part.end(), kUncolored);
  }
  return count;
}

bool PartialColoring::is_total() const {
  return std::all_of(colors_.begin(), colors_.end(), [](const auto& part) {
    return std::find(part.begin(), part.end(), kUncolored) == part.end();
  });
}

std::size_t PartialColoring::num_colors_used() const {
  std::vector<bool> seen(palette_ + 1, false);
  for (const auto& part : colors_) {
    for (Color c : part) seen[c] = true;
  }
  return std::count(seen.begin() + 1, seen.end(), true);
}

std::vector<std::vector<std::size_t>> PartialColoring::ClassSizes() const {
  std::vector<std::vector<std::size_t>> sizes(
      palette_ + 1, std::vector<std::size_t>(colors_.size(), 0));
  for (std::size_t i = 0; i < colors_.size(); ++i) {
    for (Color c : colors_[i]) ++sizes[c][i];
  }
  return sizes;
}

ColoringVerdict CheckColoring(const KPartiteHypergraph& h,
                              const PartialColoring& coloring) {
  ColoringVerdict v;
  if (coloring.k() != h.k()) {
    v.fits = false;
    return v;
  }
  for (int i = 0; i < h.k(); ++i) {
    if (coloring.part(i).size() != h.part_size(i)) {
      v.fits = false;
      return v;
    }
  }
  v.total = coloring.is_total();
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto members = h.edge(e);
    const Color c = coloring.get({0, members[0]});
    if (c == kUncolored) continue;
    bool mono = true;
    for (int i = 1; i < h.k() && mono; ++i) {
      mono = coloring.get({i, members[i]}) == c;
    }
    if (mono) ++v.monochromatic_edges;
  }
  v.proper = v.monochromatic_edges == 0;
  const auto sizes = coloring.ClassSizes();
  for (Color c = 1; c < sizes.size(); ++c) {
    for (int i = 1; i < h.k(); ++i) {
      if (sizes[c][i] != sizes[c][0]) v.balanced = false;
    }
  }
  return v;
}

bool IsProperBalancedColoring(const KPartiteHypergraph& h,
                              const PartialColoring& coloring,
                              bool require_total) {
  return CheckColoring(h, coloring).ok(require_total);
}

ComplementEdgeStream::ComplementEdgeStream(const KPartiteHypergraph& h)
    : h_(&h), cursor_(h.k(), 0) {
  done_ = h.NumTransversals() == 0;
}

bool ComplementEdgeStream::Advance() {
  int i = h_->k() - 1;
  while (i >= 0 && ++cursor_[i] == h_->part_size(i)) cursor_[i--] = 0;
  return i >= 0;
}

bool ComplementEdgeStream::Next(std::vector<Index>& out) {
  while (!done_) {
    // Edges are sorted, so the cursor and the edge list advance together.
    while (next_edge_ < h_->num_edges() && LexLess(h_->edge(next_edge_), cursor_)) {
      ++next_edge_;
    }
    const bool is_edge = next_edge_ < h_->num_edges() &&
                         std::ranges::equal(h_->edge(next_edge_), cursor_);
    if (!is_edge) out = cursor_;
    if (!Advance()) done_ = true;
    if (!is_edge) return true;
  }
  return false;
}

std::vector<std::vector<Index>> MaterializeComplement(
    const KPartiteHypergraph& h) {
  std::vector<std::vector<Index>> out;
  ComplementEdgeStream stream(h);
  std::vector<Index> e;
  while (stream.Next(e)) out.push_back(e);
  return out;
}

InducedSubhypergraph Induced(const KPartiteHypergraph& h,
                             const std::vector<std::vector<Index>>& keep) {
  if (static_cast<int>(keep.size()) != h.k()) {
    throw std::invalid_argument("induced: need one vertex list per part");
  }
  const int k = h.k();
  InducedSubhypergraph out{KPartiteHypergraph::Empty(k, 0), {}};
  out.original_index.resize(k);
  std::vector<std::vector<std::int64_t>> remap(k);
  std::vector<Index> sizes(k);
  for (int i = 0; i < k; ++i) {
    auto& kept = out.original_index[i];
    kept = keep[i];
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (!kept.empty() && kept.back() >= h.part_size(i)) {
      throw std::out_of_range("induced: vertex out of range");
    }
    remap[i].assign(h.part_size(i), -1);
    for (std::size_t j = 0; j < kept.size(); ++j) remap[i][kept[j]] = j;
    sizes[i] = static_cast<Index>(kept.size());
  }
  std::vector<Index> flat;
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto members = h.edge(e);
    bool inside = true;
    for (int i = 0; i < k && inside; ++i) inside = remap[i][members[i]] >= 0;
    if (!inside) continue;
    for (int i = 0; i < k; ++i) {
      flat.push_back(static_cast<Index>(remap[i][members[i]]));
    }
  }
  // Renumbering is monotone, so the lexicographic order is preserved.
  out.graph = KPartiteHypergraph::FromFlat(std::move(sizes), std::move(flat));
  return out;
}

}  // namespace balhyp
