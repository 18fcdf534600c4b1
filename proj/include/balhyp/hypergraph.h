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

#ifndef BALHYP_HYPERGRAPH_H_
#define BALHYP_HYPERGRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace balhyp {

// Index of a vertex inside its part.
using Index = std::uint32_t;

// A vertex is identified by its part (0-based, slot in every edge) and its
// 0-based index inside that part.
struct Vertex {
  int part = 0;
  Index index = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// Unvalidated description of a k-partite hypergraph, as read from a file or
// assembled by hand. Edges are positional: slot i holds the member of part i.
struct RawHypergraph {
  std::vector<Index> part_sizes;
  std::vector<std::vector<Index>> edges;
};

struct Diagnostics {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Reports every violated invariant of `raw` (k < 2, empty parts, wrong edge
// arity, index out of range, duplicate edge). Never throws.
Diagnostics Validate(const RawHypergraph& raw);

// Immutable k-uniform k-partite hypergraph.
//
// Edges are stored flat (stride k) in lexicographic order, without
// duplicates. Per-vertex incidence lists are built at construction, so the
// object is safe to share between concurrent readers. Memory is
// Theta(k * |E| + sum of part sizes).
class KPartiteHypergraph {
 public:
  // Throws std::invalid_argument carrying the first violation reported by
  // Validate().
  explicit KPartiteHypergraph(const RawHypergraph& raw);
  KPartiteHypergraph(std::vector<Index> part_sizes,
                     const std::vector<std::vector<Index>>& edges);

  // Takes k-strided edge data. Edges need not be sorted.
  static KPartiteHypergraph FromFlat(std::vector<Index> part_sizes,
                                     std::vector<Index> flat_edges);

  // Edgeless and complete k-partite hypergraphs with every part of size n.
  static KPartiteHypergraph Empty(int k, Index n);
  static KPartiteHypergraph Complete(int k, Index n);

  int k() const { return static_cast<int>(part_sizes_.size()); }
  std::span<const Index> part_sizes() const { return part_sizes_; }
  Index part_size(int part) const { return part_sizes_[part]; }

  // True when every part has the same size n.
  bool is_balanced() const;
  // Common part size; throws std::invalid_argument when not n-balanced.
  Index n() const;
  // Throws std::invalid_argument naming `operation` unless n-balanced.
  void RequireBalanced(std::string_view operation) const;

  std::size_t num_vertices() const { return vertex_offset_.back(); }
  std::size_t num_edges() const { return flat_edges_.size() / k(); }
  std::span<const Index> edge(std::size_t e) const {
    return {flat_edges_.data() + e * k(), static_cast<std::size_t>(k())};
  }
  std::span<const Index> flat_edges() const { return flat_edges_; }
  RawHypergraph ToRaw() const;

  // Number of valid transversals, the product of part sizes. Saturates at
  // UINT64_MAX.
  std::uint64_t NumTransversals() const;

  // Binary search over the sorted edge list.
  bool HasEdge(std::span<const Index> tuple) const;

  // Dense id in [0, num_vertices()), parts laid out consecutively.
  std::size_t GlobalId(Vertex v) const { return vertex_offset_[v.part] + v.index; }
  std::span<const std::uint32_t> incident_edges(Vertex v) const;
  std::size_t degree(Vertex v) const { return incident_edges(v).size(); }
  std::size_t max_degree() const { return max_degree_; }

  friend bool operator==(const KPartiteHypergraph& a,
                         const KPartiteHypergraph& b) {
    return a.part_sizes_ == b.part_sizes_ && a.flat_edges_ == b.flat_edges_;
  }

 private:
  struct SortedTag {};
  KPartiteHypergraph(SortedTag, std::vector<Index> part_sizes,
                     std::vector<Index> flat_edges);
  void BuildIncidence();

  std::vector<Index> part_sizes_;
  std::vector<Index> flat_edges_;
  std::vector<std::size_t> vertex_offset_;
  std::vector<std::size_t> incidence_offset_;
  std::vector<std::uint32_t> incidence_;
  std::size_t max_degree_ = 0;
};

// Degrees, Delta(H), the average degree D = |E|/n, and the minimum
// codegrees delta_j(H) for j = 1..k.
struct DegreeProfile {
  std::vector<std::vector<std::size_t>> degrees;  // [part][index]
  std::size_t max_degree = 0;
  std::size_t num_edges = 0;
  // Set for n-balanced inputs only; D * n == num_edges.
  Index n = 0;
  // min_codegree[j] for j in [1, k]; entry 0 is unused.
  std::vector<std::size_t> min_codegree;

  double average_degree() const {
    return n == 0 ? 0.0 : static_cast<double>(num_edges) / n;
  }
};

DegreeProfile ComputeDegreeProfile(const KPartiteHypergraph& h);

// Number of edges containing every vertex of `selection`. Throws
// std::invalid_argument when two selected vertices share a part, and
// std::out_of_range for vertices outside the hypergraph.
std::size_t Codegree(const KPartiteHypergraph& h,
                     std::span<const Vertex> selection);

// delta_j(H): the minimum codegree over all cross-part selections of size j.
// Computed exactly by projecting edges onto each j-subset of parts. Throws
// std::invalid_argument unless 1 <= j <= k.
std::size_t MinCodegree(const KPartiteHypergraph& h, int j);

// Per-part vertex subsets of equal cardinality. Subsets are kept sorted.
class BalancedSet {
 public:
  BalancedSet() = default;
  // Throws std::invalid_argument when the parts differ in size or contain a
  // repeated index.
  explicit BalancedSet(std::vector<std::vector<Index>> parts);

  static BalancedSet EmptyFor(int k) {
    return BalancedSet(std::vector<std::vector<Index>>(k));
  }

  int k() const { return static_cast<int>(parts_.size()); }
  std::size_t side() const { return parts_.empty() ? 0 : parts_[0].size(); }
  std::size_t size() const { return side() * parts_.size(); }
  const std::vector<Index>& part(int i) const { return parts_[i]; }
  const std::vector<std::vector<Index>>& parts() const { return parts_; }

  friend bool operator==(const BalancedSet&, const BalancedSet&) = default;

 private:
  std::vector<std::vector<Index>> parts_;
};

// True iff no edge of `h` lies entirely inside `set`. Throws
// std::out_of_range for a set that does not fit `h`.
bool IsBalancedIndependent(const KPartiteHypergraph& h, const BalancedSet& set);

using Color = std::uint32_t;
inline constexpr Color kUncolored = 0;

// Per-vertex optional color in [1, palette]. Uncolored vertices hold
// kUncolored.
class PartialColoring {
 public:
  PartialColoring() = default;
  PartialColoring(std::span<const Index> part_sizes, Color palette);
  static PartialColoring For(const KPartiteHypergraph& h, Color palette) {
    return PartialColoring(h.part_sizes(), palette);
  }

  Color palette() const { return palette_; }
  int k() const { return static_cast<int>(colors_.size()); }
  Color get(Vertex v) const { return colors_[v.part][v.index]; }
  bool is_colored(Vertex v) const { return get(v) != kUncolored; }
  // Throws std::out_of_range for colors above the palette.
  void set(Vertex v, Color c);
  void clear(Vertex v) { colors_[v.part][v.index] = kUncolored; }
  // Enlarges the palette; existing colors are unchanged.
  void ExtendPalette(Color palette);

  const std::vector<Color>& part(int i) const { return colors_[i]; }
  std::size_t num_colored() const;
  bool is_total() const;
  // Number of distinct colors in use.
  std::size_t num_colors_used() const;
  // class_sizes[c][i] = |V_i(c)| for c in [0, palette]; row 0 counts
  // uncolored vertices.
  std::vector<std::vector<std::size_t>> ClassSizes() const;

  friend bool operator==(const PartialColoring&,
                         const PartialColoring&) = default;

 private:
  Color palette_ = 0;
  std::vector<std::vector<Color>> colors_;
};

struct ColoringVerdict {
  bool fits = true;       // shape matches the hypergraph
  bool proper = true;     // no edge with all k members sharing one color
  bool balanced = true;   // every color class meets each part equally often
  bool total = true;      // every vertex colored
  std::size_t monochromatic_edges = 0;

  bool ok(bool require_total) const {
    return fits && proper && balanced && (total || !require_total);
  }
};

ColoringVerdict CheckColoring(const KPartiteHypergraph& h,
                              const PartialColoring& coloring);

// Every color class is a balanced independent set; with `require_total`,
// every vertex must also be colored.
bool IsProperBalancedColoring(const KPartiteHypergraph& h,
                              const PartialColoring& coloring,
                              bool require_total);

// Streams the valid non-edges of `h` in lexicographic order, each exactly
// once, without materializing them.
class ComplementEdgeStream {
 public:
  explicit ComplementEdgeStream(const KPartiteHypergraph& h);

  // Writes the next non-edge into `out`; returns false when exhausted.
  bool Next(std::vector<Index>& out);

 private:
  bool Advance();

  const KPartiteHypergraph* h_;
  std::vector<Index> cursor_;
  std::size_t next_edge_ = 0;
  bool done_ = false;
};

std::vector<std::vector<Index>> MaterializeComplement(
    const KPartiteHypergraph& h);

struct InducedSubhypergraph {
  KPartiteHypergraph graph;
  // original_index[part][new_index] is the index in the source hypergraph.
  std::vector<std::vector<Index>> original_index;
};

// Subhypergraph induced by `keep` (per-part index lists; order and repeats
// are ignored). Kept vertices are renumbered in increasing original order.
InducedSubhypergraph Induced(const KPartiteHypergraph& h,
                             const std::vector<std::vector<Index>>& keep);

}  // namespace balhyp

#endif  // BALHYP_HYPERGRAPH_H_
