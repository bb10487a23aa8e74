// Copyright 2026 The Bratteli Authors
//
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

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bratteli {

// Ordered in-edge list of one vertex: entry r is the source (an index into the
// previous level) of the edge with adic rank r. A repeated source is a
// parallel edge.
using InEdges = std::vector<std::size_t>;
using LevelSpec = std::vector<InEdges>;
// Raw level data. Level 0 holds the root, whose in-edge list is empty.
using LevelList = std::vector<LevelSpec>;

struct VertexRef {
  std::size_t level = 0;
  std::size_t index = 0;

  friend auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

std::string to_string(const VertexRef& v);

struct Diagnostic {
  enum class Kind {
    kNoLevels,
    kRootCount,
    kRootInEdges,
    kEmptyLevel,
    kEmptyInEdges,
    kBadSource,
    kDeadEnd,
  };

  Kind kind;
  VertexRef vertex;
  std::string message;
};

std::string_view to_string(Diagnostic::Kind kind);

// Checks the graded-graph invariants on raw level data. Returns an empty list
// iff the data describes a valid graph.
std::vector<Diagnostic> validate(const LevelList& levels);

// A finite truncation of a graded graph with an adic structure (a total order
// on the in-edges of every vertex). Immutable after construction; the
// constructor rejects data that fails validate().
class GradedGraph {
 public:
  // Single-root graph with no edges.
  GradedGraph();
  explicit GradedGraph(LevelList levels);

  std::size_t num_levels() const noexcept { return levels_.size(); }
  std::size_t level_size(std::size_t level) const;
  std::vector<std::size_t> level_sizes() const;
  std::size_t num_vertices() const noexcept;

  bool contains(const VertexRef& v) const noexcept;

  std::span<const std::size_t> in_edges(const VertexRef& v) const;
  std::size_t in_degree(const VertexRef& v) const { return in_edges(v).size(); }

  // Number of root-to-v paths counted with multiplicity. Throws if the count
  // does not fit in 64 bits.
  std::uint64_t dim(const VertexRef& v) const;

  const LevelList& levels() const noexcept { return levels_; }

  friend bool operator==(const GradedGraph& a, const GradedGraph& b) {
    return a.levels_ == b.levels_;
  }

 private:
  void require(const VertexRef& v) const;

  LevelList levels_;
  // dims_[n][i]; kDimOverflow marks counts that do not fit.
  std::vector<std::vector<std::uint64_t>> dims_;
};

inline constexpr std::uint64_t kDimOverflow = UINT64_MAX;

std::vector<Diagnostic> validate(const GradedGraph& graph);

std::uint64_t dim(const GradedGraph& graph, const VertexRef& v);

// Outgoing edges of a vertex: the targets at the next level together with the
// rank the edge has in the target's in-edge list. Listed by target index, then
// rank.
struct OutEdge {
  std::size_t target = 0;
  std::size_t rank = 0;
};

class OutEdgeIndex {
 public:
  explicit OutEdgeIndex(const GradedGraph& graph);

  std::span<const OutEdge> out_edges(const VertexRef& v) const;

 private:
  std::vector<std::vector<std::vector<OutEdge>>> out_;
};

// Contracts the graph to the levels in kept_levels. An edge of the result is
// a path segment of the input; the in-edges of each new vertex list those
// segments in adic order.
GradedGraph telescope(const GradedGraph& graph,
                      std::span<const std::size_t> kept_levels);

struct InducedSubgraph {
  GradedGraph graph;
  // embedding[level][new index] = old index at the same level.
  std::vector<std::vector<std::size_t>> embedding;
};

// Restriction to a downward-closed vertex set. Each kept vertex keeps its full
// in-edge list, with order inherited.
InducedSubgraph induced_subgraph(const GradedGraph& graph,
                                 std::span<const VertexRef> keep);

inline constexpr int kGraphFormatVersion = 1;

std::string serialize(const GradedGraph& graph);
GradedGraph deserialize(std::string_view text);
// Parses the level lists without checking graph invariants; pair with
// validate() to report every violation at once.
LevelList deserialize_levels(std::string_view text);

// Graphviz rendering. Vertices are named L<level>_<index>; edge labels are
// in-edge ranks.
std::string to_dot(const GradedGraph& graph);

}  // namespace bratteli
