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

#include "bratteli/graph.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bratteli/error.hpp"

namespace bratteli {

std::string to_string(const VertexRef& v) {
  return "(" + std::to_string(v.level) + "," + std::to_string(v.index) + ")";
}

std::string_view to_string(Diagnostic::Kind kind) {
  switch (kind) {
    case Diagnostic::Kind::kNoLevels: return "no-levels";
    case Diagnostic::Kind::kRootCount: return "root-count";
    case Diagnostic::Kind::kRootInEdges: return "root-in-edges";
    case Diagnostic::Kind::kEmptyLevel: return "empty-level";
    case Diagnostic::Kind::kEmptyInEdges: return "empty-in-edges";
    case Diagnostic::Kind::kBadSource: return "bad-source";
    case Diagnostic::Kind::kDeadEnd: return "dead-end";
  }
  return "unknown";
}

std::vector<Diagnostic> validate(const LevelList& levels) {
  using Kind = Diagnostic::Kind;
  std::vector<Diagnostic> out;
  if (levels.empty()) {
    out.push_back({Kind::kNoLevels, {}, "graph has no levels"});
    return out;
  }
  if (levels[0].size() != 1) {
    out.push_back({Kind::kRootCount, {0, 0},
                   "level 0 must hold exactly one vertex, found " +
                       std::to_string(levels[0].size())});
  }
  for (std::size_t i = 0; i < levels[0].size(); ++i) {
    if (!levels[0][i].empty()) {
      out.push_back({Kind::kRootInEdges, {0, i}, "root vertex has in-edges"});
    }
  }
  for (std::size_t n = 1; n < levels.size(); ++n) {
    const std::size_t below = levels[n - 1].size();
    if (levels[n].empty()) {
      out.push_back({Kind::kEmptyLevel, {n, 0},
                     "level " + std::to_string(n) + " has no vertices"});
    }
    std::vector<bool> used(below, false);
    for (std::size_t w = 0; w < levels[n].size(); ++w) {
      const VertexRef ref{n, w};
      if (levels[n][w].empty()) {
        out.push_back({Kind::kEmptyInEdges, ref,
                       "vertex " + to_string(ref) + " has no in-edges"});
      }
      for (std::size_t src : levels[n][w]) {
        if (src >= below) {
          out.push_back({Kind::kBadSource, ref,
                         "vertex " + to_string(ref) + " has source " +
                             std::to_string(src) + " outside level " +
                             std::to_string(n - 1)});
        } else {
          used[src] = true;
        }
      }
    }
    for (std::size_t v = 0; v < below; ++v) {
      if (!used[v]) {
        const VertexRef ref{n - 1, v};
        out.push_back({Kind::kDeadEnd, ref,
                       "vertex " + to_string(ref) + " has no outgoing edge"});
      }
    }
  }
  return out;
}

namespace {

std::string describe(const std::vector<Diagnostic>& diags) {
  std::ostringstream os;
  os << "invalid graded graph:";
  for (const auto& d : diags) os << "\n  [" << to_string(d.kind) << "] " << d.message;
  return os.str();
}

}  // namespace

GradedGraph::GradedGraph() : GradedGraph(LevelList{LevelSpec{InEdges{}}}) {}

GradedGraph::GradedGraph(LevelList levels) : levels_(std::move(levels)) {
  if (auto diags = bratteli::validate(levels_); !diags.empty()) {
    throw Error(describe(diags));
  }
  dims_.resize(levels_.size());
  dims_[0] = {1};
  for (std::size_t n = 1; n < levels_.size(); ++n) {
    dims_[n].resize(levels_[n].size());
    for (std::size_t w = 0; w < levels_[n].size(); ++w) {
      std::uint64_t total = 0;
      for (std::size_t src : levels_[n][w]) {
        const std::uint64_t d = dims_[n - 1][src];
        if (d == kDimOverflow || __builtin_add_overflow(total, d, &total) ||
            total == kDimOverflow) {
          total = kDimOverflow;
          break;
        }
      }
      dims_[n][w] = total;
    }
  }
}

std::size_t GradedGraph::level_size(std::size_t level) const {
  if (level >= levels_.size()) {
    throw Error("level " + std::to_string(level) + " out of range (graph has " +
                std::to_string(levels_.size()) + " levels)");
  }
  return levels_[level].size();
}

std::vector<std::size_t> GradedGraph::level_sizes() const {
  std::vector<std::size_t> sizes;
  sizes.reserve(levels_.size());
  for (const auto& level : levels_) sizes.push_back(level.size());
  return sizes;
}

std::size_t GradedGraph::num_vertices() const noexcept {
  std::size_t total = 0;
  for (const auto& level : levels_) total += level.size();
  return total;
}

bool GradedGraph::contains(const VertexRef& v) const noexcept {
  return v.level < levels_.size() && v.index < levels_[v.level].size();
}

void GradedGraph::require(const VertexRef& v) const {
  if (!contains(v)) throw Error("invalid vertex " + to_string(v));
}

std::span<const std::size_t> GradedGraph::in_edges(const VertexRef& v) const {
  require(v);
  return levels_[v.level][v.index];
}

std::uint64_t GradedGraph::dim(const VertexRef& v) const {
  require(v);
  const std::uint64_t d = dims_[v.level][v.index];
  if (d == kDimOverflow) {
    throw Error("path count of " + to_string(v) + " exceeds 64 bits");
  }
  return d;
}

std::vector<Diagnostic> validate(const GradedGraph& graph) {
  return validate(graph.levels());
}

std::uint64_t dim(const GradedGraph& graph, const VertexRef& v) {
  return graph.dim(v);
}

OutEdgeIndex::OutEdgeIndex(const GradedGraph& graph) {
  out_.resize(graph.num_levels());
  for (std::size_t n = 0; n < graph.num_levels(); ++n) {
    out_[n].resize(graph.level_size(n));
  }
  for (std::size_t n = 1; n < graph.num_levels(); ++n) {
    for (std::size_t w = 0; w < graph.level_size(n); ++w) {
      const auto edges = graph.in_edges({n, w});
      for (std::size_t r = 0; r < edges.size(); ++r) {
        out_[n - 1][edges[r]].push_back({w, r});
      }
    }
  }
}

std::span<const OutEdge> OutEdgeIndex::out_edges(const VertexRef& v) const {
  if (v.level >= out_.size() || v.index >= out_[v.level].size()) {
    throw Error("invalid vertex " + to_string(v));
  }
  return out_[v.level][v.index];
}

namespace {

// Appends the bottom endpoints of all segments from level `bottom` up to
// (level, v), in adic order: the edge nearest v is the most significant.
void collect_segments(const GradedGraph& graph, std::size_t level,
                      std::size_t v, std::size_t bottom, InEdges& out) {
  if (level == bottom) {
    out.push_back(v);
    return;
  }
  for (std::size_t src : graph.in_edges({level, v})) {
    collect_segments(graph, level - 1, src, bottom, out);
  }
}

}  // namespace

GradedGraph telescope(const GradedGraph& graph,
                      std::span<const std::size_t> kept_levels) {
  if (kept_levels.empty() || kept_levels.front() != 0) {
    throw Error("telescope: kept levels must start with level 0");
  }
  for (std::size_t i = 0; i < kept_levels.size(); ++i) {
    if (kept_levels[i] >= graph.num_levels()) {
      throw Error("telescope: level " + std::to_string(kept_levels[i]) +
                  " out of range");
    }
    if (i > 0 && kept_levels[i] <= kept_levels[i - 1]) {
      throw Error("telescope: kept levels must be strictly increasing");
    }
  }
  LevelList levels;
  levels.push_back(LevelSpec{InEdges{}});
  for (std::size_t m = 1; m < kept_levels.size(); ++m) {
    const std::size_t top = kept_levels[m];
    LevelSpec level(graph.level_size(top));
    for (std::size_t w = 0; w < level.size(); ++w) {
      const std::uint64_t count = graph.dim({top, w});
      if (count > (std::uint64_t{1} << 26)) {
        throw Error("telescope: segment count at " + to_string({top, w}) +
                    " exceeds the size guard");
      }
      collect_segments(graph, top, w, kept_levels[m - 1], level[w]);
    }
    levels.push_back(std::move(level));
  }
  return GradedGraph(std::move(levels));
}

InducedSubgraph induced_subgraph(const GradedGraph& graph,
                                 std::span<const VertexRef> keep) {
  std::vector<std::vector<bool>> kept(graph.num_levels());
  for (std::size_t n = 0; n < graph.num_levels(); ++n) {
    kept[n].assign(graph.level_size(n), false);
  }
  std::size_t top = 0;
  for (const auto& v : keep) {
    if (!graph.contains(v)) {
      throw Error("induced_subgraph: invalid vertex " + to_string(v));
    }
    kept[v.level][v.index] = true;
    top = std::max(top, v.level);
  }
  if (!kept[0][0]) throw Error("induced_subgraph: root must be kept");

  InducedSubgraph result;
  result.embedding.resize(top + 1);
  std::vector<std::vector<std::size_t>> renumber(top + 1);
  for (std::size_t n = 0; n <= top; ++n) {
    renumber[n].assign(graph.level_size(n), SIZE_MAX);
    for (std::size_t i = 0; i < graph.level_size(n); ++i) {
      if (kept[n][i]) {
        renumber[n][i] = result.embedding[n].size();
        result.embedding[n].push_back(i);
      }
    }
  }

  LevelList levels(top + 1);
  levels[0] = LevelSpec{InEdges{}};
  for (std::size_t n = 1; n <= top; ++n) {
    for (std::size_t old : result.embedding[n]) {
      InEdges edges;
      for (std::size_t src : graph.in_edges({n, old})) {
        if (!kept[n - 1][src]) {
          throw Error("induced_subgraph: kept vertex " + to_string({n, old}) +
                      " has source " + to_string({n - 1, src}) +
                      " outside the kept set");
        }
        edges.push_back(renumber[n - 1][src]);
      }
      levels[n].push_back(std::move(edges));
    }
  }
  result.graph = GradedGraph(std::move(levels));
  return result;
}

std::string to_dot(const GradedGraph& graph) {
  std::ostringstream os;
  os << "digraph G {\n  rankdir=BT;\n";
  for (std::size_t n = 0; n < graph.num_levels(); ++n) {
    os << "  { rank=same;";
    for (std::size_t i = 0; i < graph.level_size(n); ++i) {
      os << " L" << n << '_' << i << ';';
    }
    os << " }\n";
  }
  for (std::size_t n = 1; n < graph.num_levels(); ++n) {
    for (std::size_t w = 0; w < graph.level_size(n); ++w) {
      const auto edges = graph.in_edges({n, w});
      for (std::size_t r = 0; r < edges.size(); ++r) {
        os << "  L" << n - 1 << '_' << edges[r] << " -> L" << n << '_' << w
           << " [label=\"" << r << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace bratteli
