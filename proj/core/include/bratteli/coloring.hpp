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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bratteli/adic.hpp"
#include "bratteli/graph.hpp"
#include "bratteli/rational.hpp"
#include "bratteli/trees.hpp"

namespace bratteli {

// A color per vertex, level by level, from a finite palette per level.
struct Coloring {
  std::vector<std::vector<std::size_t>> colors;
  std::vector<std::size_t> palette_sizes;

  std::size_t depth() const noexcept { return colors.empty() ? 0 : colors.size() - 1; }
  friend bool operator==(const Coloring&, const Coloring&) = default;
};

// Throws unless the coloring covers levels 0..upto_level of the graph with
// in-palette colors.
void require_coloring(const GradedGraph& graph, const Coloring& coloring,
                      std::size_t upto_level);

// Every vertex its own color.
Coloring canonical_coloring(const GradedGraph& graph);
// A single color on every level.
Coloring uniform_coloring(const GradedGraph& graph);

// A marked tree whose nodes carry the colors of the graph vertices they come
// from, listed in preorder.
struct ColoredMarkedTree {
  MarkedTree marked;
  std::vector<std::size_t> node_colors;

  friend bool operator==(const ColoredMarkedTree&, const ColoredMarkedTree&) = default;
};

// Colored marked tree of the length-depth prefix of p.
ColoredMarkedTree cotp(const GradedGraph& graph, const Coloring& coloring,
                       const PathPrefix& p, std::size_t depth,
                       const TreeLimits& limits = {});

// Parenthesized with each node's color after its opening bracket, then
// ":<mark>", e.g. "(0(1)(1)):1".
std::string encode(const ColoredMarkedTree& tree);

inline constexpr std::uint64_t kDefaultPaletteGuard = std::uint64_t{1} << 22;

// Colors a level-n vertex by the tuple, over its paths in adic order, of the
// classes of their first min(n, cut) edges. Covers levels 0..depth. Throws if
// the tuples to intern exceed the guard in total length.
Coloring separating_coloring(const GradedGraph& graph, std::size_t depth,
                             std::size_t cut,
                             std::uint64_t guard = kDefaultPaletteGuard);

// sum_{k=1}^{a} b^k with a the largest dim on level n and b the number of
// length-min(n, cut) paths: the most colors separating_coloring may use.
BigInt separating_palette_bound(const GradedGraph& graph, std::size_t level,
                                std::size_t cut);

struct ColoredDefinitenessReport {
  bool definite = true;
  std::optional<std::pair<PathPrefix, PathPrefix>> witness;
};

// True iff p -> cotp(p) is injective over all paths of length depth.
ColoredDefinitenessReport colored_definiteness_check(const GradedGraph& graph,
                                                     const Coloring& coloring,
                                                     std::size_t depth);

inline constexpr int kColoringFormatVersion = 1;

std::string serialize_coloring(const Coloring& coloring);
Coloring deserialize_coloring(std::string_view text);

}  // namespace bratteli
