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

#include "bratteli/coloring.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "bratteli/error.hpp"
#include "json_util.hpp"

namespace bratteli {

void require_coloring(const GradedGraph& graph, const Coloring& coloring,
                      std::size_t upto_level) {
  if (upto_level >= graph.num_levels()) {
    throw Error("coloring level " + std::to_string(upto_level) + " out of range");
  }
  if (coloring.colors.size() <= upto_level || coloring.palette_sizes.size() <= upto_level) {
    throw Error("coloring covers " + std::to_string(coloring.colors.size()) +
                " levels, need " + std::to_string(upto_level + 1));
  }
  for (std::size_t n = 0; n <= upto_level; ++n) {
    if (coloring.colors[n].size() != graph.level_size(n)) {
      throw Error("coloring of level " + std::to_string(n) + " has " +
                  std::to_string(coloring.colors[n].size()) + " entries for " +
                  std::to_string(graph.level_size(n)) + " vertices");
    }
    for (std::size_t v = 0; v < coloring.colors[n].size(); ++v) {
      if (coloring.colors[n][v] >= coloring.palette_sizes[n]) {
        throw Error("vertex " + to_string(VertexRef{n, v}) + " has color " +
                    std::to_string(coloring.colors[n][v]) + " outside palette of size " +
                    std::to_string(coloring.palette_sizes[n]));
      }
    }
  }
}

Coloring canonical_coloring(const GradedGraph& graph) {
  Coloring c;
  for (std::size_t n = 0; n < graph.num_levels(); ++n) {
    auto& level = c.colors.emplace_back(graph.level_size(n));
    for (std::size_t v = 0; v < level.size(); ++v) level[v] = v;
    c.palette_sizes.push_back(level.size());
  }
  return c;
}

Coloring uniform_coloring(const GradedGraph& graph) {
  Coloring c;
  for (std::size_t n = 0; n < graph.num_levels(); ++n) {
    c.colors.emplace_back(graph.level_size(n), 0);
    c.palette_sizes.push_back(1);
  }
  return c;
}

ColoredMarkedTree cotp(const GradedGraph& graph, const Coloring& coloring,
                       const PathPrefix& p, std::size_t depth, const TreeLimits& limits) {
  if (depth > p.length()) {
    throw Error("cotp: depth " + std::to_string(depth) + " exceeds path length " +
                std::to_string(p.length()));
  }
  const PathPrefix prefix = truncate(graph, p, depth);
  require_coloring(graph, coloring, depth);
  ColoredMarkedTree out;
  out.marked = otp(graph, prefix, limits);
  out.node_colors.reserve(out.marked.tree.node_count());
  auto walk = [&](auto&& self, std::size_t level, std::size_t v) -> void {
    out.node_colors.push_back(coloring.colors[level][v]);
    if (level == 0) return;
    for (std::size_t src : graph.in_edges({level, v})) self(self, level - 1, src);
  };
  walk(walk, depth, prefix.end);
  return out;
}

std::string encode(const ColoredMarkedTree& tree) {
  std::string out;
  std::size_t next = 0;
  auto emit = [&](auto&& self, const OrderedTree& node) -> void {
    out += '(';
    out += std::to_string(tree.node_colors.at(next++));
    for (const auto& child : node.children()) self(self, child);
    out += ')';
  };
  emit(emit, tree.marked.tree);
  return out + ":" + std::to_string(tree.marked.mark);
}

namespace {

// Lists, for every vertex of `level`, the class ids of its paths truncated to
// length `cut` (with cut <= level), in adic order.
std::vector<std::vector<std::uint64_t>> truncation_classes(const GradedGraph& graph,
                                                           std::size_t cut,
                                                           std::size_t level,
                                                           std::uint64_t guard) {
  std::vector<std::vector<std::uint64_t>> lists(graph.level_size(cut));
  std::uint64_t offset = 0;
  for (std::size_t u = 0; u < lists.size(); ++u) {
    const std::uint64_t d = graph.dim({cut, u});
    if (offset + d > guard) throw Error("separating coloring exceeds the size guard");
    for (std::uint64_t r = 0; r < d; ++r) lists[u].push_back(offset + r);
    offset += d;
  }
  for (std::size_t n = cut + 1; n <= level; ++n) {
    std::uint64_t total = 0;
    for (std::size_t w = 0; w < graph.level_size(n); ++w) total += graph.dim({n, w});
    if (total > guard) throw Error("separating coloring exceeds the size guard");
    std::vector<std::vector<std::uint64_t>> next(graph.level_size(n));
    for (std::size_t w = 0; w < next.size(); ++w) {
      for (std::size_t src : graph.in_edges({n, w})) {
        next[w].insert(next[w].end(), lists[src].begin(), lists[src].end());
      }
    }
    lists = std::move(next);
  }
  return lists;
}

}  // namespace

Coloring separating_coloring(const GradedGraph& graph, std::size_t depth, std::size_t cut,
                             std::uint64_t guard) {
  if (cut > depth) throw Error("separating coloring: cut exceeds depth");
  if (depth >= graph.num_levels()) throw Error("separating coloring: depth out of range");
  Coloring c;
  for (std::size_t n = 0; n <= depth; ++n) {
    const auto lists = truncation_classes(graph, std::min(n, cut), n, guard);
    std::map<std::vector<std::uint64_t>, std::size_t> palette;
    auto& colors = c.colors.emplace_back();
    for (const auto& list : lists) {
      auto [it, inserted] = palette.emplace(list, palette.size());
      colors.push_back(it->second);
    }
    c.palette_sizes.push_back(palette.size());
  }
  return c;
}

BigInt separating_palette_bound(const GradedGraph& graph, std::size_t level,
                                std::size_t cut) {
  const std::size_t c = std::min(level, cut);
  std::uint64_t a = 0;
  for (std::size_t v = 0; v < graph.level_size(level); ++v) {
    a = std::max(a, graph.dim({level, v}));
  }
  BigInt b = 0;
  for (std::size_t u = 0; u < graph.level_size(c); ++u) b += graph.dim({c, u});
  BigInt sum = 0;
  BigInt power = 1;
  for (std::uint64_t k = 1; k <= a; ++k) {
    power *= b;
    sum += power;
  }
  return sum;
}

ColoredDefinitenessReport colored_definiteness_check(const GradedGraph& graph,
                                                     const Coloring& coloring,
                                                     std::size_t depth) {
  require_coloring(graph, coloring, depth);
  // Colored tree classes, hash-consed level by level: equal ids iff equal
  // colored trees.
  std::vector<std::size_t> ids{0};
  for (std::size_t n = 1; n <= depth; ++n) {
    std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> interned;
    std::vector<std::size_t> next(graph.level_size(n));
    for (std::size_t w = 0; w < next.size(); ++w) {
      std::vector<std::size_t> children;
      for (std::size_t src : graph.in_edges({n, w})) {
        children.push_back(ids[src] * coloring.palette_sizes[n - 1] +
                           coloring.colors[n - 1][src]);
      }
      auto [it, inserted] = interned.emplace(
          std::make_pair(coloring.colors[n][w], std::move(children)), interned.size());
      next[w] = it->second;
    }
    ids = std::move(next);
  }
  // A path of length depth is (endpoint, mark); the mark ranges over
  // 0..dim-1, so two paths collide iff their endpoints share a colored class
  // and a mark.
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> seen;
  for (std::size_t v = 0; v < graph.level_size(depth); ++v) {
    const auto key = std::make_pair(ids[v], coloring.colors[depth][v]);
    auto [it, inserted] = seen.emplace(key, v);
    if (!inserted) {
      return {false, std::make_pair(minimal_path(graph, {depth, it->second}),
                                    minimal_path(graph, {depth, v}))};
    }
  }
  return {};
}

std::string serialize_coloring(const Coloring& coloring) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kColoringFormatVersion << ",\n  \"palette_sizes\": [";
  for (std::size_t n = 0; n < coloring.palette_sizes.size(); ++n) {
    os << (n ? "," : "") << coloring.palette_sizes[n];
  }
  os << "],\n  \"levels\": [\n";
  for (std::size_t n = 0; n < coloring.colors.size(); ++n) {
    os << "    [";
    for (std::size_t v = 0; v < coloring.colors[n].size(); ++v) {
      os << (v ? "," : "") << coloring.colors[n][v];
    }
    os << (n + 1 < coloring.colors.size() ? "],\n" : "]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

Coloring deserialize_coloring(std::string_view text) {
  using detail::Json;
  constexpr std::string_view kWhat = "coloring";
  const Json doc = detail::parse_document(text, kWhat, kColoringFormatVersion);
  const Json& levels = detail::require_field(doc, "levels", kWhat);
  if (!levels.is_array()) detail::schema_error(kWhat, "/levels", "expected an array");
  Coloring c;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const std::string path = "/levels/" + std::to_string(n);
    if (!levels[n].is_array()) detail::schema_error(kWhat, path, "expected an array");
    auto& level = c.colors.emplace_back();
    for (std::size_t v = 0; v < levels[n].size(); ++v) {
      level.push_back(detail::as_index(levels[n][v], kWhat, path + "/" + std::to_string(v)));
    }
  }
  if (auto it = doc.find("palette_sizes"); it != doc.end()) {
    if (!it->is_array() || it->size() != c.colors.size()) {
      detail::schema_error(kWhat, "/palette_sizes", "expected one size per level");
    }
    for (std::size_t n = 0; n < it->size(); ++n) {
      c.palette_sizes.push_back(
          detail::as_index((*it)[n], kWhat, "/palette_sizes/" + std::to_string(n)));
    }
  } else {
    for (const auto& level : c.colors) {
      c.palette_sizes.push_back(level.empty() ? 0 : *std::max_element(level.begin(), level.end()) + 1);
    }
  }
  return c;
}

}  // namespace bratteli
