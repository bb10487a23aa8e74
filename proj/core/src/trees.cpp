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

#include "bratteli/trees.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "bratteli/error.hpp"

namespace bratteli {

OrderedTree::OrderedTree(std::vector<OrderedTree> children)
    : children_(std::move(children)) {
  if (children_.empty()) return;
  depth_ = children_.front().depth_ + 1;
  leaves_ = 0;
  for (const auto& child : children_) {
    if (child.depth_ + 1 != depth_) {
      throw Error("ordered tree is not graded: children of unequal depth");
    }
    leaves_ += child.leaves_;
    nodes_ += child.nodes_;
  }
}

MarkedTree make_marked(OrderedTree tree, std::uint64_t mark) {
  if (mark >= tree.leaf_count()) {
    throw Error("mark " + std::to_string(mark) + " out of range for a tree with " +
                std::to_string(tree.leaf_count()) + " leaves");
  }
  return MarkedTree{std::move(tree), mark};
}

namespace {

void append_key(const OrderedTree& tree, std::string& out) {
  out += '(';
  for (const auto& child : tree.children()) append_key(child, out);
  out += ')';
}

OrderedTree parse_tree(std::string_view key, std::size_t& pos) {
  if (pos >= key.size() || key[pos] != '(') {
    throw Error("malformed tree key at offset " + std::to_string(pos));
  }
  ++pos;
  std::vector<OrderedTree> children;
  while (pos < key.size() && key[pos] == '(') {
    children.push_back(parse_tree(key, pos));
  }
  if (pos >= key.size() || key[pos] != ')') {
    throw Error("malformed tree key at offset " + std::to_string(pos));
  }
  ++pos;
  return OrderedTree(std::move(children));
}

}  // namespace

std::string encode(const OrderedTree& tree) {
  std::string out;
  out.reserve(2 * tree.node_count());
  append_key(tree, out);
  return out;
}

std::string encode(const MarkedTree& tree) {
  return encode(tree.tree) + ":" + std::to_string(tree.mark);
}

OrderedTree decode_tree(std::string_view key) {
  std::size_t pos = 0;
  OrderedTree tree = parse_tree(key, pos);
  if (pos != key.size()) {
    throw Error("trailing characters in tree key at offset " + std::to_string(pos));
  }
  return tree;
}

MarkedTree decode_marked(std::string_view key) {
  const auto colon = key.rfind(':');
  if (colon == std::string_view::npos) throw Error("marked tree key lacks ':'");
  std::uint64_t mark = 0;
  const auto digits = key.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), mark);
  if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw Error("malformed mark in tree key");
  }
  return make_marked(decode_tree(key.substr(0, colon)), mark);
}

namespace {

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  return __builtin_add_overflow(a, b, &out) ? UINT64_MAX : out;
}

std::vector<std::vector<std::uint64_t>> node_counts(const GradedGraph& graph,
                                                    std::size_t upto) {
  std::vector<std::vector<std::uint64_t>> nodes(upto + 1);
  nodes[0] = {1};
  for (std::size_t n = 1; n <= upto; ++n) {
    nodes[n].resize(graph.level_size(n));
    for (std::size_t w = 0; w < nodes[n].size(); ++w) {
      std::uint64_t total = 1;
      for (std::size_t src : graph.in_edges({n, w})) {
        total = saturating_add(total, nodes[n - 1][src]);
      }
      nodes[n][w] = total;
    }
  }
  return nodes;
}

void check_guard(std::uint64_t nodes, const TreeLimits& limits,
                 const VertexRef& v) {
  if (nodes > limits.max_nodes) {
    throw Error("ordered tree of " + to_string(v) + " has " +
                (nodes == UINT64_MAX ? std::string("too many")
                                     : std::to_string(nodes)) +
                " nodes, above the size guard of " +
                std::to_string(limits.max_nodes));
  }
}

}  // namespace

std::uint64_t ot_node_count(const GradedGraph& graph, const VertexRef& v) {
  if (!graph.contains(v)) throw Error("invalid vertex " + to_string(v));
  return node_counts(graph, v.level)[v.level][v.index];
}

OrderedTree ot(const GradedGraph& graph, const VertexRef& v,
               const TreeLimits& limits) {
  check_guard(ot_node_count(graph, v), limits, v);
  // Subtrees are built once per vertex and copied into their parents.
  std::vector<OrderedTree> below{OrderedTree{}};
  for (std::size_t n = 1; n <= v.level; ++n) {
    std::vector<OrderedTree> level;
    const std::size_t count = n == v.level ? 1 : graph.level_size(n);
    const std::size_t first = n == v.level ? v.index : 0;
    level.reserve(count);
    for (std::size_t w = first; w < first + count; ++w) {
      std::vector<OrderedTree> children;
      for (std::size_t src : graph.in_edges({n, w})) children.push_back(below[src]);
      level.emplace_back(std::move(children));
    }
    below = std::move(level);
  }
  return v.level == 0 ? OrderedTree{} : std::move(below.front());
}

MarkedTree otp(const GradedGraph& graph, const PathPrefix& p,
               const TreeLimits& limits) {
  const VertexRef v = endpoint(graph, p);
  return MarkedTree{ot(graph, v, limits), rank(graph, p)};
}

TreeIndex::TreeIndex(const GradedGraph& graph, std::size_t upto_level) {
  if (upto_level >= graph.num_levels()) {
    throw Error("tree index: level " + std::to_string(upto_level) +
                " out of range");
  }
  ids_.resize(upto_level + 1);
  classes_.resize(upto_level + 1);
  class_nodes_.resize(upto_level + 1);
  ids_[0] = {0};
  classes_[0] = {{}};
  class_nodes_[0] = {1};
  for (std::size_t n = 1; n <= upto_level; ++n) {
    std::map<std::vector<std::size_t>, std::size_t> interned;
    ids_[n].resize(graph.level_size(n));
    for (std::size_t w = 0; w < graph.level_size(n); ++w) {
      std::vector<std::size_t> children;
      for (std::size_t src : graph.in_edges({n, w})) children.push_back(ids_[n - 1][src]);
      auto [it, inserted] = interned.emplace(children, classes_[n].size());
      if (inserted) {
        std::uint64_t nodes = 1;
        for (std::size_t c : children) nodes = saturating_add(nodes, class_nodes_[n - 1][c]);
        class_nodes_[n].push_back(nodes);
        classes_[n].push_back(std::move(children));
      }
      ids_[n][w] = it->second;
    }
  }
}

std::size_t TreeIndex::class_id(const VertexRef& v) const {
  if (v.level >= ids_.size() || v.index >= ids_[v.level].size()) {
    throw Error("tree index: vertex " + to_string(v) + " not indexed");
  }
  return ids_[v.level][v.index];
}

std::size_t TreeIndex::class_count(std::size_t level) const {
  if (level >= classes_.size()) throw Error("tree index: level not indexed");
  return classes_[level].size();
}

const std::vector<std::size_t>& TreeIndex::class_children(std::size_t level,
                                                          std::size_t id) const {
  if (level >= classes_.size() || id >= classes_[level].size()) {
    throw Error("tree index: class not indexed");
  }
  return classes_[level][id];
}

const std::vector<std::size_t>& TreeIndex::level_ids(std::size_t level) const {
  if (level >= ids_.size()) throw Error("tree index: level not indexed");
  return ids_[level];
}

std::string TreeIndex::key(const VertexRef& v, const TreeLimits& limits) const {
  const std::size_t id = class_id(v);
  check_guard(class_nodes_[v.level][id], limits, v);
  std::string out;
  auto emit = [&](auto&& self, std::size_t level, std::size_t c) -> void {
    out += '(';
    if (level > 0) {
      for (std::size_t child : classes_[level][c]) self(self, level - 1, child);
    }
    out += ')';
  };
  emit(emit, v.level, id);
  return out;
}

MinimalityReport is_minimal(const GradedGraph& graph, std::size_t upto_level) {
  const TreeIndex index(graph, upto_level);
  for (std::size_t n = 0; n <= upto_level; ++n) {
    const auto& ids = index.level_ids(n);
    if (index.class_count(n) == ids.size()) continue;
    // Lowest vertex with a twin, paired with its lowest twin.
    for (std::size_t a = 0; a < ids.size(); ++a) {
      for (std::size_t b = a + 1; b < ids.size(); ++b) {
        if (ids[a] == ids[b]) return {false, MinimalityWitness{n, a, b}};
      }
    }
  }
  return {};
}

Quotient minimal_quotient(const GradedGraph& graph, std::size_t upto_level) {
  const TreeIndex index(graph, upto_level);
  Quotient q;
  LevelList levels(upto_level + 1);
  levels[0] = LevelSpec{InEdges{}};
  for (std::size_t n = 1; n <= upto_level; ++n) {
    for (std::size_t c = 0; c < index.class_count(n); ++c) {
      levels[n].push_back(index.class_children(n, c));
    }
  }
  q.graph = GradedGraph(std::move(levels));
  for (std::size_t n = 0; n <= upto_level; ++n) q.vertex_map.push_back(index.level_ids(n));
  return q;
}

}  // namespace bratteli
