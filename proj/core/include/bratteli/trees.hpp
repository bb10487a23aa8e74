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
#include <unordered_map>
#include <vector>

#include "bratteli/adic.hpp"
#include "bratteli/graph.hpp"

namespace bratteli {

// Finite ordered graded tree: every leaf sits at the same depth and the order
// of children matters.
class OrderedTree {
 public:
  // A single node.
  OrderedTree() = default;
  // Throws if the children do not all have the same depth.
  explicit OrderedTree(std::vector<OrderedTree> children);

  const std::vector<OrderedTree>& children() const noexcept { return children_; }
  bool is_leaf() const noexcept { return children_.empty(); }
  std::size_t depth() const noexcept { return depth_; }
  std::uint64_t leaf_count() const noexcept { return leaves_; }
  std::uint64_t node_count() const noexcept { return nodes_; }

  friend bool operator==(const OrderedTree& a, const OrderedTree& b) {
    return a.children_ == b.children_;
  }

 private:
  std::vector<OrderedTree> children_;
  std::size_t depth_ = 0;
  std::uint64_t leaves_ = 1;
  std::uint64_t nodes_ = 1;
};

// Ordered tree with one marked leaf, counted left to right from 0.
struct MarkedTree {
  OrderedTree tree;
  std::uint64_t mark = 0;

  friend bool operator==(const MarkedTree&, const MarkedTree&) = default;
};

MarkedTree make_marked(OrderedTree tree, std::uint64_t mark);

// Canonical keys. A tree is written as balanced parentheses, "()" for a single
// node; a marked tree appends ":<mark>".
std::string encode(const OrderedTree& tree);
std::string encode(const MarkedTree& tree);
OrderedTree decode_tree(std::string_view key);
MarkedTree decode_marked(std::string_view key);

struct TreeLimits {
  std::uint64_t max_nodes = std::uint64_t{1} << 22;
};

// Number of nodes ot(v) would have; saturates at UINT64_MAX.
std::uint64_t ot_node_count(const GradedGraph& graph, const VertexRef& v);

// The ordered tree of a vertex: one child subtree per in-edge, in adic order.
// Throws if the tree would exceed limits.max_nodes.
OrderedTree ot(const GradedGraph& graph, const VertexRef& v,
               const TreeLimits& limits = {});

// ot of the endpoint with the path's leaf marked (the mark is rank(p)).
MarkedTree otp(const GradedGraph& graph, const PathPrefix& p,
               const TreeLimits& limits = {});

// Hash-consed ot classes for levels 0..upto_level. Two vertices of one level
// share a class id iff their ordered trees are equal. Ids are dense per level
// in order of first appearance.
class TreeIndex {
 public:
  TreeIndex(const GradedGraph& graph, std::size_t upto_level);

  std::size_t upto_level() const noexcept { return ids_.size() - 1; }
  std::size_t class_id(const VertexRef& v) const;
  std::size_t class_count(std::size_t level) const;
  // Child class ids (at level - 1) of a class at `level`.
  const std::vector<std::size_t>& class_children(std::size_t level,
                                                 std::size_t id) const;
  const std::vector<std::size_t>& level_ids(std::size_t level) const;

  // encode(ot(v)) assembled from the class table.
  std::string key(const VertexRef& v, const TreeLimits& limits = {}) const;

 private:
  std::vector<std::vector<std::size_t>> ids_;
  std::vector<std::vector<std::vector<std::size_t>>> classes_;
  std::vector<std::vector<std::uint64_t>> class_nodes_;
};

struct MinimalityWitness {
  std::size_t level = 0;
  std::size_t first = 0;
  std::size_t second = 0;
};

struct MinimalityReport {
  bool minimal = true;
  std::optional<MinimalityWitness> witness;
};

// True iff the ot trees of each level up to upto_level are pairwise distinct.
// The witness is the colliding pair at the lowest level, lexicographically
// first.
MinimalityReport is_minimal(const GradedGraph& graph, std::size_t upto_level);

struct Quotient {
  GradedGraph graph;
  // vertex_map[level][original index] = quotient index.
  std::vector<std::vector<std::size_t>> vertex_map;
};

// Merges the vertices of each level that carry equal ot trees. The in-edges
// of a class are the classes of any representative's in-edges, in order.
Quotient minimal_quotient(const GradedGraph& graph, std::size_t upto_level);

}  // namespace bratteli
