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
#include "bratteli/error.hpp"
#include "bratteli/graph.hpp"
#include "bratteli/measures.hpp"

namespace bratteli {

// Vertices of the uniadic graph UA. Level n+1 is V_n x V_n (ordered pairs,
// in-edges [left, right]) followed by copy(V_n) (a single in-edge).
enum class UAKind : std::uint8_t { kRoot, kPair, kCopy };

// Hash-consed UA vertex terms. Equal terms share one id, so id equality is
// structural equality. Id 0 is the root.
class UATermPool {
 public:
  using Id = std::uint32_t;

  struct Node {
    UAKind kind = UAKind::kRoot;
    Id left = 0;
    Id right = 0;
    std::size_t level = 0;
  };

  UATermPool();

  Id root() const noexcept { return 0; }
  // Both operands must live on the same level.
  Id pair(Id left, Id right);
  Id copy(Id inner);

  const Node& node(Id id) const;
  std::size_t level(Id id) const { return node(id).level; }
  std::size_t size() const noexcept { return nodes_.size(); }

  // "R", "P(a,b)", "C(a)". Throws if the text would exceed max_length.
  std::string to_string(Id id, std::size_t max_length = std::size_t{1} << 20) const;
  Id parse(std::string_view text);

 private:
  struct KeyHash {
    std::size_t operator()(const std::uint64_t& k) const noexcept {
      return std::hash<std::uint64_t>{}(k * 0x9E3779B97F4A7C15ULL);
    }
  };
  Id intern(UAKind kind, Id left, Id right, std::size_t level);

  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, Id, KeyHash> pairs_;
  std::unordered_map<Id, Id> copies_;
};

// Number of UA vertices on each level 0..depth (s_{n+1} = s_n^2 + s_n);
// nullopt entries once a count no longer fits in 64 bits.
std::vector<std::optional<std::uint64_t>> ua_level_sizes(std::size_t depth);

// Position of a term inside its UA level: pairs (u,v) come first in row-major
// order, then copies. nullopt if the level is too large to index.
std::optional<std::uint64_t> ua_index(const UATermPool& pool, UATermPool::Id id);

struct UniadicGraph {
  GradedGraph graph;
  UATermPool pool;
  // terms[level][index] names the vertex.
  std::vector<std::vector<UATermPool::Id>> terms;
};

inline constexpr std::size_t kDefaultUAVertexGuard = 2'000'000;

// UA truncated to levels 0..depth. Throws if the vertex count would exceed
// max_vertices.
UniadicGraph ua_graph(std::size_t depth,
                      std::size_t max_vertices = kDefaultUAVertexGuard);

// Bipartite piece of a graded graph: top_size source vertices and the ordered
// in-edge lists of the vertices below them.
struct BipartiteFragment {
  std::size_t top_size = 0;
  LevelSpec bottom;
};

// Intermediate levels inserted into a fragment. layers[0] points into the
// original top; each later layer points into its predecessor; bottom points
// into the last layer (or the top when there are no layers).
struct LayerStack {
  std::vector<LevelSpec> layers;
  LevelSpec bottom;
};

// Reroutes every vertex whose ordered in-edge list repeats an earlier one
// through a pair vertex of its first two parents, one layer per duplicate.
// Throws for duplicates with a single parent.
LayerStack deduplicate_ancestry(const BipartiteFragment& fragment);

// Repeatedly takes the first bottom vertex w with more than two parents
// v1..vk and inserts a layer holding copies of the used top vertices plus the
// pair (v1,v2); w becomes [(v1,v2), copy(v3), ..., copy(vk)]. Telescoping the
// stack back to its end levels gives the input fragment.
LayerStack thin_bipartite(std::size_t top_size, const LevelSpec& bottom_in_edges);

// Composes two stacks: `second` must start from the last level of `first`.
LayerStack append_stack(LayerStack first, const LayerStack& second);

struct EmbeddingResult {
  // All levels of the thinned graph, original levels included.
  GradedGraph layered;
  // schedule[n] = layer holding original level n.
  std::vector<std::size_t> schedule;
  UATermPool pool;
  // UA term of every layer vertex.
  std::vector<std::vector<UATermPool::Id>> terms;
  // vertex_map[n][i] = UA term of original vertex (n, i).
  std::vector<std::vector<UATermPool::Id>> vertex_map;
};

// Realizes the graph inside UA: a layered graph whose vertices have one or
// two ordered parents, distinct per layer, and which telescopes back to the
// input. Requires in-degree >= 2 (with multiplicity) off the root.
EmbeddingResult embed(const GradedGraph& graph);

struct VerificationReport {
  bool ok = true;
  std::vector<std::string> problems;
};

// Independent check of an embedding: in-degrees, UA term consistency and
// per-layer injectivity, and order-exact telescoping back to the graph.
VerificationReport verify_embedding(const GradedGraph& graph,
                                    const EmbeddingResult& result);

// Path correspondence between the graph and the layered graph.
PathPrefix lift_path(const GradedGraph& graph, const EmbeddingResult& result,
                     const PathPrefix& p);
PathPrefix project_path(const EmbeddingResult& result, const PathPrefix& q);

// Central weights on the layered graph whose telescoping along the schedule
// gives `weights`.
template <class Scalar>
BasicCentralWeights<Scalar> pushforward_weights(const EmbeddingResult& result,
                                                const BasicCentralWeights<Scalar>& weights) {
  if (weights.masses.size() != result.schedule.size()) {
    throw Error("pushforward_weights: weights depth does not match the embedded graph");
  }
  return extend_downward(result.layered, weights.masses.back());
}

inline constexpr int kEmbeddingFormatVersion = 1;

std::string serialize_embedding(const EmbeddingResult& result);
EmbeddingResult deserialize_embedding(std::string_view text);

}  // namespace bratteli
