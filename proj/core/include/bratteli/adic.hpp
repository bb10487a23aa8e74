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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bratteli/graph.hpp"

namespace bratteli {

// A finite path from the root. ranks[n] is the position, in the in-edge list
// of the path's vertex at level n+1, of the edge the path uses. Read from the
// top down, ranks plus the endpoint determine every vertex of the path.
struct PathPrefix {
  std::size_t end = 0;  // endpoint index at level ranks.size()
  std::vector<std::size_t> ranks;

  std::size_t length() const noexcept { return ranks.size(); }

  friend bool operator==(const PathPrefix&, const PathPrefix&) = default;
};

// Vertex indices visited by p, from the root (entry 0) to the endpoint.
// Throws if p is not a path of the graph.
std::vector<std::size_t> vertex_sequence(const GradedGraph& graph,
                                         const PathPrefix& p);

void require_path(const GradedGraph& graph, const PathPrefix& p);

VertexRef endpoint(const GradedGraph& graph, const PathPrefix& p);

// Finds the unique endpoint for a bare rank list. Throws when no vertex or
// more than one vertex at that level accepts the ranks.
PathPrefix resolve_path(const GradedGraph& graph,
                        std::span<const std::size_t> ranks);

// Adic order on paths with a common endpoint: the highest transition at which
// the paths differ decides, by in-edge rank.
std::strong_ordering compare(const GradedGraph& graph, const PathPrefix& p,
                             const PathPrefix& q);

// Every path to v, sorted by compare(). Brute force; meant as an oracle.
std::vector<PathPrefix> enumerate_paths(const GradedGraph& graph,
                                        const VertexRef& v);

PathPrefix minimal_path(const GradedGraph& graph, const VertexRef& v);
PathPrefix maximal_path(const GradedGraph& graph, const VertexRef& v);
bool is_maximal(const GradedGraph& graph, const PathPrefix& p);
bool is_minimal(const GradedGraph& graph, const PathPrefix& p);

// Adic successor: the next path to the same endpoint, or nullopt if p is
// maximal.
std::optional<PathPrefix> successor(const GradedGraph& graph,
                                    const PathPrefix& p);
std::optional<PathPrefix> predecessor(const GradedGraph& graph,
                                      const PathPrefix& p);

// 0-based position of p among the paths to its endpoint.
std::uint64_t rank(const GradedGraph& graph, const PathPrefix& p);

// Inverse of rank().
PathPrefix unrank(const GradedGraph& graph, const VertexRef& v,
                  std::uint64_t position);

// The initial segment of p of the given length.
PathPrefix truncate(const GradedGraph& graph, const PathPrefix& p,
                    std::size_t length);

// Text encoding: comma-separated ranks, optionally followed by "@<endpoint>".
// The endpoint suffix is written whenever the endpoint level has more than one
// vertex.
std::string format_path(const GradedGraph& graph, const PathPrefix& p);
PathPrefix parse_path(const GradedGraph& graph, std::string_view text);

}  // namespace bratteli
