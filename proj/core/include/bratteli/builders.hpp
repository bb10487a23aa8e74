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

#include "bratteli/graph.hpp"
#include "bratteli/measures.hpp"
#include "bratteli/rational.hpp"

namespace bratteli {

struct BuilderSpec {
  enum class Kind { kOdometer, kPascal, kDoubledOdometer, kRandom };

  Kind kind = Kind::kOdometer;
  std::size_t depth = 4;
  // Odometer: number of ordered parallel in-edges per vertex.
  std::size_t base = 2;
  // Random graphs.
  std::uint64_t seed = 0;
  std::size_t max_vertices = 5;
  std::size_t min_in_degree = 2;
  std::size_t max_in_degree = 4;
};

std::string_view to_string(BuilderSpec::Kind kind);
BuilderSpec::Kind parse_builder_kind(std::string_view name);

// One vertex per level with `base` parallel in-edges.
GradedGraph odometer(std::size_t base, std::size_t depth);
// Level n has vertices 0..n; vertex k has in-edges [k-1, k] where defined.
GradedGraph pascal(std::size_t depth);
// Two disjoint copies of odometer(2) under a common root: vertex i of level
// n+1 has in-edges [i, i]. Never minimal above level 0.
GradedGraph doubled_odometer(std::size_t depth);
// Level sizes uniform in [1, max_vertices], in-degrees uniform in
// [min_in_degree, max_in_degree], sources uniform. A vertex left without an
// outgoing edge is then appended to a random in-edge list above it, so
// in-degrees can exceed max_in_degree.
GradedGraph random_graph(std::uint64_t seed, std::size_t max_vertices,
                         std::size_t min_in_degree, std::size_t max_in_degree,
                         std::size_t depth);

GradedGraph build(const BuilderSpec& spec);

// m_n = base^-n.
ExactWeights odometer_weights(std::size_t base, std::size_t depth);
// Bernoulli(p) weights m_n(k) = p^k (1-p)^(n-k).
ExactWeights pascal_weights(std::size_t depth, const Rational& p);
// m_0 = 1, m_n = 2^-(n+1) on both vertices.
ExactWeights doubled_odometer_weights(std::size_t depth);
// Uniform over the paths reaching the top level, pushed down by harmonicity.
// Central for any graph.
ExactWeights uniform_top_weights(const GradedGraph& graph);

// Canonical weights for the built graph; Pascal uses `p`, random graphs use
// uniform_top_weights.
ExactWeights default_weights(const BuilderSpec& spec, const GradedGraph& graph,
                             const Rational& p = Rational(1, 2));

}  // namespace bratteli
