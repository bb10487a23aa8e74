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

#include "bratteli/builders.hpp"

#include <random>

#include "bratteli/error.hpp"

namespace bratteli {

std::string_view to_string(BuilderSpec::Kind kind) {
  switch (kind) {
    case BuilderSpec::Kind::kOdometer: return "odometer";
    case BuilderSpec::Kind::kPascal: return "pascal";
    case BuilderSpec::Kind::kDoubledOdometer: return "doubled_odometer";
    case BuilderSpec::Kind::kRandom: return "random";
  }
  return "unknown";
}

BuilderSpec::Kind parse_builder_kind(std::string_view name) {
  if (name == "odometer") return BuilderSpec::Kind::kOdometer;
  if (name == "pascal") return BuilderSpec::Kind::kPascal;
  if (name == "doubled_odometer" || name == "doubled-odometer") {
    return BuilderSpec::Kind::kDoubledOdometer;
  }
  if (name == "random") return BuilderSpec::Kind::kRandom;
  throw Error("unknown graph kind '" + std::string(name) + "'");
}

GradedGraph odometer(std::size_t base, std::size_t depth) {
  if (base == 0) throw Error("odometer base must be positive");
  LevelList levels{LevelSpec{InEdges{}}};
  for (std::size_t n = 0; n < depth; ++n) levels.push_back(LevelSpec{InEdges(base, 0)});
  return GradedGraph(std::move(levels));
}

GradedGraph pascal(std::size_t depth) {
  LevelList levels{LevelSpec{InEdges{}}};
  for (std::size_t n = 1; n <= depth; ++n) {
    LevelSpec level(n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      if (k > 0) level[k].push_back(k - 1);
      if (k < n) level[k].push_back(k);
    }
    levels.push_back(std::move(level));
  }
  return GradedGraph(std::move(levels));
}

GradedGraph doubled_odometer(std::size_t depth) {
  LevelList levels{LevelSpec{InEdges{}}};
  if (depth >= 1) levels.push_back(LevelSpec{InEdges{0, 0}, InEdges{0, 0}});
  for (std::size_t n = 2; n <= depth; ++n) {
    levels.push_back(LevelSpec{InEdges{0, 0}, InEdges{1, 1}});
  }
  return GradedGraph(std::move(levels));
}

GradedGraph random_graph(std::uint64_t seed, std::size_t max_vertices,
                         std::size_t min_in_degree, std::size_t max_in_degree,
                         std::size_t depth) {
  if (max_vertices == 0 || min_in_degree == 0 || max_in_degree < min_in_degree) {
    throw Error("random graph: need max_vertices >= 1 and 1 <= min_in_degree <= max_in_degree");
  }
  std::mt19937_64 rng(seed);
  auto draw = [&](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  LevelList levels{LevelSpec{InEdges{}}};
  for (std::size_t n = 1; n <= depth; ++n) {
    const std::size_t below = levels.back().size();
    LevelSpec level(draw(1, max_vertices));
    std::vector<bool> used(below, false);
    for (auto& edges : level) {
      const std::size_t k = draw(min_in_degree, max_in_degree);
      for (std::size_t i = 0; i < k; ++i) {
        edges.push_back(draw(0, below - 1));
        used[edges.back()] = true;
      }
    }
    for (std::size_t v = 0; v < below; ++v) {
      if (used[v]) continue;
      auto& edges = level[draw(0, level.size() - 1)];
      edges.insert(edges.begin() + static_cast<std::ptrdiff_t>(draw(0, edges.size())), v);
    }
    levels.push_back(std::move(level));
  }
  return GradedGraph(std::move(levels));
}

GradedGraph build(const BuilderSpec& spec) {
  switch (spec.kind) {
    case BuilderSpec::Kind::kOdometer: return odometer(spec.base, spec.depth);
    case BuilderSpec::Kind::kPascal: return pascal(spec.depth);
    case BuilderSpec::Kind::kDoubledOdometer: return doubled_odometer(spec.depth);
    case BuilderSpec::Kind::kRandom:
      return random_graph(spec.seed, spec.max_vertices, spec.min_in_degree,
                          spec.max_in_degree, spec.depth);
  }
  throw Error("unknown builder kind");
}

ExactWeights odometer_weights(std::size_t base, std::size_t depth) {
  ExactWeights w;
  Rational m(1);
  for (std::size_t n = 0; n <= depth; ++n) {
    w.masses.push_back({m});
    m /= base;
  }
  return w;
}

ExactWeights pascal_weights(std::size_t depth, const Rational& p) {
  if (p < 0 || p > 1) throw Error("pascal weights need 0 <= p <= 1");
  const Rational q = 1 - p;
  ExactWeights w;
  for (std::size_t n = 0; n <= depth; ++n) {
    auto& level = w.masses.emplace_back();
    for (std::size_t k = 0; k <= n; ++k) {
      Rational m(1);
      for (std::size_t i = 0; i < k; ++i) m *= p;
      for (std::size_t i = k; i < n; ++i) m *= q;
      level.push_back(m);
    }
  }
  return w;
}

ExactWeights doubled_odometer_weights(std::size_t depth) {
  ExactWeights w;
  w.masses.push_back({Rational(1)});
  Rational m(1, 4);
  for (std::size_t n = 1; n <= depth; ++n) {
    w.masses.push_back({m, m});
    m /= 2;
  }
  return w;
}

ExactWeights uniform_top_weights(const GradedGraph& graph) {
  const std::size_t top = graph.num_levels() - 1;
  BigInt total = 0;
  for (std::size_t v = 0; v < graph.level_size(top); ++v) total += graph.dim({top, v});
  return extend_downward(graph,
                         std::vector<Rational>(graph.level_size(top), Rational(BigInt(1), total)));
}

ExactWeights default_weights(const BuilderSpec& spec, const GradedGraph& graph,
                             const Rational& p) {
  switch (spec.kind) {
    case BuilderSpec::Kind::kOdometer: return odometer_weights(spec.base, spec.depth);
    case BuilderSpec::Kind::kPascal: return pascal_weights(spec.depth, p);
    case BuilderSpec::Kind::kDoubledOdometer: return doubled_odometer_weights(spec.depth);
    case BuilderSpec::Kind::kRandom: return uniform_top_weights(graph);
  }
  throw Error("unknown builder kind");
}

}  // namespace bratteli
