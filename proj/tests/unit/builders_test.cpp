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

#include <gtest/gtest.h>

#include <vector>

#include "bratteli/builders.hpp"
#include "bratteli/error.hpp"
#include "bratteli/trees.hpp"
#include "bratteli/uniadic.hpp"
#include "support/oracles.hpp"

namespace bratteli {
namespace {

std::vector<std::uint64_t> top_dims(const GradedGraph& g) {
  std::vector<std::uint64_t> out;
  const std::size_t top = g.num_levels() - 1;
  for (std::size_t v = 0; v < g.level_size(top); ++v) out.push_back(g.dim({top, v}));
  return out;
}

TEST(Odometer, Dims) {
  const GradedGraph g = odometer(2, 3);
  for (std::size_t n = 0; n <= 3; ++n) EXPECT_EQ(g.dim({n, 0}), std::uint64_t{1} << n);
  EXPECT_EQ(odometer(3, 2).in_degree({2, 0}), 3u);
  EXPECT_THROW(odometer(0, 2), Error);
}

TEST(Pascal, BinomialRow) {
  EXPECT_EQ(top_dims(pascal(4)), (std::vector<std::uint64_t>{1, 4, 6, 4, 1}));
  const GradedGraph g = pascal(3);
  EXPECT_EQ(std::vector<std::size_t>(g.in_edges({3, 1}).begin(), g.in_edges({3, 1}).end()),
            (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(g.in_degree({3, 0}), 1u);
  EXPECT_EQ(g.in_degree({3, 3}), 1u);
}

TEST(DoubledOdometer, NotMinimalAtLevelOne) {
  const GradedGraph g = doubled_odometer(4);
  EXPECT_EQ(g.level_sizes(), (std::vector<std::size_t>{1, 2, 2, 2, 2}));
  const auto report = is_minimal(g, 4);
  EXPECT_FALSE(report.minimal);
  EXPECT_EQ(report.witness->level, 1u);
  EXPECT_NO_THROW(embed(g));
}

TEST(RandomGraph, HonoursGuards) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const GradedGraph g = random_graph(seed, 5, 2, 4, 5);
    EXPECT_TRUE(validate(g.levels()).empty());
    for (std::size_t n = 1; n < g.num_levels(); ++n) {
      EXPECT_LE(g.level_size(n), 5u);
      for (std::size_t w = 0; w < g.level_size(n); ++w) EXPECT_GE(g.in_degree({n, w}), 2u);
    }
    EXPECT_NO_THROW(embed(g)) << "seed " << seed;
  }
}

TEST(RandomGraph, SeedDeterministic) {
  EXPECT_EQ(random_graph(11, 5, 2, 4, 6), random_graph(11, 5, 2, 4, 6));
  EXPECT_NE(random_graph(11, 5, 2, 4, 6), random_graph(12, 5, 2, 4, 6));
}

TEST(RandomGraph, BadParameters) {
  EXPECT_THROW(random_graph(0, 0, 2, 4, 3), Error);
  EXPECT_THROW(random_graph(0, 5, 0, 4, 3), Error);
  EXPECT_THROW(random_graph(0, 5, 3, 2, 3), Error);
}

TEST(Build, Dispatch) {
  BuilderSpec spec;
  spec.kind = parse_builder_kind("pascal");
  spec.depth = 3;
  EXPECT_EQ(build(spec), pascal(3));
  EXPECT_EQ(default_weights(spec, build(spec), Rational(1, 3)).masses,
            pascal_weights(3, Rational(1, 3)).masses);
  spec.kind = BuilderSpec::Kind::kOdometer;
  spec.base = 3;
  EXPECT_EQ(build(spec), odometer(3, 3));
  EXPECT_EQ(to_string(parse_builder_kind("doubled_odometer")), "doubled_odometer");
  EXPECT_THROW(parse_builder_kind("tree"), Error);
}

TEST(Weights, DoubledOdometer) {
  const ExactWeights w = doubled_odometer_weights(3);
  EXPECT_EQ(w.masses[0][0], 1);
  EXPECT_EQ(w.masses[1][0], Rational(1, 4));
  EXPECT_EQ(w.masses[3][1], Rational(1, 16));
}

TEST(Weights, PascalRejectsBadP) {
  EXPECT_THROW(pascal_weights(3, Rational(3, 2)), Error);
  EXPECT_THROW(pascal_weights(3, Rational(-1, 2)), Error);
}

TEST(Weights, UniformTopIsUniformOverTopPaths) {
  const GradedGraph g = random_graph(3, 5, 2, 4, 4);
  const ExactWeights w = uniform_top_weights(g);
  Rational total = 0;
  for (std::size_t v = 0; v < g.level_size(4); ++v) {
    EXPECT_EQ(w.masses[4][v], w.masses[4][0]);
    total += w.masses[4][v] * g.dim({4, v});
  }
  EXPECT_EQ(total, 1);
}

TEST(Builders, AllValidateClean) {
  for (std::size_t depth = 0; depth <= 6; ++depth) {
    EXPECT_TRUE(validate(odometer(2, depth).levels()).empty());
    EXPECT_TRUE(validate(odometer(5, depth).levels()).empty());
    EXPECT_TRUE(validate(pascal(depth).levels()).empty());
    EXPECT_TRUE(validate(doubled_odometer(depth).levels()).empty());
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      EXPECT_TRUE(validate(random_graph(seed, 4, 1, 3, depth).levels()).empty());
    }
  }
}

}  // namespace
}  // namespace bratteli
