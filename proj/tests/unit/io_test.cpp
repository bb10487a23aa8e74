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

#include <string>
#include <variant>

#include "bratteli/builders.hpp"
#include "bratteli/error.hpp"
#include "bratteli/graph.hpp"
#include "bratteli/measures.hpp"
#include "support/corpus.hpp"

namespace bratteli {
namespace {

TEST(GraphText, RoundTrip) {
  for (const auto& f : testing::example_graphs(4)) {
    EXPECT_EQ(deserialize(serialize(f.graph)), f.graph) << f.name;
  }
}

TEST(GraphText, ExactLayout) {
  EXPECT_EQ(serialize(pascal(2)),
            "{\n  \"version\": 1,\n  \"num_levels\": 3,\n  \"levels\": [\n"
            "    [[]],\n    [[0], [0]],\n    [[0], [0,1], [1]]\n  ]\n}\n");
}

TEST(GraphText, HandWrittenFixture) {
  const GradedGraph g = deserialize(R"({
    "version": 1,
    "levels": [ [[]], [[0,0,0], [0]], [[1,0], [0,0,1]] ]
  })");
  EXPECT_EQ(g.level_sizes(), (std::vector<std::size_t>{1, 2, 2}));
  EXPECT_EQ(g.dim({1, 0}), 3u);
  EXPECT_EQ(g.dim({2, 0}), 4u);
  EXPECT_EQ(g.dim({2, 1}), 7u);
  EXPECT_EQ(g.in_edges({2, 1})[2], 1u);
}

ParseError parse_failure(const std::string& text) {
  try {
    deserialize(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "no parse error for: " << text;
  return ParseError("", 0, 0);
}

TEST(GraphText, EmptyDocument) {
  const ParseError e = parse_failure("");
  EXPECT_EQ(e.line(), 1u);
  EXPECT_NE(std::string(e.what()).find("empty"), std::string::npos);
  parse_failure("   \n  ");
}

TEST(GraphText, SyntaxErrorPosition) {
  const ParseError e = parse_failure("{\n  \"version\": 1,\n  \"levels\": [[[]], [[0,]]]\n}");
  EXPECT_EQ(e.line(), 3u);
  EXPECT_GT(e.column(), 1u);
}

TEST(GraphText, SchemaErrors) {
  parse_failure("[]");
  parse_failure(R"({"levels": [[[]]]})");
  parse_failure(R"({"version": 2, "levels": [[[]]]})");
  parse_failure(R"({"version": 1})");
  parse_failure(R"({"version": 1, "levels": [[[]], [[-1]]]})");
  parse_failure(R"({"version": 1, "levels": [[[]], [["a"]]]})");
  parse_failure(R"({"version": 1, "num_levels": 3, "levels": [[[]]]})");
  const ParseError e = parse_failure(R"({"version": 1, "levels": [[[]], [[0], 5]]})");
  EXPECT_NE(std::string(e.what()).find("/levels/1/1"), std::string::npos) << e.what();
}

TEST(GraphText, InvariantViolationsReported) {
  const ParseError e = parse_failure(R"({"version": 1, "levels": [[[]], [[1]]]})");
  EXPECT_NE(std::string(e.what()).find("invariant"), std::string::npos) << e.what();
  const LevelList raw = deserialize_levels(R"({"version": 1, "levels": [[[]], [[1]]]})");
  EXPECT_FALSE(validate(raw).empty());
}

TEST(Dot, NamesAndLabels) {
  const std::string dot = to_dot(odometer(2, 1));
  EXPECT_NE(dot.find("L0_0"), std::string::npos);
  EXPECT_NE(dot.find("L1_0"), std::string::npos);
  EXPECT_NE(dot.find("L0_0 -> L1_0 [label=\"0\"]"), std::string::npos) << dot;
  EXPECT_NE(dot.find("L0_0 -> L1_0 [label=\"1\"]"), std::string::npos) << dot;
  EXPECT_EQ(dot, to_dot(odometer(2, 1)));
}

TEST(WeightsText, RationalRoundTrip) {
  const CentralWeights w = pascal_weights(3, Rational(1, 3));
  const std::string text = serialize_weights(w);
  EXPECT_NE(text.find("\"rational\""), std::string::npos);
  EXPECT_NE(text.find("\"4/27\""), std::string::npos);
  const CentralWeights back = deserialize_weights(text);
  ASSERT_TRUE(std::holds_alternative<ExactWeights>(back));
  EXPECT_EQ(std::get<ExactWeights>(back).masses, std::get<ExactWeights>(w).masses);
}

TEST(WeightsText, FloatRoundTrip) {
  const CentralWeights w = to_float(pascal_weights(3, Rational(1, 3)));
  const CentralWeights back = deserialize_weights(serialize_weights(w));
  ASSERT_TRUE(std::holds_alternative<FloatWeights>(back));
  EXPECT_EQ(std::get<FloatWeights>(back).masses, std::get<FloatWeights>(w).masses);
}

TEST(WeightsText, Malformed) {
  EXPECT_THROW(deserialize_weights(""), ParseError);
  EXPECT_THROW(deserialize_weights(R"({"version":1,"mode":"exact","levels":[["1"]]})"),
               ParseError);
  EXPECT_THROW(deserialize_weights(R"({"version":1,"mode":"rational","levels":[["x"]]})"),
               Error);
  EXPECT_THROW(deserialize_weights(R"({"version":1,"mode":"rational","levels":[["1/0"]]})"),
               Error);
  EXPECT_THROW(deserialize_weights(R"({"version":1,"mode":"float","levels":[["a"]]})"),
               ParseError);
}

TEST(Rational, Parse) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("+1.5"), Rational(3, 2));
  EXPECT_EQ(to_string(Rational(4, 6)), "2/3");
  EXPECT_EQ(to_string(Rational(5)), "5");
  EXPECT_THROW(parse_rational(""), Error);
  EXPECT_THROW(parse_rational("1/"), Error);
  EXPECT_THROW(parse_rational("1.2.3"), Error);
  EXPECT_THROW(parse_rational("1/0"), Error);
}

}  // namespace
}  // namespace bratteli
