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

#include "support/corpus.hpp"

namespace bratteli::testing {

GradedGraph random_fixture(std::uint64_t seed, std::size_t depth) {
  return random_graph(seed, 5, 2, 4, depth);
}

std::vector<Fixture> named_graphs(std::size_t depth) {
  std::vector<Fixture> out;
  out.push_back({"odometer2", odometer(2, depth), odometer_weights(2, depth)});
  out.push_back({"odometer3", odometer(3, depth), odometer_weights(3, depth)});
  out.push_back({"pascal", pascal(depth), pascal_weights(depth, Rational(1, 2))});
  out.push_back({"doubled_odometer", doubled_odometer(depth), doubled_odometer_weights(depth)});
  return out;
}

std::vector<Fixture> example_graphs(std::size_t depth) {
  std::vector<Fixture> out = named_graphs(depth);
  for (std::uint64_t seed = 0; seed < kRandomSeeds; ++seed) {
    GradedGraph g = random_fixture(seed, depth);
    ExactWeights w = uniform_top_weights(g);
    out.push_back({"random" + std::to_string(seed), std::move(g), std::move(w)});
  }
  return out;
}

}  // namespace bratteli::testing
