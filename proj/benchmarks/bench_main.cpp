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

#include <benchmark/benchmark.h>

#include "bratteli/adic.hpp"
#include "bratteli/builders.hpp"
#include "bratteli/measures.hpp"
#include "bratteli/scheme.hpp"
#include "bratteli/trees.hpp"
#include "bratteli/uniadic.hpp"

namespace {

using namespace bratteli;

void BM_SuccessorOrbit(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const GradedGraph g = pascal(depth);
  const VertexRef v{depth, depth / 2};
  for (auto _ : state) {
    std::optional<PathPrefix> p = minimal_path(g, v);
    std::size_t steps = 0;
    while (p) {
      p = successor(g, *p);
      ++steps;
    }
    benchmark::DoNotOptimize(steps);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.dim(v)));
}
BENCHMARK(BM_SuccessorOrbit)->Arg(10)->Arg(14)->Arg(18);

void BM_RankUnrank(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const GradedGraph g = pascal(depth);
  const VertexRef v{depth, depth / 2};
  const std::uint64_t d = g.dim(v);
  std::uint64_t i = 0;
  for (auto _ : state) {
    const PathPrefix p = unrank(g, v, i);
    benchmark::DoNotOptimize(rank(g, p));
    i = (i + 7919) % d;
  }
}
BENCHMARK(BM_RankUnrank)->Arg(16)->Arg(32);

void BM_TreeIndex(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const GradedGraph g = ua_graph(depth).graph;
  for (auto _ : state) {
    const TreeIndex index(g, depth);
    benchmark::DoNotOptimize(index.class_count(depth));
  }
}
BENCHMARK(BM_TreeIndex)->Arg(3)->Arg(4);

void BM_OtKey(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const GradedGraph g = odometer(2, depth);
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode(ot(g, {depth, 0})));
  }
}
BENCHMARK(BM_OtKey)->Arg(8)->Arg(12);

void BM_Embed(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const GradedGraph g = random_graph(3, 5, 2, 4, depth);
  for (auto _ : state) {
    benchmark::DoNotOptimize(embed(g).layered.num_levels());
  }
}
BENCHMARK(BM_Embed)->Arg(4)->Arg(8);

void BM_SampleMany(benchmark::State& state) {
  const auto workers = static_cast<unsigned>(state.range(0));
  const GradedGraph g = pascal(32);
  const PathSampler sampler(g, to_float(pascal_weights(32, Rational(1, 3))), 32);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sampler.sample_many(100'000, 1, workers).size());
  }
  state.SetItemsProcessed(state.iterations() * 100'000);
}
BENCHMARK(BM_SampleMany)->Arg(1)->Arg(4)->UseRealTime();

void BM_ExactScheme(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const GradedGraph g = pascal(depth);
  const ExactWeights w = pascal_weights(depth, Rational(1, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_scheme(g, w, depth).entries.size());
  }
}
BENCHMARK(BM_ExactScheme)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
