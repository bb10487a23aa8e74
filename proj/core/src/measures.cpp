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

#include "bratteli/measures.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

template <class Scalar>
Scalar abs_diff(const Scalar& a, const Scalar& b) {
  return a < b ? Scalar(b - a) : Scalar(a - b);
}

template <class Scalar>
std::string show(const Scalar& value) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return to_string(value);
  } else {
    return std::to_string(value);
  }
}

template <class Scalar>
void require_cover(const GradedGraph& graph, const BasicCentralWeights<Scalar>& weights,
                   std::size_t levels) {
  if (weights.masses.size() < levels) {
    throw Error("weights define " + std::to_string(weights.masses.size()) +
                " levels, need " + std::to_string(levels));
  }
  for (std::size_t n = 0; n < levels; ++n) {
    if (weights.masses[n].size() != graph.level_size(n)) {
      throw Error("weights for level " + std::to_string(n) + " list " +
                  std::to_string(weights.masses[n].size()) + " masses, level has " +
                  std::to_string(graph.level_size(n)) + " vertices");
    }
  }
}

}  // namespace

FloatWeights to_float(const ExactWeights& weights) {
  FloatWeights out;
  for (const auto& level : weights.masses) {
    auto& dst = out.masses.emplace_back();
    for (const auto& m : level) dst.push_back(to_double(m));
  }
  return out;
}

template <class Scalar>
CentralityReport<Scalar> check_central(const GradedGraph& graph,
                                       const BasicCentralWeights<Scalar>& weights,
                                       const Scalar& tol) {
  if (weights.masses.size() != graph.num_levels()) {
    throw Error("weights define " + std::to_string(weights.masses.size()) +
                " levels, graph has " + std::to_string(graph.num_levels()));
  }
  require_cover(graph, weights, graph.num_levels());
  CentralityReport<Scalar> report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.problems.push_back(std::move(msg));
  };

  report.root_residual = abs_diff(weights.masses[0][0], Scalar(1));
  if (report.root_residual > tol) {
    fail("root mass is " + show(weights.masses[0][0]) + ", expected 1");
  }

  const OutEdgeIndex out(graph);
  const std::size_t levels = graph.num_levels();
  report.harmonic_residual.assign(levels, Scalar(0));
  report.normalization_residual.assign(levels, Scalar(0));
  for (std::size_t n = 0; n < levels; ++n) {
    Scalar total(0);
    for (std::size_t v = 0; v < graph.level_size(n); ++v) {
      const Scalar& m = weights.masses[n][v];
      if (m < Scalar(0)) fail("negative mass at " + to_string(VertexRef{n, v}));
      total += Scalar(graph.dim({n, v})) * m;
      if (n + 1 < levels) {
        Scalar above(0);
        for (const OutEdge& e : out.out_edges({n, v})) above += weights.masses[n + 1][e.target];
        const Scalar r = abs_diff(m, above);
        if (r > report.harmonic_residual[n]) report.harmonic_residual[n] = r;
      }
    }
    report.normalization_residual[n] = abs_diff(total, Scalar(1));
    if (report.harmonic_residual[n] > tol) {
      fail("level " + std::to_string(n) + " harmonicity residual " +
           show(report.harmonic_residual[n]));
    }
    if (report.normalization_residual[n] > tol) {
      fail("level " + std::to_string(n) + " normalization residual " +
           show(report.normalization_residual[n]));
    }
  }
  return report;
}

template CentralityReport<Rational> check_central(const GradedGraph&, const ExactWeights&,
                                                  const Rational&);
template CentralityReport<double> check_central(const GradedGraph&, const FloatWeights&,
                                                const double&);

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <class Scalar>
PathSampler::PathSampler(const GradedGraph& graph,
                         const BasicCentralWeights<Scalar>& weights, std::size_t depth)
    : depth_(depth) {
  if (depth >= graph.num_levels()) {
    throw Error("sampling depth " + std::to_string(depth) + " exceeds graph depth");
  }
  require_cover(graph, weights, depth + 1);
  const OutEdgeIndex out(graph);
  choices_.resize(depth);
  for (std::size_t n = 0; n < depth; ++n) {
    choices_[n].resize(graph.level_size(n));
    for (std::size_t v = 0; v < graph.level_size(n); ++v) {
      for (const OutEdge& e : out.out_edges({n, v})) {
        double mass = 0;
        if constexpr (std::is_same_v<Scalar, Rational>) {
          mass = to_double(weights.masses[n + 1][e.target]);
        } else {
          mass = weights.masses[n + 1][e.target];
        }
        choices_[n][v].push_back({e.target, e.rank, mass});
      }
    }
  }
}

template PathSampler::PathSampler(const GradedGraph&, const ExactWeights&, std::size_t);
template PathSampler::PathSampler(const GradedGraph&, const FloatWeights&, std::size_t);

template <class Rng>
PathPrefix PathSampler::walk(Rng& rng) const {
  PathPrefix p{0, std::vector<std::size_t>(depth_, 0)};
  std::size_t v = 0;
  for (std::size_t n = 0; n < depth_; ++n) {
    const auto& options = choices_[n][v];
    double total = 0;
    for (const Choice& c : options) total += c.mass > 0 ? c.mass : 0;
    if (!(total > 0)) {
      throw Error("zero-mass trap at " + to_string(VertexRef{n, v}) +
                  ": every extension has mass 0");
    }
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double target = u * total;
    double acc = 0;
    const Choice* pick = nullptr;
    for (const Choice& c : options) {
      if (!(c.mass > 0)) continue;
      pick = &c;
      acc += c.mass;
      if (target < acc) break;
    }
    p.ranks[n] = pick->rank;
    v = pick->target;
  }
  p.end = v;
  return p;
}

PathPrefix PathSampler::sample(std::uint64_t seed) const {
  std::mt19937_64 rng(derive_seed(seed, 0));
  return walk(rng);
}

std::vector<PathPrefix> PathSampler::sample_many(std::size_t count, std::uint64_t seed,
                                                 unsigned workers) const {
  std::vector<PathPrefix> out(count);
  const std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
  auto run_chunk = [&](std::size_t c) {
    std::mt19937_64 rng(derive_seed(seed, c));
    const std::size_t last = std::min(count, (c + 1) * kChunkSize);
    for (std::size_t i = c * kChunkSize; i < last; ++i) out[i] = walk(rng);
  };
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(chunks)));
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return out;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

template <class Scalar>
EssentialityReport<Scalar> essentiality_report(const GradedGraph& graph,
                                               const BasicCentralWeights<Scalar>& weights,
                                               std::size_t depth) {
  if (depth >= graph.num_levels()) {
    throw Error("depth " + std::to_string(depth) + " exceeds graph depth");
  }
  require_cover(graph, weights, depth + 1);
  // Each endpoint has exactly one maximal and one minimal path.
  EssentialityReport<Scalar> report;
  report.depth = depth;
  for (std::size_t v = 0; v < graph.level_size(depth); ++v) {
    report.maximal_mass += weights.masses[depth][v];
    report.minimal_mass += weights.masses[depth][v];
  }
  report.extreme_paths = graph.level_size(depth);
  return report;
}

template EssentialityReport<Rational> essentiality_report(const GradedGraph&,
                                                          const ExactWeights&, std::size_t);
template EssentialityReport<double> essentiality_report(const GradedGraph&,
                                                        const FloatWeights&, std::size_t);

template <class Scalar>
BasicCentralWeights<Scalar> extend_downward(const GradedGraph& graph,
                                            std::vector<Scalar> top_masses) {
  const std::size_t top = graph.num_levels() - 1;
  if (top_masses.size() != graph.level_size(top)) {
    throw Error("extend_downward: expected " + std::to_string(graph.level_size(top)) +
                " top masses, got " + std::to_string(top_masses.size()));
  }
  BasicCentralWeights<Scalar> w;
  w.masses.resize(graph.num_levels());
  w.masses[top] = std::move(top_masses);
  const OutEdgeIndex out(graph);
  for (std::size_t n = top; n-- > 0;) {
    w.masses[n].assign(graph.level_size(n), Scalar(0));
    for (std::size_t v = 0; v < graph.level_size(n); ++v) {
      for (const OutEdge& e : out.out_edges({n, v})) w.masses[n][v] += w.masses[n + 1][e.target];
    }
  }
  return w;
}

template ExactWeights extend_downward(const GradedGraph&, std::vector<Rational>);
template FloatWeights extend_downward(const GradedGraph&, std::vector<double>);

}  // namespace bratteli
