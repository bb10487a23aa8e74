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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bratteli/adic.hpp"
#include "bratteli/graph.hpp"
#include "bratteli/rational.hpp"

namespace bratteli {

// Finite-depth central measure: masses[n][v] is the measure of each single
// cylinder ending at (n, v). Every path to v gets the same mass, so centrality
// holds by construction and only consistency needs checking.
template <class Scalar>
struct BasicCentralWeights {
  std::vector<std::vector<Scalar>> masses;

  std::size_t depth() const noexcept { return masses.empty() ? 0 : masses.size() - 1; }
  const Scalar& at(const VertexRef& v) const { return masses.at(v.level).at(v.index); }
};

using ExactWeights = BasicCentralWeights<Rational>;
using FloatWeights = BasicCentralWeights<double>;
using CentralWeights = std::variant<ExactWeights, FloatWeights>;

inline constexpr double kDefaultTolerance = 1e-12;

FloatWeights to_float(const ExactWeights& weights);

template <class Scalar>
struct CentralityReport {
  bool ok = true;
  Scalar root_residual{};
  // Per level: max over vertices of |m_n(v) - sum of masses one level up|.
  // The top level has nothing above it and reports zero.
  std::vector<Scalar> harmonic_residual;
  // Per level: |sum_v dim(v) m_n(v) - 1|.
  std::vector<Scalar> normalization_residual;
  std::vector<std::string> problems;
};

// Verifies m_0(root) = 1, harmonicity and level normalization within tol.
// Throws if the weights do not cover exactly the graph's levels.
template <class Scalar>
CentralityReport<Scalar> check_central(const GradedGraph& graph,
                                       const BasicCentralWeights<Scalar>& weights,
                                       const Scalar& tol);

// Markov realization of a central measure up to a fixed depth: from (n, v)
// the walk takes an out-edge into w with probability m_{n+1}(w) / m_n(v).
class PathSampler {
 public:
  template <class Scalar>
  PathSampler(const GradedGraph& graph, const BasicCentralWeights<Scalar>& weights,
              std::size_t depth);

  std::size_t depth() const noexcept { return depth_; }

  // Throws on a zero-mass trap.
  PathPrefix sample(std::uint64_t seed) const;

  // `count` paths, deterministic in (seed, count). Samples are drawn in fixed
  // chunks with per-chunk derived seeds, so the output does not depend on the
  // number of workers.
  std::vector<PathPrefix> sample_many(std::size_t count, std::uint64_t seed,
                                      unsigned workers = 1) const;

  static constexpr std::size_t kChunkSize = 1024;

 private:
  struct Choice {
    std::size_t target;
    std::size_t rank;
    double mass;
  };
  template <class Rng>
  PathPrefix walk(Rng& rng) const;

  std::size_t depth_ = 0;
  // choices_[n][v]: out-edges of (n, v) with the mass of their target.
  std::vector<std::vector<std::vector<Choice>>> choices_;
};

// splitmix64 finalizer applied to seed + stream * golden ratio.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

template <class Scalar>
PathPrefix sample_path(const GradedGraph& graph,
                       const BasicCentralWeights<Scalar>& weights,
                       std::size_t depth, std::uint64_t seed) {
  return PathSampler(graph, weights, depth).sample(seed);
}

// Weights whose top level is `top_masses` and every lower level is obtained
// by harmonicity. Centrality then only needs the top-level normalization.
template <class Scalar>
BasicCentralWeights<Scalar> extend_downward(const GradedGraph& graph,
                                            std::vector<Scalar> top_masses);

template <class Scalar>
struct EssentialityReport {
  std::size_t depth = 0;
  // Mass of the paths whose length-depth prefix is maximal (resp. minimal)
  // toward its endpoint. Paths without adic successor (predecessor) lie inside.
  Scalar maximal_mass{};
  Scalar minimal_mass{};
  std::size_t extreme_paths = 0;
};

template <class Scalar>
EssentialityReport<Scalar> essentiality_report(const GradedGraph& graph,
                                               const BasicCentralWeights<Scalar>& weights,
                                               std::size_t depth);

inline constexpr int kWeightsFormatVersion = 1;

// {"version":1, "mode":"rational"|"float", "levels":[[...], ...]}. Rational
// masses are strings such as "1/4"; float masses are JSON numbers.
std::string serialize_weights(const CentralWeights& weights);
CentralWeights deserialize_weights(std::string_view text);

}  // namespace bratteli
