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
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bratteli/adic.hpp"
#include "bratteli/graph.hpp"
#include "bratteli/measures.hpp"
#include "bratteli/rational.hpp"

namespace bratteli {

// Closed integer interval [lo, hi].
struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t size() const noexcept { return hi - lo + 1; }
  bool contains(std::int64_t x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct HierarchyLevel {
  // Orbit window of the path at this level, with the path itself at 0.
  Interval interval;
  // Ordered partition of `interval` into level-(n-1) blocks; empty at n = 0.
  std::vector<Interval> blocks;
};

// The hierarchy on Z seen from one path, truncated to a finite depth.
struct HierarchyPrefix {
  std::vector<HierarchyLevel> levels;
};

// levels[n].interval = [-rank(p[0..n]), dim(v_n) - 1 - rank(p[0..n])]; the
// blocks are the ot children of v_n laid out left to right.
HierarchyPrefix hierarchy_of_path(const GradedGraph& graph, const PathPrefix& p,
                                  std::size_t depth);

// Structural invariants that hold for any hierarchy prefix: consecutive
// non-empty blocks tiling each level, 0 inside every interval, and each level
// nested as one block of the next. Returns the violations found.
std::vector<std::string> hierarchy_violations(const HierarchyPrefix& h);

// Finite-depth combinatorial scheme: probabilities of marked-tree keys.
template <class Scalar>
struct SchemeDistribution {
  std::size_t depth = 0;
  std::map<std::string, Scalar> entries;

  Scalar total() const {
    Scalar t(0);
    for (const auto& [key, p] : entries) t += p;
    return t;
  }
};

using ExactScheme = SchemeDistribution<Rational>;
using FloatScheme = SchemeDistribution<double>;

FloatScheme to_float(const ExactScheme& scheme);

inline constexpr std::uint64_t kDefaultCylinderGuard = std::uint64_t{1} << 20;

// For every path of length depth, adds its cylinder mass to the key of its
// marked tree. Throws when the number of such paths exceeds the guard.
template <class Scalar>
SchemeDistribution<Scalar> exact_scheme(const GradedGraph& graph,
                                        const BasicCentralWeights<Scalar>& weights,
                                        std::size_t depth,
                                        std::uint64_t max_cylinders = kDefaultCylinderGuard);

// Frequencies of marked-tree keys over `samples` sampled paths. Deterministic
// in (seed, samples) for any number of workers. samples = 0 is an error.
template <class Scalar>
FloatScheme empirical_scheme(const GradedGraph& graph,
                             const BasicCentralWeights<Scalar>& weights,
                             std::size_t depth, std::size_t samples,
                             std::uint64_t seed, unsigned workers = 1);

// Total variation: half the l1 distance over the union of keys.
template <class Scalar>
Scalar scheme_distance(const SchemeDistribution<Scalar>& a,
                       const SchemeDistribution<Scalar>& b);

template <class Scalar>
struct DefinitenessReport {
  std::size_t depth = 0;
  std::uint64_t cylinders = 0;
  std::uint64_t distinct_keys = 0;
  // distinct_keys / cylinders; 1 iff marked trees tell all cylinders apart.
  Rational resolution_ratio;
  // Sum over keys of (key mass)^2: chance that two independent paths share
  // a key.
  Scalar collision_statistic{};
  // Sum over keys of (key mass - largest single cylinder mass in the key):
  // mass that the key cannot attribute to one cylinder.
  Scalar collision_mass{};
};

template <class Scalar>
DefinitenessReport<Scalar> definiteness_diagnostic(
    const GradedGraph& graph, const BasicCentralWeights<Scalar>& weights,
    std::size_t depth, std::uint64_t max_cylinders = kDefaultCylinderGuard);

inline constexpr int kSchemeFormatVersion = 1;

// {"version":1, "depth":n, "mode":..., "entries":[[key, probability], ...]}
// with entries sorted by key.
std::string serialize_scheme(const ExactScheme& scheme);
std::string serialize_scheme(const FloatScheme& scheme);

}  // namespace bratteli
