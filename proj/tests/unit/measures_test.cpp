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

#include <cmath>
#include <map>
#include <vector>

#include "bratteli/adic.hpp"
#include "bratteli/builders.hpp"
#include "bratteli/error.hpp"
#include "bratteli/measures.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

namespace bratteli {
namespace {

using testing::bernoulli_mass;
using testing::binomial;

// Within `k` standard deviations of a binomial(count, prob) mean.
void expect_binomial(std::size_t hits, std::size_t count, double prob, double k = 3.0) {
  const double mean = count * prob;
  const double sd = std::sqrt(count * prob * (1 - prob));
  EXPECT_LE(std::abs(static_cast<double>(hits) - mean), k * sd + 1e-9)
      << "hits " << hits << " expected " << mean;
}

TEST(CheckCentral, OdometerExact) {
  // One vertex, double edge: m_n = 2 m_{n+1} and 2^n m_n = 1.
  const ExactWeights w = odometer_weights(2, 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(w.masses[n][0], Rational(1, std::uint64_t{1} << n));
  }
  const auto report = check_central(odometer(2, 6), w, Rational(0));
  EXPECT_TRUE(report.ok);
  EXPECT_EQ(report.root_residual, 0);
  for (const auto& r : report.harmonic_residual) EXPECT_EQ(r, 0);
  for (const auto& r : report.normalization_residual) EXPECT_EQ(r, 0);
}

TEST(CheckCentral, PascalExactForSeveralP) {
  for (const Rational p : {Rational(1, 2), Rational(1, 3), Rational(2, 7)}) {
    const ExactWeights w = pascal_weights(6, p);
    for (unsigned n = 0; n <= 6; ++n) {
      for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(w.masses[n][k], bernoulli_mass(p, n, k));
    }
    const auto report = check_central(pascal(6), w, Rational(0));
    EXPECT_TRUE(report.ok) << to_string(p);
  }
}

TEST(CheckCentral, FloatModeWithinTolerance) {
  const FloatWeights w = to_float(pascal_weights(6, Rational(1, 3)));
  const auto report = check_central(pascal(6), w, kDefaultTolerance);
  EXPECT_TRUE(report.ok);
  for (double r : report.harmonic_residual) EXPECT_LT(r, kDefaultTolerance);
  for (double r : report.normalization_residual) EXPECT_LT(r, kDefaultTolerance);
}

TEST(CheckCentral, HalfRootFailsNormalization) {
  ExactWeights w = odometer_weights(2, 3);
  w.masses[0][0] = Rational(1, 2);
  const auto report = check_central(odometer(2, 3), w, Rational(0));
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.normalization_residual[0], Rational(1, 2));
}

TEST(CheckCentral, HarmonicityFailure) {
  ExactWeights w = pascal_weights(3, Rational(1, 2));
  std::swap(w.masses[3][0], w.masses[2][0]);
  EXPECT_FALSE(check_central(pascal(3), w, Rational(0)).ok);
}

TEST(CheckCentral, MissingLevelThrows) {
  ExactWeights w = odometer_weights(2, 3);
  w.masses.pop_back();
  EXPECT_THROW(check_central(odometer(2, 3), w, Rational(0)), Error);
  w = odometer_weights(2, 3);
  w.masses[2].push_back(Rational(0));
  EXPECT_THROW(check_central(odometer(2, 3), w, Rational(0)), Error);
}

TEST(CheckCentral, BuilderDefaultsOnCorpus) {
  for (const auto& f : testing::example_graphs(5)) {
    EXPECT_TRUE(check_central(f.graph, f.weights, Rational(0)).ok) << f.name;
  }
}

TEST(ExtendDownward, RejectsWrongTopSize) {
  EXPECT_THROW(extend_downward(pascal(2), std::vector<Rational>{1}), Error);
}

TEST(Sampler, Deterministic) {
  const GradedGraph g = pascal(6);
  const ExactWeights w = pascal_weights(6, Rational(1, 3));
  EXPECT_EQ(sample_path(g, w, 6, 42), sample_path(g, w, 6, 42));
  const PathSampler sampler(g, w, 6);
  EXPECT_EQ(sampler.sample_many(3000, 9), sampler.sample_many(3000, 9));
}

TEST(Sampler, WorkerCountDoesNotChangeOutput) {
  const GradedGraph g = testing::random_fixture(4, 6);
  const ExactWeights w = uniform_top_weights(g);
  const PathSampler sampler(g, w, 6);
  const auto one = sampler.sample_many(5000, 123, 1);
  EXPECT_EQ(sampler.sample_many(5000, 123, 4), one);
  EXPECT_EQ(sampler.sample_many(5000, 123, 3), one);
  EXPECT_EQ(sampler.sample_many(5000, 123, 64), one);
}

TEST(Sampler, PathsAreValid) {
  for (const auto& f : testing::example_graphs(5)) {
    const PathSampler sampler(f.graph, f.weights, 5);
    for (const PathPrefix& p : sampler.sample_many(200, 1)) {
      EXPECT_NO_THROW(require_path(f.graph, p)) << f.name;
    }
  }
}

TEST(Sampler, OdometerUniformOverDepthThreeCylinders) {
  const GradedGraph g = odometer(2, 3);
  const std::size_t count = 100'000;
  const auto paths = PathSampler(g, odometer_weights(2, 3), 3).sample_many(count, 2024);
  std::map<std::uint64_t, std::size_t> hits;
  for (const auto& p : paths) ++hits[rank(g, p)];
  ASSERT_EQ(hits.size(), 8u);
  for (const auto& [r, h] : hits) expect_binomial(h, count, 1.0 / 8);
}

TEST(Sampler, PascalEndpointsBinomial) {
  const GradedGraph g = pascal(6);
  const std::size_t count = 100'000;
  const auto paths =
      PathSampler(g, pascal_weights(6, Rational(1, 3)), 6).sample_many(count, 77, 4);
  std::vector<std::size_t> ends(7, 0);
  for (const auto& p : paths) ++ends[p.end];
  for (unsigned k = 0; k <= 6; ++k) {
    const double prob = binomial(6, k) * std::pow(1.0 / 3, k) * std::pow(2.0 / 3, 6 - k);
    expect_binomial(ends[k], count, prob);
  }
}

TEST(Sampler, ZeroMassTrap) {
  ExactWeights w = pascal_weights(3, Rational(1, 2));
  for (auto& level : w.masses) {
    for (auto& m : level) m = 0;
  }
  w.masses[0][0] = 1;
  EXPECT_THROW(sample_path(pascal(3), w, 3, 1), Error);
}

TEST(Sampler, DepthBeyondGraph) {
  EXPECT_THROW(PathSampler(odometer(2, 2), odometer_weights(2, 2), 3), Error);
}

TEST(Sampler, DegenerateBernoulli) {
  // p = 1: every step moves right.
  const GradedGraph g = pascal(4);
  const PathPrefix p = sample_path(g, pascal_weights(4, Rational(1)), 4, 5);
  EXPECT_EQ(p.end, 4u);
}

TEST(DeriveSeed, DistinctStreams) {
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  EXPECT_EQ(derive_seed(7, 3), derive_seed(7, 3));
}

TEST(Essentiality, Odometer) {
  const GradedGraph g = odometer(2, 6);
  const ExactWeights w = odometer_weights(2, 6);
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto r = essentiality_report(g, w, n);
    EXPECT_EQ(r.maximal_mass, Rational(1, std::uint64_t{1} << n));
    EXPECT_EQ(r.minimal_mass, Rational(1, std::uint64_t{1} << n));
  }
}

TEST(Essentiality, MatchesExtremePathEnumeration) {
  for (const auto& f : testing::example_graphs(5)) {
    Rational prev_max = 2, prev_min = 2;
    for (std::size_t n = 0; n <= 5; ++n) {
      Rational max_mass = 0, min_mass = 0;
      for (std::size_t v = 0; v < f.graph.level_size(n); ++v) {
        for (const PathPrefix& p : enumerate_paths(f.graph, {n, v})) {
          if (is_maximal(f.graph, p)) max_mass += f.weights.masses[n][v];
          if (is_minimal(f.graph, p)) min_mass += f.weights.masses[n][v];
        }
      }
      const auto r = essentiality_report(f.graph, f.weights, n);
      EXPECT_EQ(r.maximal_mass, max_mass) << f.name;
      EXPECT_EQ(r.minimal_mass, min_mass) << f.name;
      EXPECT_LE(r.maximal_mass, prev_max) << f.name;
      EXPECT_LE(r.minimal_mass, prev_min) << f.name;
      prev_max = r.maximal_mass;
      prev_min = r.minimal_mass;
    }
  }
}

TEST(Essentiality, PascalHalf) {
  // One maximal and one minimal path per endpoint: (n+1) 2^-n each.
  const GradedGraph g = pascal(6);
  const ExactWeights w = pascal_weights(6, Rational(1, 2));
  for (std::size_t n = 0; n <= 6; ++n) {
    const auto r = essentiality_report(g, w, n);
    EXPECT_EQ(r.maximal_mass, Rational(n + 1, std::uint64_t{1} << n));
    EXPECT_EQ(r.minimal_mass, r.maximal_mass);
  }
}

TEST(Essentiality, DepthZero) {
  const auto r = essentiality_report(pascal(2), pascal_weights(2, Rational(1, 2)), 0);
  EXPECT_EQ(r.maximal_mass, 1);
  EXPECT_EQ(r.minimal_mass, 1);
}

}  // namespace
}  // namespace bratteli
