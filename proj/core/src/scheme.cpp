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

#include "bratteli/scheme.hpp"

#include <algorithm>
#include <sstream>

#include "bratteli/error.hpp"
#include "bratteli/trees.hpp"
#include "json_util.hpp"

namespace bratteli {

HierarchyPrefix hierarchy_of_path(const GradedGraph& graph, const PathPrefix& p,
                                  std::size_t depth) {
  if (depth > p.length()) {
    throw Error("hierarchy depth " + std::to_string(depth) + " exceeds path length " +
                std::to_string(p.length()));
  }
  const auto seq = vertex_sequence(graph, p);
  HierarchyPrefix h;
  for (std::size_t n = 0; n <= depth; ++n) {
    const PathPrefix prefix = truncate(graph, p, n);
    const auto r = static_cast<std::int64_t>(rank(graph, prefix));
    const auto d = static_cast<std::int64_t>(graph.dim({n, seq[n]}));
    HierarchyLevel level{{-r, d - 1 - r}, {}};
    if (n > 0) {
      std::int64_t start = -r;
      for (std::size_t src : graph.in_edges({n, seq[n]})) {
        const auto size = static_cast<std::int64_t>(graph.dim({n - 1, src}));
        level.blocks.push_back({start, start + size - 1});
        start += size;
      }
    }
    h.levels.push_back(std::move(level));
  }
  return h;
}

std::vector<std::string> hierarchy_violations(const HierarchyPrefix& h) {
  std::vector<std::string> out;
  for (std::size_t n = 0; n < h.levels.size(); ++n) {
    const auto& level = h.levels[n];
    const std::string at = "level " + std::to_string(n) + ": ";
    if (level.interval.size() < 1) out.push_back(at + "empty interval");
    if (!level.interval.contains(0)) out.push_back(at + "interval misses 0");
    if (n == 0) {
      if (level.interval != Interval{0, 0}) out.push_back(at + "base interval is not [0,0]");
      continue;
    }
    std::int64_t next = level.interval.lo;
    for (const auto& block : level.blocks) {
      if (block.size() < 1) out.push_back(at + "empty block");
      if (block.lo != next) out.push_back(at + "blocks are not consecutive");
      next = block.hi + 1;
    }
    if (next != level.interval.hi + 1) out.push_back(at + "blocks do not tile the interval");
    const auto& below = h.levels[n - 1].interval;
    if (std::find(level.blocks.begin(), level.blocks.end(), below) == level.blocks.end()) {
      out.push_back(at + "previous level is not one of the blocks");
    }
  }
  return out;
}

FloatScheme to_float(const ExactScheme& scheme) {
  FloatScheme out;
  out.depth = scheme.depth;
  for (const auto& [key, p] : scheme.entries) out.entries.emplace(key, to_double(p));
  return out;
}

namespace {

std::uint64_t cylinder_count(const GradedGraph& graph, std::size_t depth,
                             std::uint64_t guard) {
  if (depth >= graph.num_levels()) {
    throw Error("depth " + std::to_string(depth) + " exceeds graph depth");
  }
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < graph.level_size(depth); ++v) {
    if (__builtin_add_overflow(total, graph.dim({depth, v}), &total) || total > guard) {
      throw Error("level " + std::to_string(depth) + " has more than " +
                  std::to_string(guard) + " cylinders");
    }
  }
  return total;
}

std::string marked_key(const std::string& tree_key, std::uint64_t mark) {
  return tree_key + ":" + std::to_string(mark);
}

}  // namespace

template <class Scalar>
SchemeDistribution<Scalar> exact_scheme(const GradedGraph& graph,
                                        const BasicCentralWeights<Scalar>& weights,
                                        std::size_t depth, std::uint64_t max_cylinders) {
  cylinder_count(graph, depth, max_cylinders);
  if (weights.masses.size() <= depth || weights.masses[depth].size() != graph.level_size(depth)) {
    throw Error("weights do not cover level " + std::to_string(depth));
  }
  const TreeIndex index(graph, depth);
  SchemeDistribution<Scalar> scheme;
  scheme.depth = depth;
  for (std::size_t v = 0; v < graph.level_size(depth); ++v) {
    const std::string key = index.key({depth, v});
    const Scalar& mass = weights.masses[depth][v];
    // Paths to v are exactly the marks 0..dim(v)-1 of ot(v).
    for (std::uint64_t mark = 0; mark < graph.dim({depth, v}); ++mark) {
      auto [it, inserted] = scheme.entries.emplace(marked_key(key, mark), mass);
      if (!inserted) it->second += mass;
    }
  }
  return scheme;
}

template ExactScheme exact_scheme(const GradedGraph&, const ExactWeights&, std::size_t,
                                  std::uint64_t);
template FloatScheme exact_scheme(const GradedGraph&, const FloatWeights&, std::size_t,
                                  std::uint64_t);

template <class Scalar>
FloatScheme empirical_scheme(const GradedGraph& graph,
                             const BasicCentralWeights<Scalar>& weights,
                             std::size_t depth, std::size_t samples, std::uint64_t seed,
                             unsigned workers) {
  if (samples == 0) throw Error("empirical scheme needs at least one sample");
  const PathSampler sampler(graph, weights, depth);
  const auto paths = sampler.sample_many(samples, seed, workers);
  const TreeIndex index(graph, depth);
  std::vector<std::string> keys(graph.level_size(depth));
  std::map<std::string, std::uint64_t> counts;
  for (const auto& p : paths) {
    auto& key = keys[p.end];
    if (key.empty()) key = index.key({depth, p.end});
    ++counts[marked_key(key, rank(graph, p))];
  }
  FloatScheme scheme;
  scheme.depth = depth;
  for (const auto& [key, c] : counts) {
    scheme.entries.emplace(key, static_cast<double>(c) / static_cast<double>(samples));
  }
  return scheme;
}

template FloatScheme empirical_scheme(const GradedGraph&, const ExactWeights&, std::size_t,
                                      std::size_t, std::uint64_t, unsigned);
template FloatScheme empirical_scheme(const GradedGraph&, const FloatWeights&, std::size_t,
                                      std::size_t, std::uint64_t, unsigned);

template <class Scalar>
Scalar scheme_distance(const SchemeDistribution<Scalar>& a,
                       const SchemeDistribution<Scalar>& b) {
  if (a.depth != b.depth) {
    throw Error("scheme_distance: depths " + std::to_string(a.depth) + " and " +
                std::to_string(b.depth) + " differ");
  }
  Scalar sum(0);
  auto ia = a.entries.begin();
  auto ib = b.entries.begin();
  while (ia != a.entries.end() || ib != b.entries.end()) {
    if (ib == b.entries.end() || (ia != a.entries.end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.entries.end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      sum += ia->second < ib->second ? Scalar(ib->second - ia->second)
                                     : Scalar(ia->second - ib->second);
      ++ia;
      ++ib;
    }
  }
  return Scalar(sum / 2);
}

template Rational scheme_distance(const ExactScheme&, const ExactScheme&);
template double scheme_distance(const FloatScheme&, const FloatScheme&);

template <class Scalar>
DefinitenessReport<Scalar> definiteness_diagnostic(const GradedGraph& graph,
                                                   const BasicCentralWeights<Scalar>& weights,
                                                   std::size_t depth,
                                                   std::uint64_t max_cylinders) {
  DefinitenessReport<Scalar> report;
  report.depth = depth;
  report.cylinders = cylinder_count(graph, depth, max_cylinders);
  const auto scheme = exact_scheme(graph, weights, depth, max_cylinders);
  report.distinct_keys = scheme.entries.size();
  report.resolution_ratio = Rational(report.distinct_keys, report.cylinders);

  // Largest single-cylinder mass per key. Every cylinder to v carries m(v) and
  // the keys of v are its tree key with each mark.
  const TreeIndex index(graph, depth);
  std::map<std::size_t, Scalar> heaviest;
  for (std::size_t v = 0; v < graph.level_size(depth); ++v) {
    const Scalar& m = weights.masses[depth][v];
    auto [it, inserted] = heaviest.emplace(index.class_id({depth, v}), m);
    if (!inserted && it->second < m) it->second = m;
  }
  for (std::size_t v = 0; v < graph.level_size(depth); ++v) {
    const std::size_t id = index.class_id({depth, v});
    if (auto it = heaviest.find(id); it == heaviest.end()) continue;
    const std::string key = index.key({depth, v});
    for (std::uint64_t mark = 0; mark < graph.dim({depth, v}); ++mark) {
      const Scalar& key_mass = scheme.entries.at(marked_key(key, mark));
      report.collision_statistic += key_mass * key_mass;
      report.collision_mass += key_mass - heaviest.at(id);
    }
    heaviest.erase(id);
  }
  return report;
}

template DefinitenessReport<Rational> definiteness_diagnostic(const GradedGraph&,
                                                              const ExactWeights&,
                                                              std::size_t, std::uint64_t);
template DefinitenessReport<double> definiteness_diagnostic(const GradedGraph&,
                                                            const FloatWeights&,
                                                            std::size_t, std::uint64_t);

namespace {

template <class Scalar>
std::string serialize_scheme_impl(const SchemeDistribution<Scalar>& scheme, bool exact) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kSchemeFormatVersion << ",\n  \"depth\": " << scheme.depth
     << ",\n  \"mode\": \"" << (exact ? "rational" : "float") << "\",\n  \"entries\": [";
  bool first = true;
  for (const auto& [key, p] : scheme.entries) {
    os << (first ? "\n" : ",\n") << "    [" << detail::Json(key).dump() << ", ";
    if constexpr (std::is_same_v<Scalar, Rational>) {
      os << '"' << to_string(p) << '"';
    } else {
      os << detail::Json(p).dump();
    }
    os << ']';
    first = false;
  }
  os << "\n  ]\n}\n";
  return os.str();
}

}  // namespace

std::string serialize_scheme(const ExactScheme& scheme) {
  return serialize_scheme_impl(scheme, true);
}

std::string serialize_scheme(const FloatScheme& scheme) {
  return serialize_scheme_impl(scheme, false);
}

}  // namespace bratteli
