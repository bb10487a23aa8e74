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

#include "bratteli/uniadic.hpp"

#include <map>
#include <set>
#include <unordered_set>

#include "bratteli/error.hpp"

namespace bratteli {

// ---------------------------------------------------------------------------
// Terms

UATermPool::UATermPool() { nodes_.push_back(Node{UAKind::kRoot, 0, 0, 0}); }

UATermPool::Id UATermPool::intern(UAKind kind, Id left, Id right,
                                  std::size_t level) {
  if (nodes_.size() >= UINT32_MAX) throw Error("UA term pool exhausted");
  const Id id = static_cast<Id>(nodes_.size());
  nodes_.push_back(Node{kind, left, right, level});
  return id;
}

UATermPool::Id UATermPool::pair(Id left, Id right) {
  const std::size_t level = node(left).level;
  if (node(right).level != level) {
    throw Error("UA pair of terms on different levels");
  }
  const std::uint64_t key = (std::uint64_t{left} << 32) | right;
  if (auto it = pairs_.find(key); it != pairs_.end()) return it->second;
  const Id id = intern(UAKind::kPair, left, right, level + 1);
  pairs_.emplace(key, id);
  return id;
}

UATermPool::Id UATermPool::copy(Id inner) {
  const std::size_t level = node(inner).level;
  if (auto it = copies_.find(inner); it != copies_.end()) return it->second;
  const Id id = intern(UAKind::kCopy, inner, inner, level + 1);
  copies_.emplace(inner, id);
  return id;
}

const UATermPool::Node& UATermPool::node(Id id) const {
  if (id >= nodes_.size()) throw Error("unknown UA term id " + std::to_string(id));
  return nodes_[id];
}

std::string UATermPool::to_string(Id id, std::size_t max_length) const {
  std::string out;
  auto emit = [&](auto&& self, Id t) -> void {
    if (out.size() > max_length) {
      throw Error("UA term text exceeds " + std::to_string(max_length) + " bytes");
    }
    const Node& n = node(t);
    switch (n.kind) {
      case UAKind::kRoot:
        out += 'R';
        break;
      case UAKind::kPair:
        out += "P(";
        self(self, n.left);
        out += ',';
        self(self, n.right);
        out += ')';
        break;
      case UAKind::kCopy:
        out += "C(";
        self(self, n.left);
        out += ')';
        break;
    }
  };
  emit(emit, id);
  return out;
}

UATermPool::Id UATermPool::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&]() -> Error {
    return Error("malformed UA term at offset " + std::to_string(pos) + ": '" +
                 std::string(text) + "'");
  };
  auto expect = [&](char c) {
    if (pos >= text.size() || text[pos] != c) throw fail();
    ++pos;
  };
  auto term = [&](auto&& self) -> Id {
    if (pos >= text.size()) throw fail();
    const char c = text[pos++];
    if (c == 'R') return root();
    expect('(');
    const Id left = self(self);
    if (c == 'P') {
      expect(',');
      const Id right = self(self);
      expect(')');
      return pair(left, right);
    }
    if (c == 'C') {
      expect(')');
      return copy(left);
    }
    --pos;
    throw fail();
  };
  const Id id = term(term);
  if (pos != text.size()) throw fail();
  return id;
}

std::vector<std::optional<std::uint64_t>> ua_level_sizes(std::size_t depth) {
  std::vector<std::optional<std::uint64_t>> sizes{std::uint64_t{1}};
  for (std::size_t n = 0; n < depth; ++n) {
    const auto prev = sizes.back();
    std::uint64_t square = 0;
    std::uint64_t next = 0;
    if (prev && !__builtin_mul_overflow(*prev, *prev, &square) &&
        !__builtin_add_overflow(square, *prev, &next)) {
      sizes.push_back(next);
    } else {
      sizes.push_back(std::nullopt);
    }
  }
  return sizes;
}

std::optional<std::uint64_t> ua_index(const UATermPool& pool,
                                      UATermPool::Id id) {
  const auto& n = pool.node(id);
  if (n.kind == UAKind::kRoot) return 0;
  const auto sizes = ua_level_sizes(n.level);
  const auto below = sizes[n.level - 1];
  if (!below || !sizes[n.level]) return std::nullopt;
  const auto left = ua_index(pool, n.left);
  if (!left) return std::nullopt;
  if (n.kind == UAKind::kCopy) return *below * *below + *left;
  const auto right = ua_index(pool, n.right);
  if (!right) return std::nullopt;
  return *left * *below + *right;
}

UniadicGraph ua_graph(std::size_t depth, std::size_t max_vertices) {
  const auto sizes = ua_level_sizes(depth);
  std::uint64_t total = 0;
  for (const auto& s : sizes) {
    if (!s || __builtin_add_overflow(total, *s, &total) || total > max_vertices) {
      throw Error("uniadic graph of depth " + std::to_string(depth) +
                  " exceeds the guard of " + std::to_string(max_vertices) +
                  " vertices");
    }
  }
  UniadicGraph ua;
  LevelList levels{LevelSpec{InEdges{}}};
  ua.terms.push_back({ua.pool.root()});
  for (std::size_t n = 0; n < depth; ++n) {
    const std::size_t below = levels[n].size();
    LevelSpec level;
    std::vector<UATermPool::Id> terms;
    level.reserve(below * below + below);
    terms.reserve(below * below + below);
    for (std::size_t u = 0; u < below; ++u) {
      for (std::size_t v = 0; v < below; ++v) {
        level.push_back({u, v});
        terms.push_back(ua.pool.pair(ua.terms[n][u], ua.terms[n][v]));
      }
    }
    for (std::size_t u = 0; u < below; ++u) {
      level.push_back({u});
      terms.push_back(ua.pool.copy(ua.terms[n][u]));
    }
    levels.push_back(std::move(level));
    ua.terms.push_back(std::move(terms));
  }
  ua.graph = GradedGraph(std::move(levels));
  return ua;
}

// ---------------------------------------------------------------------------
// Thinning

namespace {

void check_fragment(std::size_t top_size, const LevelSpec& bottom) {
  for (std::size_t w = 0; w < bottom.size(); ++w) {
    if (bottom[w].empty()) {
      throw Error("fragment: bottom vertex " + std::to_string(w) +
                  " has no in-edges");
    }
    for (std::size_t src : bottom[w]) {
      if (src >= top_size) {
        throw Error("fragment: bottom vertex " + std::to_string(w) +
                    " has source " + std::to_string(src) + " outside the top");
      }
    }
  }
}

class StackBuilder {
 public:
  StackBuilder(std::size_t top_size, LevelSpec bottom)
      : top_size_(top_size), bottom_(std::move(bottom)) {}

  const LevelSpec& bottom() const { return bottom_; }

  // Inserts one layer: copies of the top vertices still referenced, then the
  // pair of w's first two parents. w is rewired to [pair, copies of the rest].
  void pair_step(std::size_t w) {
    const InEdges parents = bottom_[w];
    std::vector<bool> used(top_size_, false);
    for (std::size_t i = 0; i < bottom_.size(); ++i) {
      for (std::size_t j = (i == w ? 2 : 0); j < bottom_[i].size(); ++j) {
        used[bottom_[i][j]] = true;
      }
    }
    LevelSpec layer;
    std::vector<std::size_t> copy_of(top_size_, SIZE_MAX);
    for (std::size_t t = 0; t < top_size_; ++t) {
      if (used[t]) {
        copy_of[t] = layer.size();
        layer.push_back({t});
      }
    }
    const std::size_t pair = layer.size();
    layer.push_back({parents[0], parents[1]});
    for (std::size_t i = 0; i < bottom_.size(); ++i) {
      InEdges rewired;
      if (i == w) {
        rewired.push_back(pair);
        for (std::size_t j = 2; j < parents.size(); ++j) {
          rewired.push_back(copy_of[parents[j]]);
        }
      } else {
        for (std::size_t src : bottom_[i]) rewired.push_back(copy_of[src]);
      }
      bottom_[i] = std::move(rewired);
    }
    top_size_ = layer.size();
    layers_.push_back(std::move(layer));
  }

  LayerStack finish() && {
    return LayerStack{std::move(layers_), std::move(bottom_)};
  }

 private:
  std::size_t top_size_;
  LevelSpec bottom_;
  std::vector<LevelSpec> layers_;
};

}  // namespace

LayerStack deduplicate_ancestry(const BipartiteFragment& fragment) {
  check_fragment(fragment.top_size, fragment.bottom);
  std::map<InEdges, std::size_t> first_seen;
  std::vector<std::size_t> duplicates;
  for (std::size_t w = 0; w < fragment.bottom.size(); ++w) {
    auto [it, inserted] = first_seen.emplace(fragment.bottom[w], w);
    if (inserted) continue;
    if (fragment.bottom[w].size() < 2) {
      throw Error("cannot separate bottom vertices " + std::to_string(it->second) +
                  " and " + std::to_string(w) +
                  ": identical single-parent ancestry");
    }
    duplicates.push_back(w);
  }
  StackBuilder builder(fragment.top_size, fragment.bottom);
  for (std::size_t w : duplicates) builder.pair_step(w);
  return std::move(builder).finish();
}

LayerStack thin_bipartite(std::size_t top_size, const LevelSpec& bottom_in_edges) {
  check_fragment(top_size, bottom_in_edges);
  StackBuilder builder(top_size, bottom_in_edges);
  for (;;) {
    const auto& bottom = builder.bottom();
    std::size_t w = 0;
    while (w < bottom.size() && bottom[w].size() <= 2) ++w;
    if (w == bottom.size()) break;
    builder.pair_step(w);
  }
  return std::move(builder).finish();
}

LayerStack append_stack(LayerStack first, const LayerStack& second) {
  first.layers.insert(first.layers.end(), second.layers.begin(),
                      second.layers.end());
  first.bottom = second.bottom;
  return first;
}

// ---------------------------------------------------------------------------
// Embedding

namespace {

std::vector<std::vector<UATermPool::Id>> assign_terms(const GradedGraph& layered,
                                                      UATermPool& pool) {
  std::vector<std::vector<UATermPool::Id>> terms{{pool.root()}};
  for (std::size_t l = 1; l < layered.num_levels(); ++l) {
    std::vector<UATermPool::Id> level;
    for (std::size_t v = 0; v < layered.level_size(l); ++v) {
      const auto parents = layered.in_edges({l, v});
      if (parents.size() == 2) {
        level.push_back(pool.pair(terms[l - 1][parents[0]], terms[l - 1][parents[1]]));
      } else if (parents.size() == 1) {
        level.push_back(pool.copy(terms[l - 1][parents[0]]));
      } else {
        throw Error("layer vertex " + to_string(VertexRef{l, v}) + " has in-degree " +
                    std::to_string(parents.size()));
      }
    }
    terms.push_back(std::move(level));
  }
  return terms;
}

}  // namespace

EmbeddingResult embed(const GradedGraph& graph) {
  for (std::size_t n = 1; n < graph.num_levels(); ++n) {
    for (std::size_t w = 0; w < graph.level_size(n); ++w) {
      if (graph.in_degree({n, w}) < 2) {
        throw Error("embed: vertex " + to_string(VertexRef{n, w}) +
                    " has fewer than two in-edges");
      }
    }
  }
  LevelList levels{LevelSpec{InEdges{}}};
  EmbeddingResult result;
  result.schedule.push_back(0);
  for (std::size_t n = 0; n + 1 < graph.num_levels(); ++n) {
    const BipartiteFragment fragment{graph.level_size(n), graph.levels()[n + 1]};
    LayerStack dedup = deduplicate_ancestry(fragment);
    const std::size_t top = dedup.layers.empty() ? fragment.top_size
                                                 : dedup.layers.back().size();
    const LayerStack thin = thin_bipartite(top, dedup.bottom);
    LayerStack stack = append_stack(std::move(dedup), thin);
    for (auto& layer : stack.layers) levels.push_back(std::move(layer));
    levels.push_back(std::move(stack.bottom));
    result.schedule.push_back(levels.size() - 1);
  }
  result.layered = GradedGraph(std::move(levels));
  result.terms = assign_terms(result.layered, result.pool);
  for (std::size_t l = 0; l < result.terms.size(); ++l) {
    std::unordered_set<UATermPool::Id> seen;
    for (std::size_t v = 0; v < result.terms[l].size(); ++v) {
      if (!seen.insert(result.terms[l][v]).second) {
        throw Error("embed: layer " + std::to_string(l) +
                    " maps two vertices to one UA vertex");
      }
    }
  }
  for (std::size_t s : result.schedule) result.vertex_map.push_back(result.terms[s]);
  return result;
}

VerificationReport verify_embedding(const GradedGraph& graph,
                                    const EmbeddingResult& result) {
  VerificationReport report;
  auto fail = [&](std::string msg) {
    report.ok = false;
    report.problems.push_back(std::move(msg));
  };
  const GradedGraph& layered = result.layered;
  const auto& schedule = result.schedule;

  if (schedule.size() != graph.num_levels() || schedule.empty() ||
      schedule.front() != 0 || schedule.back() + 1 != layered.num_levels()) {
    fail("telescoping schedule does not span the layered graph level for level");
    return report;
  }
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (schedule[i] <= schedule[i - 1]) {
      fail("telescoping schedule is not strictly increasing");
      return report;
    }
  }
  bool shape_ok = result.terms.size() == layered.num_levels();
  for (std::size_t l = 0; shape_ok && l < layered.num_levels(); ++l) {
    shape_ok = result.terms[l].size() == layered.level_size(l);
  }
  if (!shape_ok) {
    fail("UA term table does not match the layered graph");
    return report;
  }

  // (a) thinning degrees
  for (std::size_t l = 1; l < layered.num_levels(); ++l) {
    for (std::size_t v = 0; v < layered.level_size(l); ++v) {
      const std::size_t d = layered.in_degree({l, v});
      if (d != 1 && d != 2) {
        fail("layer vertex " + to_string(VertexRef{l, v}) + " has in-degree " +
             std::to_string(d));
      }
    }
  }

  // (b) UA structure and injectivity
  UATermPool pool = result.pool;
  try {
    if (result.terms[0][0] != pool.root()) fail("root is not mapped to the UA root");
    for (std::size_t l = 1; l < layered.num_levels(); ++l) {
      for (std::size_t v = 0; v < layered.level_size(l); ++v) {
        const auto parents = layered.in_edges({l, v});
        UATermPool::Id expected = 0;
        if (parents.size() == 2) {
          expected = pool.pair(result.terms[l - 1][parents[0]],
                               result.terms[l - 1][parents[1]]);
        } else if (parents.size() == 1) {
          expected = pool.copy(result.terms[l - 1][parents[0]]);
        } else {
          continue;
        }
        if (expected != result.terms[l][v]) {
          fail("layer vertex " + to_string(VertexRef{l, v}) +
               " is not mapped to the UA vertex its parents determine");
        }
      }
    }
  } catch (const Error& e) {
    fail(std::string("UA term check failed: ") + e.what());
  }
  for (std::size_t l = 0; l < layered.num_levels(); ++l) {
    std::map<UATermPool::Id, std::size_t> seen;
    for (std::size_t v = 0; v < layered.level_size(l); ++v) {
      auto [it, inserted] = seen.emplace(result.terms[l][v], v);
      if (!inserted) {
        fail("layer " + std::to_string(l) + ": vertices " +
             std::to_string(it->second) + " and " + std::to_string(v) +
             " share a UA vertex");
      }
    }
  }
  if (result.vertex_map.size() != graph.num_levels()) {
    fail("vertex map does not cover every level");
  } else {
    for (std::size_t n = 0; n < graph.num_levels(); ++n) {
      if (result.vertex_map[n] != result.terms[schedule[n]]) {
        fail("vertex map of level " + std::to_string(n) +
             " disagrees with the layer terms");
      }
    }
  }

  // (c) telescoping recovers the graph, order included
  try {
    const GradedGraph back = telescope(layered, schedule);
    for (std::size_t n = 0; n < graph.num_levels(); ++n) {
      if (back.level_size(n) != graph.level_size(n)) {
        fail("telescoped level " + std::to_string(n) + " has " +
             std::to_string(back.level_size(n)) + " vertices, expected " +
             std::to_string(graph.level_size(n)));
        continue;
      }
      for (std::size_t w = 0; w < graph.level_size(n); ++w) {
        const auto a = back.in_edges({n, w});
        const auto b = graph.in_edges({n, w});
        if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
          fail("telescoped vertex " + to_string(VertexRef{n, w}) +
               " has in-edges differing from the input");
        }
      }
    }
  } catch (const Error& e) {
    fail(std::string("telescoping failed: ") + e.what());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Path correspondence

namespace {

// counts[l][v] = number of paths from the schedule level at or below l up to
// (l, v), restarting at every scheduled level.
std::vector<std::vector<std::uint64_t>> segment_counts(const EmbeddingResult& r) {
  const GradedGraph& g = r.layered;
  std::vector<bool> scheduled(g.num_levels(), false);
  for (std::size_t s : r.schedule) scheduled[s] = true;
  std::vector<std::vector<std::uint64_t>> counts(g.num_levels());
  for (std::size_t l = 0; l < g.num_levels(); ++l) {
    counts[l].assign(g.level_size(l), 1);
    if (l == 0) continue;
    for (std::size_t v = 0; v < g.level_size(l); ++v) {
      std::uint64_t total = 0;
      for (std::size_t src : g.in_edges({l, v})) {
        total += scheduled[l - 1] ? 1 : counts[l - 1][src];
      }
      counts[l][v] = total;
    }
  }
  return counts;
}

std::uint64_t weight_below(const std::vector<std::vector<std::uint64_t>>& counts,
                           const std::vector<bool>& scheduled, std::size_t l,
                           std::size_t src) {
  return scheduled[l - 1] ? 1 : counts[l - 1][src];
}

}  // namespace

PathPrefix lift_path(const GradedGraph& graph, const EmbeddingResult& result,
                     const PathPrefix& p) {
  const auto seq = vertex_sequence(graph, p);
  const GradedGraph& g = result.layered;
  const auto counts = segment_counts(result);
  std::vector<bool> scheduled(g.num_levels(), false);
  for (std::size_t s : result.schedule) scheduled[s] = true;

  PathPrefix q{p.end, std::vector<std::size_t>(result.schedule[p.length()], 0)};
  for (std::size_t n = p.length(); n > 0; --n) {
    std::uint64_t local = p.ranks[n - 1];
    std::size_t u = seq[n];
    for (std::size_t l = result.schedule[n]; l > result.schedule[n - 1]; --l) {
      const auto edges = g.in_edges({l, u});
      std::size_t r = 0;
      for (; r < edges.size(); ++r) {
        const std::uint64_t c = weight_below(counts, scheduled, l, edges[r]);
        if (local < c) break;
        local -= c;
      }
      if (r == edges.size()) throw Error("lift_path: rank exceeds segment count");
      q.ranks[l - 1] = r;
      u = edges[r];
    }
    if (u != seq[n - 1]) throw Error("lift_path: segment lands on the wrong vertex");
  }
  return q;
}

PathPrefix project_path(const EmbeddingResult& result, const PathPrefix& q) {
  const GradedGraph& g = result.layered;
  const auto seq = vertex_sequence(g, q);
  std::size_t length = 0;
  while (length < result.schedule.size() && result.schedule[length] < q.length()) {
    ++length;
  }
  if (length >= result.schedule.size() || result.schedule[length] != q.length()) {
    throw Error("project_path: path does not end on an original level");
  }
  const auto counts = segment_counts(result);
  std::vector<bool> scheduled(g.num_levels(), false);
  for (std::size_t s : result.schedule) scheduled[s] = true;

  PathPrefix p{q.end, std::vector<std::size_t>(length, 0)};
  for (std::size_t n = 1; n <= length; ++n) {
    std::uint64_t local = 0;
    for (std::size_t l = result.schedule[n - 1] + 1; l <= result.schedule[n]; ++l) {
      const auto edges = g.in_edges({l, seq[l]});
      for (std::size_t r = 0; r < q.ranks[l - 1]; ++r) {
        local += weight_below(counts, scheduled, l, edges[r]);
      }
    }
    p.ranks[n - 1] = static_cast<std::size_t>(local);
  }
  return p;
}

}  // namespace bratteli
