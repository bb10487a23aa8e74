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

#include "bratteli/adic.hpp"

#include <algorithm>
#include <charconv>

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

std::string describe(const PathPrefix& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.ranks.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.ranks[i]);
  }
  return s + "]@" + std::to_string(p.end);
}

// Decodes ranks downward from `end`. Returns false if some rank is out of
// range.
bool decode(const GradedGraph& graph, std::size_t end,
            std::span<const std::size_t> ranks, std::vector<std::size_t>* out) {
  const std::size_t len = ranks.size();
  if (len >= graph.num_levels() || end >= graph.level_size(len)) return false;
  if (out) out->assign(len + 1, 0);
  std::size_t v = end;
  for (std::size_t n = len; n > 0; --n) {
    if (out) (*out)[n] = v;
    const auto edges = graph.in_edges({n, v});
    if (ranks[n - 1] >= edges.size()) return false;
    v = edges[ranks[n - 1]];
  }
  if (out) (*out)[0] = v;
  return true;
}

}  // namespace

std::vector<std::size_t> vertex_sequence(const GradedGraph& graph,
                                         const PathPrefix& p) {
  std::vector<std::size_t> seq;
  if (!decode(graph, p.end, p.ranks, &seq)) {
    throw Error("invalid path " + describe(p));
  }
  return seq;
}

void require_path(const GradedGraph& graph, const PathPrefix& p) {
  if (!decode(graph, p.end, p.ranks, nullptr)) {
    throw Error("invalid path " + describe(p));
  }
}

VertexRef endpoint(const GradedGraph& graph, const PathPrefix& p) {
  require_path(graph, p);
  return {p.length(), p.end};
}

PathPrefix resolve_path(const GradedGraph& graph,
                        std::span<const std::size_t> ranks) {
  const std::size_t len = ranks.size();
  if (len >= graph.num_levels()) {
    throw Error("path of length " + std::to_string(len) +
                " exceeds graph depth");
  }
  std::optional<std::size_t> found;
  for (std::size_t v = 0; v < graph.level_size(len); ++v) {
    if (decode(graph, v, ranks, nullptr)) {
      if (found) {
        throw Error("ambiguous path: ranks fit vertices " +
                    std::to_string(*found) + " and " + std::to_string(v) +
                    " at level " + std::to_string(len));
      }
      found = v;
    }
  }
  if (!found) throw Error("no vertex accepts the given ranks");
  return PathPrefix{*found, {ranks.begin(), ranks.end()}};
}

std::strong_ordering compare(const GradedGraph& graph, const PathPrefix& p,
                             const PathPrefix& q) {
  require_path(graph, p);
  require_path(graph, q);
  if (p.length() != q.length() || p.end != q.end) {
    throw Error("compare: paths " + describe(p) + " and " + describe(q) +
                " have different endpoints");
  }
  for (std::size_t n = p.length(); n > 0; --n) {
    if (auto c = p.ranks[n - 1] <=> q.ranks[n - 1]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::vector<PathPrefix> enumerate_paths(const GradedGraph& graph,
                                        const VertexRef& v) {
  if (!graph.contains(v)) throw Error("invalid vertex " + to_string(v));
  std::vector<PathPrefix> paths;
  PathPrefix current{v.index, std::vector<std::size_t>(v.level, 0)};
  // Depth-first over all rank choices; the visiting order is irrelevant since
  // the result is sorted afterwards.
  auto walk = [&](auto&& self, std::size_t level, std::size_t vertex) -> void {
    if (level == 0) {
      paths.push_back(current);
      return;
    }
    const auto edges = graph.in_edges({level, vertex});
    for (std::size_t r = edges.size(); r-- > 0;) {
      current.ranks[level - 1] = r;
      self(self, level - 1, edges[r]);
    }
  };
  walk(walk, v.level, v.index);
  std::sort(paths.begin(), paths.end(),
            [&](const PathPrefix& a, const PathPrefix& b) {
              return compare(graph, a, b) < 0;
            });
  return paths;
}

PathPrefix minimal_path(const GradedGraph& graph, const VertexRef& v) {
  if (!graph.contains(v)) throw Error("invalid vertex " + to_string(v));
  return PathPrefix{v.index, std::vector<std::size_t>(v.level, 0)};
}

PathPrefix maximal_path(const GradedGraph& graph, const VertexRef& v) {
  if (!graph.contains(v)) throw Error("invalid vertex " + to_string(v));
  PathPrefix p{v.index, std::vector<std::size_t>(v.level, 0)};
  std::size_t u = v.index;
  for (std::size_t n = v.level; n > 0; --n) {
    const auto edges = graph.in_edges({n, u});
    p.ranks[n - 1] = edges.size() - 1;
    u = edges.back();
  }
  return p;
}

bool is_maximal(const GradedGraph& graph, const PathPrefix& p) {
  const auto seq = vertex_sequence(graph, p);
  for (std::size_t n = p.length(); n > 0; --n) {
    if (p.ranks[n - 1] + 1 != graph.in_degree({n, seq[n]})) return false;
  }
  return true;
}

bool is_minimal(const GradedGraph& graph, const PathPrefix& p) {
  require_path(graph, p);
  return std::all_of(p.ranks.begin(), p.ranks.end(),
                     [](std::size_t r) { return r == 0; });
}

std::optional<PathPrefix> successor(const GradedGraph& graph,
                                    const PathPrefix& p) {
  const auto seq = vertex_sequence(graph, p);
  // Lowest transition whose rank can still grow.
  for (std::size_t n = 1; n <= p.length(); ++n) {
    const auto edges = graph.in_edges({n, seq[n]});
    if (p.ranks[n - 1] + 1 < edges.size()) {
      PathPrefix q = p;
      ++q.ranks[n - 1];
      std::fill(q.ranks.begin(), q.ranks.begin() + (n - 1), 0);
      return q;
    }
  }
  return std::nullopt;
}

std::optional<PathPrefix> predecessor(const GradedGraph& graph,
                                      const PathPrefix& p) {
  const auto seq = vertex_sequence(graph, p);
  for (std::size_t n = 1; n <= p.length(); ++n) {
    if (p.ranks[n - 1] > 0) {
      PathPrefix q = p;
      --q.ranks[n - 1];
      // Refill the lower transitions with the maximal path to the new vertex.
      std::size_t u = graph.in_edges({n, seq[n]})[q.ranks[n - 1]];
      for (std::size_t m = n - 1; m > 0; --m) {
        const auto edges = graph.in_edges({m, u});
        q.ranks[m - 1] = edges.size() - 1;
        u = edges.back();
      }
      return q;
    }
  }
  return std::nullopt;
}

std::uint64_t rank(const GradedGraph& graph, const PathPrefix& p) {
  const auto seq = vertex_sequence(graph, p);
  std::uint64_t position = 0;
  for (std::size_t n = 1; n <= p.length(); ++n) {
    const auto edges = graph.in_edges({n, seq[n]});
    for (std::size_t r = 0; r < p.ranks[n - 1]; ++r) {
      position += graph.dim({n - 1, edges[r]});
    }
  }
  return position;
}

PathPrefix unrank(const GradedGraph& graph, const VertexRef& v,
                  std::uint64_t position) {
  if (position >= graph.dim(v)) {
    throw Error("unrank: position " + std::to_string(position) +
                " out of range for " + to_string(v));
  }
  PathPrefix p{v.index, std::vector<std::size_t>(v.level, 0)};
  std::size_t u = v.index;
  for (std::size_t n = v.level; n > 0; --n) {
    const auto edges = graph.in_edges({n, u});
    std::size_t r = 0;
    for (; r < edges.size(); ++r) {
      const std::uint64_t d = graph.dim({n - 1, edges[r]});
      if (position < d) break;
      position -= d;
    }
    p.ranks[n - 1] = r;
    u = edges[r];
  }
  return p;
}

PathPrefix truncate(const GradedGraph& graph, const PathPrefix& p,
                    std::size_t length) {
  const auto seq = vertex_sequence(graph, p);
  if (length > p.length()) {
    throw Error("truncate: length " + std::to_string(length) +
                " exceeds path length " + std::to_string(p.length()));
  }
  return PathPrefix{seq[length],
                    {p.ranks.begin(), p.ranks.begin() + length}};
}

std::string format_path(const GradedGraph& graph, const PathPrefix& p) {
  require_path(graph, p);
  std::string s;
  for (std::size_t i = 0; i < p.ranks.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.ranks[i]);
  }
  if (graph.level_size(p.length()) > 1) s += "@" + std::to_string(p.end);
  return s;
}

namespace {

std::size_t parse_number(std::string_view token, std::string_view text) {
  std::size_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc{} || ptr != last) {
    throw Error("malformed path '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

PathPrefix parse_path(const GradedGraph& graph, std::string_view text) {
  std::string_view ranks_text = text;
  std::optional<std::size_t> end;
  if (auto at = text.find('@'); at != std::string_view::npos) {
    ranks_text = text.substr(0, at);
    end = parse_number(text.substr(at + 1), text);
  }
  std::vector<std::size_t> ranks;
  while (!ranks_text.empty()) {
    const auto comma = ranks_text.find(',');
    ranks.push_back(parse_number(ranks_text.substr(0, comma), text));
    if (comma == std::string_view::npos) break;
    ranks_text.remove_prefix(comma + 1);
    if (ranks_text.empty()) throw Error("malformed path '" + std::string(text) + "'");
  }
  if (!end) return resolve_path(graph, ranks);
  PathPrefix p{*end, std::move(ranks)};
  require_path(graph, p);
  return p;
}

}  // namespace bratteli
