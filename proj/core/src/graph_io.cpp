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

#include <sstream>

#include "bratteli/error.hpp"
#include "bratteli/graph.hpp"
#include "json_util.hpp"

namespace bratteli {

namespace {
constexpr std::string_view kWhat = "graph";
}

std::string serialize(const GradedGraph& graph) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kGraphFormatVersion
     << ",\n  \"num_levels\": " << graph.num_levels() << ",\n  \"levels\": [\n";
  for (std::size_t n = 0; n < graph.num_levels(); ++n) {
    os << "    [";
    for (std::size_t w = 0; w < graph.level_size(n); ++w) {
      if (w) os << ", ";
      os << '[';
      const auto edges = graph.in_edges({n, w});
      for (std::size_t r = 0; r < edges.size(); ++r) {
        if (r) os << ',';
        os << edges[r];
      }
      os << ']';
    }
    os << (n + 1 < graph.num_levels() ? "],\n" : "]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

LevelList deserialize_levels(std::string_view text) {
  using detail::Json;
  const Json doc = detail::parse_document(text, kWhat, kGraphFormatVersion);
  const Json& levels_json = detail::require_field(doc, "levels", kWhat);
  if (!levels_json.is_array()) {
    detail::schema_error(kWhat, "/levels", "expected an array of levels");
  }
  if (auto it = doc.find("num_levels"); it != doc.end()) {
    if (detail::as_index(*it, kWhat, "/num_levels") != levels_json.size()) {
      detail::schema_error(kWhat, "/num_levels",
                           "does not match the number of listed levels");
    }
  }
  LevelList levels;
  levels.reserve(levels_json.size());
  for (std::size_t n = 0; n < levels_json.size(); ++n) {
    const std::string level_path = "/levels/" + std::to_string(n);
    const Json& level_json = levels_json[n];
    if (!level_json.is_array()) {
      detail::schema_error(kWhat, level_path, "expected an array of vertices");
    }
    LevelSpec level;
    for (std::size_t w = 0; w < level_json.size(); ++w) {
      const std::string vertex_path = level_path + "/" + std::to_string(w);
      const Json& vertex_json = level_json[w];
      if (!vertex_json.is_array()) {
        detail::schema_error(kWhat, vertex_path,
                             "expected an array of source indices");
      }
      InEdges edges;
      for (std::size_t r = 0; r < vertex_json.size(); ++r) {
        edges.push_back(detail::as_index(vertex_json[r], kWhat,
                                         vertex_path + "/" + std::to_string(r)));
      }
      level.push_back(std::move(edges));
    }
    levels.push_back(std::move(level));
  }
  return levels;
}

GradedGraph deserialize(std::string_view text) {
  LevelList levels = deserialize_levels(text);
  if (auto diags = validate(levels); !diags.empty()) {
    std::string msg = "graph: structure violates invariants:";
    for (const auto& d : diags) msg += "\n  " + d.message;
    throw ParseError(msg, 0, 0);
  }
  return GradedGraph(std::move(levels));
}

}  // namespace bratteli
