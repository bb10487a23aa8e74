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
#include "bratteli/uniadic.hpp"
#include "json_util.hpp"

namespace bratteli {

namespace {
constexpr std::string_view kWhat = "embedding";

void write_index_list(std::ostream& os, std::span<const std::size_t> values) {
  os << '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  os << ']';
}

}  // namespace

std::string serialize_embedding(const EmbeddingResult& result) {
  const GradedGraph& g = result.layered;
  std::ostringstream os;
  os << "{\n  \"version\": " << kEmbeddingFormatVersion << ",\n  \"schedule\": ";
  write_index_list(os, result.schedule);
  os << ",\n  \"layers\": [\n";
  for (std::size_t l = 0; l < g.num_levels(); ++l) {
    os << "    [";
    for (std::size_t v = 0; v < g.level_size(l); ++v) {
      if (v) os << ", ";
      write_index_list(os, g.in_edges({l, v}));
    }
    os << (l + 1 < g.num_levels() ? "],\n" : "]\n");
  }
  os << "  ],\n  \"terms\": [\n";
  for (std::size_t l = 0; l < result.terms.size(); ++l) {
    os << "    [";
    for (std::size_t v = 0; v < result.terms[l].size(); ++v) {
      if (v) os << ", ";
      const auto& node = result.pool.node(result.terms[l][v]);
      switch (node.kind) {
        case UAKind::kRoot:
          os << "\"root\"";
          break;
        case UAKind::kPair: {
          const auto parents = g.in_edges({l, v});
          os << "{\"pair\":[" << parents[0] << ',' << parents[1] << "]}";
          break;
        }
        case UAKind::kCopy:
          os << "{\"copy\":" << g.in_edges({l, v})[0] << '}';
          break;
      }
    }
    os << (l + 1 < result.terms.size() ? "],\n" : "]\n");
  }
  os << "  ],\n  \"vertex_map\": [\n";
  for (std::size_t n = 0; n < result.vertex_map.size(); ++n) {
    os << "    [";
    for (std::size_t i = 0; i < result.vertex_map[n].size(); ++i) {
      if (i) os << ", ";
      os << detail::Json(result.pool.to_string(result.vertex_map[n][i])).dump();
    }
    os << (n + 1 < result.vertex_map.size() ? "],\n" : "]\n");
  }
  os << "  ]\n}\n";
  return os.str();
}

EmbeddingResult deserialize_embedding(std::string_view text) {
  using detail::Json;
  const Json doc = detail::parse_document(text, kWhat, kEmbeddingFormatVersion);
  EmbeddingResult result;

  const Json& schedule = detail::require_field(doc, "schedule", kWhat);
  if (!schedule.is_array()) detail::schema_error(kWhat, "/schedule", "expected an array");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    result.schedule.push_back(
        detail::as_index(schedule[i], kWhat, "/schedule/" + std::to_string(i)));
  }

  const Json& layers = detail::require_field(doc, "layers", kWhat);
  if (!layers.is_array()) detail::schema_error(kWhat, "/layers", "expected an array");
  LevelList levels;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::string path = "/layers/" + std::to_string(l);
    if (!layers[l].is_array()) detail::schema_error(kWhat, path, "expected an array");
    LevelSpec level;
    for (std::size_t v = 0; v < layers[l].size(); ++v) {
      const Json& edges = layers[l][v];
      const std::string vpath = path + "/" + std::to_string(v);
      if (!edges.is_array()) detail::schema_error(kWhat, vpath, "expected an array");
      InEdges in;
      for (std::size_t r = 0; r < edges.size(); ++r) {
        in.push_back(detail::as_index(edges[r], kWhat, vpath + "/" + std::to_string(r)));
      }
      level.push_back(std::move(in));
    }
    levels.push_back(std::move(level));
  }
  if (auto diags = validate(levels); !diags.empty()) {
    throw ParseError("embedding: layered graph invalid: " + diags.front().message, 0, 0);
  }
  result.layered = GradedGraph(std::move(levels));

  const Json& terms = detail::require_field(doc, "terms", kWhat);
  if (!terms.is_array() || terms.size() != result.layered.num_levels()) {
    detail::schema_error(kWhat, "/terms", "expected one array per layer");
  }
  for (std::size_t l = 0; l < terms.size(); ++l) {
    const std::string path = "/terms/" + std::to_string(l);
    if (!terms[l].is_array() || terms[l].size() != result.layered.level_size(l)) {
      detail::schema_error(kWhat, path, "expected one term per layer vertex");
    }
    std::vector<UATermPool::Id> level;
    for (std::size_t v = 0; v < terms[l].size(); ++v) {
      const Json& t = terms[l][v];
      const std::string vpath = path + "/" + std::to_string(v);
      auto parent = [&](const Json& j, const std::string& p) {
        const std::size_t i = detail::as_index(j, kWhat, p);
        if (l == 0 || i >= result.terms[l - 1].size()) {
          detail::schema_error(kWhat, p, "parent index out of range");
        }
        return result.terms[l - 1][i];
      };
      if (t == "root") {
        level.push_back(result.pool.root());
      } else if (t.is_object() && t.contains("pair") && t["pair"].is_array() &&
                 t["pair"].size() == 2) {
        level.push_back(result.pool.pair(parent(t["pair"][0], vpath + "/pair/0"),
                                         parent(t["pair"][1], vpath + "/pair/1")));
      } else if (t.is_object() && t.contains("copy")) {
        level.push_back(result.pool.copy(parent(t["copy"], vpath + "/copy")));
      } else {
        detail::schema_error(kWhat, vpath, "expected \"root\", {\"pair\":[i,j]} or {\"copy\":i}");
      }
    }
    result.terms.push_back(std::move(level));
  }

  const Json& vmap = detail::require_field(doc, "vertex_map", kWhat);
  if (!vmap.is_array()) detail::schema_error(kWhat, "/vertex_map", "expected an array");
  for (std::size_t n = 0; n < vmap.size(); ++n) {
    const std::string path = "/vertex_map/" + std::to_string(n);
    if (!vmap[n].is_array()) detail::schema_error(kWhat, path, "expected an array");
    std::vector<UATermPool::Id> level;
    for (std::size_t i = 0; i < vmap[n].size(); ++i) {
      if (!vmap[n][i].is_string()) {
        detail::schema_error(kWhat, path + "/" + std::to_string(i), "expected a term string");
      }
      try {
        level.push_back(result.pool.parse(vmap[n][i].get<std::string>()));
      } catch (const Error& e) {
        detail::schema_error(kWhat, path + "/" + std::to_string(i), e.what());
      }
    }
    result.vertex_map.push_back(std::move(level));
  }
  return result;
}

}  // namespace bratteli
