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

// Helpers shared by the text-format readers and writers. Private to the core
// library.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "bratteli/error.hpp"
#include "json.hpp"

namespace bratteli::detail {

using Json = nlohmann::json;

inline void line_column(std::string_view text, std::size_t offset,
                        std::size_t& line, std::size_t& column) {
  line = 1;
  column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
}

// Parses a JSON document and checks the `version` field against `version`.
inline Json parse_document(std::string_view text, std::string_view what,
                           int version) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw ParseError(std::string(what) + ": empty document", 1, 1);
  }
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 0;
    std::size_t column = 0;
    line_column(text, e.byte == 0 ? 0 : e.byte - 1, line, column);
    throw ParseError(std::string(what) + ": syntax error at line " +
                         std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
  if (!doc.is_object()) {
    throw ParseError(std::string(what) + ": top level must be an object", 1, 1);
  }
  auto it = doc.find("version");
  if (it == doc.end() || !it->is_number_integer()) {
    throw ParseError(std::string(what) + ": missing integer field 'version'",
                     0, 0);
  }
  if (it->get<int>() != version) {
    throw ParseError(std::string(what) + ": unsupported version " +
                         std::to_string(it->get<int>()) + " (expected " +
                         std::to_string(version) + ")",
                     0, 0);
  }
  return doc;
}

[[noreturn]] inline void schema_error(std::string_view what,
                                      const std::string& path,
                                      std::string_view message) {
  throw ParseError(std::string(what) + ": " + path + ": " + std::string(message),
                   0, 0);
}

inline const Json& require_field(const Json& obj, const char* name,
                                 std::string_view what) {
  auto it = obj.find(name);
  if (it == obj.end()) {
    schema_error(what, "/", std::string("missing field '") + name + "'");
  }
  return *it;
}

inline std::size_t as_index(const Json& value, std::string_view what,
                            const std::string& path) {
  if (!value.is_number_unsigned() && !(value.is_number_integer() &&
                                       value.get<long long>() >= 0)) {
    schema_error(what, path, "expected a non-negative integer");
  }
  return value.get<std::size_t>();
}

}  // namespace bratteli::detail
