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
#include "bratteli/measures.hpp"
#include "json_util.hpp"

namespace bratteli {

namespace {
constexpr std::string_view kWhat = "weights";
}

std::string serialize_weights(const CentralWeights& weights) {
  std::ostringstream os;
  os << "{\n  \"version\": " << kWeightsFormatVersion << ",\n";
  std::visit(
      [&](const auto& w) {
        using Scalar = typename std::decay_t<decltype(w.masses)>::value_type::value_type;
        constexpr bool exact = std::is_same_v<Scalar, Rational>;
        os << "  \"mode\": \"" << (exact ? "rational" : "float") << "\",\n  \"levels\": [\n";
        for (std::size_t n = 0; n < w.masses.size(); ++n) {
          os << "    [";
          for (std::size_t v = 0; v < w.masses[n].size(); ++v) {
            if (v) os << ", ";
            if constexpr (exact) {
              os << '"' << to_string(w.masses[n][v]) << '"';
            } else {
              os << detail::Json(w.masses[n][v]).dump();
            }
          }
          os << (n + 1 < w.masses.size() ? "],\n" : "]\n");
        }
      },
      weights);
  os << "  ]\n}\n";
  return os.str();
}

CentralWeights deserialize_weights(std::string_view text) {
  using detail::Json;
  const Json doc = detail::parse_document(text, kWhat, kWeightsFormatVersion);
  const Json& mode = detail::require_field(doc, "mode", kWhat);
  if (mode != "rational" && mode != "float") {
    detail::schema_error(kWhat, "/mode", "expected \"rational\" or \"float\"");
  }
  const bool exact = mode == "rational";
  const Json& levels = detail::require_field(doc, "levels", kWhat);
  if (!levels.is_array()) detail::schema_error(kWhat, "/levels", "expected an array");

  ExactWeights exact_weights;
  FloatWeights float_weights;
  for (std::size_t n = 0; n < levels.size(); ++n) {
    const std::string path = "/levels/" + std::to_string(n);
    if (!levels[n].is_array()) detail::schema_error(kWhat, path, "expected an array");
    auto& xs = exact_weights.masses.emplace_back();
    auto& fs = float_weights.masses.emplace_back();
    for (std::size_t v = 0; v < levels[n].size(); ++v) {
      const Json& m = levels[n][v];
      const std::string vpath = path + "/" + std::to_string(v);
      if (exact) {
        if (!m.is_string()) detail::schema_error(kWhat, vpath, "expected a rational string");
        try {
          xs.push_back(parse_rational(m.get<std::string>()));
        } catch (const Error& e) {
          detail::schema_error(kWhat, vpath, e.what());
        }
      } else {
        if (!m.is_number()) detail::schema_error(kWhat, vpath, "expected a number");
        fs.push_back(m.get<double>());
      }
    }
  }
  if (exact) return exact_weights;
  return float_weights;
}

}  // namespace bratteli
