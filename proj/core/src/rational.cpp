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

#include "bratteli/rational.hpp"

#include "bratteli/error.hpp"

namespace bratteli {

namespace {

BigInt parse_digits(std::string_view digits, std::string_view text) {
  if (digits.empty()) throw Error("malformed rational '" + std::string(text) + "'");
  BigInt value = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw Error("malformed rational '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt den = parse_digits(body.substr(slash + 1), text);
    if (den == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    value = Rational(parse_digits(body.substr(0, slash), text), den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt w = whole.empty() ? BigInt(0) : parse_digits(whole, text);
    const BigInt f = frac.empty() ? BigInt(0) : parse_digits(frac, text);
    if (whole.empty() && frac.empty()) {
      throw Error("malformed rational '" + std::string(text) + "'");
    }
    value = Rational(w * scale + f, scale);
  } else {
    value = Rational(parse_digits(body, text));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace bratteli
