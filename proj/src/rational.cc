// Copyright 2026 The Ratimpl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ratimpl/rational.h"

#include <cctype>
#include <stdexcept>

namespace ratimpl {
namespace {

std::string Strip(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Integer ParseInteger(const std::string& text) {
  std::string t = Strip(text);
  if (t.empty()) throw std::invalid_argument("invalid rational: empty token");
  if (t[0] == '+') t.erase(0, 1);  // cpp_int rejects an explicit plus sign
  const size_t digits_from = (!t.empty() && t[0] == '-') ? 1 : 0;
  if (digits_from == t.size()) throw std::invalid_argument("invalid rational: " + text);
  for (size_t i = digits_from; i < t.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) {
      throw std::invalid_argument("invalid rational: " + text);
    }
  }
  return Integer(t);
}

}  // namespace

Rational ParseRational(const std::string& text) {
  const std::string t = Strip(text);
  const size_t slash = t.find('/');
  if (slash == std::string::npos) {
    return Rational(ParseInteger(t));
  }
  if (t.find('/', slash + 1) != std::string::npos) {
    throw std::invalid_argument("invalid rational: " + text);
  }
  Integer num = ParseInteger(t.substr(0, slash));
  Integer den = ParseInteger(t.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("invalid rational: zero denominator in " + text);
  return Rational(num, den);
}

std::string FormatRational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace ratimpl
