// Copyright 2026 The ospcheck Authors
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

#include "ospcheck/rational.hpp"

#include <charconv>
#include <stdexcept>

namespace osp {
namespace {

std::int64_t ParseInt(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end) {
    throw std::invalid_argument("malformed rational \"" + std::string(whole) +
                                "\"");
  }
  return value;
}

}  // namespace

Rational ParseRational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(ParseInt(text, text));
  std::int64_t num = ParseInt(text.substr(0, slash), text);
  std::int64_t den = ParseInt(text.substr(slash + 1), text);
  if (den == 0) {
    throw std::invalid_argument("zero denominator in \"" + std::string(text) +
                                "\"");
  }
  return Rational(num, den);
}

std::string ToString(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace osp
