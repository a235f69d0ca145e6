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

#ifndef OSPCHECK_RATIONAL_HPP_
#define OSPCHECK_RATIONAL_HPP_

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Under C++20 rewritten comparisons, boost::rational's templated
// rational == integer operators can select each other and recurse forever.
// Exact non-template overloads win overload resolution and stop that.
namespace boost {
#define OSPCHECK_RATIONAL_EQ(Int)                                          \
  inline bool operator==(const rational<std::int64_t>& a, Int b) {         \
    return a.denominator() == 1 && a.numerator() == b;                     \
  }                                                                        \
  inline bool operator==(Int b, const rational<std::int64_t>& a) {         \
    return a == b;                                                         \
  }                                                                        \
  inline bool operator!=(const rational<std::int64_t>& a, Int b) {         \
    return !(a == b);                                                      \
  }                                                                        \
  inline bool operator!=(Int b, const rational<std::int64_t>& a) {         \
    return !(a == b);                                                      \
  }
OSPCHECK_RATIONAL_EQ(int)
OSPCHECK_RATIONAL_EQ(long)
OSPCHECK_RATIONAL_EQ(long long)
#undef OSPCHECK_RATIONAL_EQ
}  // namespace boost

namespace osp {

// Exact rational number in canonical reduced form with a positive
// denominator. Values and payments in this toolkit are small grid values,
// so 64-bit components are ample.
using Rational = boost::rational<std::int64_t>;

// Parses "p/q" or "p" (optional leading '-'). Throws std::invalid_argument on
// malformed input or a zero denominator.
Rational ParseRational(std::string_view text);

// Always renders "p/q", e.g. "2/1", "-1/3".
std::string ToString(const Rational& r);

inline Rational Int(std::int64_t v) { return Rational(v); }

}  // namespace osp

#endif  // OSPCHECK_RATIONAL_HPP_
