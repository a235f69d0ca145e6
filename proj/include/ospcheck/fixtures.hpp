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

#ifndef OSPCHECK_FIXTURES_HPP_
#define OSPCHECK_FIXTURES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ospcheck/rational.hpp"
#include "ospcheck/setting.hpp"
#include "ospcheck/valuation.hpp"

namespace osp {

// Valuation families of the lower-bound constructions.
enum class AdversarialFamily {
  kMuSingleMinded,  // multi-unit, unknown single-minded
  kCaSingleMinded,  // combinatorial, unknown single-minded
  kAdditive,
  kUnitDemand,
};

std::string ToString(AdversarialFamily family);
AdversarialFamily ParseAdversarialFamily(const std::string& text);
// Setting kind the family lives in.
AuctionKind KindOf(AdversarialFamily family);

// k = max{m, n}.
std::int64_t AdversarialScale(const AuctionSetting& setting);

// Positions inside the valuation lists of the two distinguished players.
// Single-minded families list {one, ONE, all}. Additive and unit-demand list
// {e-own one, e-own big, e-other big, both}, where "own" is e1 for the first
// distinguished player and e2 for the second.
namespace fixture_index {
inline constexpr int kOne = 0;
inline constexpr int kOneBig = 1;  // "ONE"
inline constexpr int kAll = 2;

inline constexpr int kOwnOne = 0;
inline constexpr int kOwnBig = 1;
inline constexpr int kOtherBig = 2;
inline constexpr int kBoth = 3;
}  // namespace fixture_index

// The valuation subsets used by the lower-bound proofs. `roles` lists the
// players in role order: roles[0] and roles[1] are the two distinguished
// bidders and the rest take roles 3..n. Empty means the identity. Role r
// (1-based) demands item e_min(r,m) in its "one" valuation.
//
// Throws if m < 2, n < 2, the setting kind does not match the family, or
// `roles` is not a permutation of the players.
Domain AdversarialDomain(const AuctionSetting& setting,
                         AdversarialFamily family,
                         std::vector<PlayerId> roles = {});

// Every additive valuation whose per-item values lie in {0, x_l, x_h}:
// 3^m valuations per player, item 0 most significant, values ordered
// 0 < x_l < x_h. Throws unless 0 < x_l < x_h and the setting is
// combinatorial.
Domain RestrictedAdditiveDomain(const Rational& low, const Rational& high,
                                const AuctionSetting& setting);

// Single-item domain {1, ..., K} per player (additive, m = 1).
Domain IntegerValueDomain(int players, int max_value);

}  // namespace osp

#endif  // OSPCHECK_FIXTURES_HPP_
