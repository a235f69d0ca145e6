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


#ifndef OSPCHECK_MECHANISMS_HPP_
#define OSPCHECK_MECHANISMS_HPP_

#include "ospcheck/behavior.hpp"
#include "ospcheck/rational.hpp"
#include "ospcheck/setting.hpp"
#include "ospcheck/valuation.hpp"

namespace osp {

// Single item, two bidders with values in {1..K}. The first speaker
// announces a value, the other answers; the higher value wins, ties go to
// `tiebreak_winner`, and the winner pays the other's announced value.
// Truthful strategies over IntegerValueDomain(2, K).
//
// With K = 2 and the tie going to the second speaker this is the two-duck
// tree: N1 at the root, N2/N3 after "1"/"2", leaves L1..L4 left to right.
MechanismBundle SecondPriceSingleItem(int max_value, PlayerId first_speaker = 0,
                                      PlayerId tiebreak_winner = 0);

// SecondPriceSingleItem(2, 0, 1).
MechanismBundle TwoDuckAuction();

// Clock auction over the prices 1..K for a single item and `players`
// bidders with values in {1..K}. In every round the active bidders are
// asked "stay"/"quit" from the highest index down. Once one bidder is left
// it wins and pays the last price it accepted (0 if it never spoke). If
// several still stand after round K the lowest index wins at K. A lone
// bidder wins at price 1 without being asked.
MechanismBundle AscendingSingleItem(int max_price, int players = 2);

// The same clock with the grand bundle as the prize. Truthful bidders stay
// while the price is at most v(M).
MechanismBundle GrandBundleAscending(const Domain& domain, int max_price);
// Uses a single-minded grand-bundle domain with values 1..K.
MechanismBundle GrandBundleAscending(const AuctionSetting& setting,
                                     int max_price);

// Two serial rounds at the posted price x_l per item. Round one asks each
// player in turn about each remaining item ("yes" takes it); truthful
// players take items worth x_h. Round two repeats with every item worth at
// least x_l. Intended domain: RestrictedAdditiveDomain(x_l, x_h, setting).
MechanismBundle SerialPostedPrice(const Rational& low, const Rational& high,
                                  const AuctionSetting& setting);

}  // namespace osp

#endif  // OSPCHECK_MECHANISMS_HPP_
