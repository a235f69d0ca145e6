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


#ifndef OSPCHECK_CHECKS_HPP_
#define OSPCHECK_CHECKS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ospcheck/behavior.hpp"
#include "ospcheck/rational.hpp"
#include "ospcheck/tree.hpp"
#include "ospcheck/valuation.hpp"

namespace osp {

// A concrete violation. Which fields are filled depends on the property:
//   ir/nnt: player, profile, leaf, utility (ir) or payment (nnt)
//   osp:    player, valuation, vertex, both behavior profiles and leaves
//   dsic:   player, valuation, both behavior profiles and leaves, and the
//           vertex where the two runs split
// Behavior profiles replay with Run() to the recorded leaves.
struct Witness {
  PlayerId player = -1;
  int valuation = -1;             // index into the player's domain
  std::vector<int> profile;       // full profile, when one exists
  NodeId vertex = kNoNode;
  std::vector<Behavior> follow;   // S_i(v_i) together with B_-i
  std::vector<Behavior> deviate;  // B'_i together with B'_-i
  NodeId follow_leaf = kNoNode;
  NodeId deviate_leaf = kNoNode;
  Rational follow_utility;
  Rational deviate_utility;
  Rational payment;
};

struct Verdict {
  std::string property;
  bool pass = true;
  std::optional<Witness> witness;
};

// Max over profiles of OPT/SW. `unbounded` means some profile has SW = 0
// and OPT > 0; 0/0 counts as 1.
struct RatioReport {
  bool unbounded = false;
  Rational ratio{1};
  std::vector<int> worst_profile;
  Rational welfare;
  Rational optimum;

  std::string RatioString() const;
};

Verdict CheckIr(const MechanismTree& tree,
                std::span<const StrategyTable> strategies, const Domain& domain);
Verdict CheckNnt(const MechanismTree& tree,
                 std::span<const StrategyTable> strategies,
                 const Domain& domain);
// Obvious dominance at every attainable vertex of every player and
// valuation. Single-message vertices impose nothing.
Verdict CheckOsp(const MechanismTree& tree,
                 std::span<const StrategyTable> strategies,
                 const Domain& domain);
// Dominance against every opponent behavior profile. Works on pairs of
// leaves: the strategy loses to some deviation iff there are leaves L, L'
// such that L is reachable while following S_i(v_i), u(L') > u(L), and some
// single B_-i is compatible with both root paths.
Verdict CheckDsic(const MechanismTree& tree,
                  std::span<const StrategyTable> strategies,
                  const Domain& domain);

// Brute force over every valid allocation. Ties keep the first allocation
// in AllAllocations order.
std::pair<Rational, Allocation> OptWelfare(std::span<const Valuation> profile,
                                           const AuctionSetting& setting);
Rational Welfare(std::span<const Valuation> profile,
                 const Allocation& allocation);

RatioReport WelfareRatio(const MechanismTree& tree,
                         std::span<const StrategyTable> strategies,
                         const Domain& domain);

// One tuple (i, u, v, v') where both realized paths pass u, S_i(v_i) and
// S_i(v'_i) differ at u, yet v_i strictly prefers the v'-outcome.
struct BadLeafGoodLeaf {
  PlayerId player = -1;
  NodeId vertex = kNoNode;
  std::vector<int> profile;        // v
  std::vector<int> other_profile;  // v'
  NodeId leaf = kNoNode;
  NodeId other_leaf = kNoNode;
  Rational utility;        // v_i at leaf
  Rational other_utility;  // v_i at other_leaf
};

// `limit` = 0 means no cap on the number of tuples returned.
std::vector<BadLeafGoodLeaf> ScanBadLeafGoodLeaf(
    const MechanismTree& tree, std::span<const StrategyTable> strategies,
    const Domain& domain, std::size_t limit = 0);

struct Divergence {
  NodeId vertex = kNoNode;
  PlayerId player = -1;
  int valuation = -1;        // from the first profile reaching the vertex
  int other_valuation = -1;  // from the first one leaving by another edge
  std::vector<int> profile;
  std::vector<int> other_profile;
};

// Shallowest vertex (ties by preorder id) where two profiles drawn from the
// subset product take different edges. subsets[i] lists domain indices.
std::optional<Divergence> FirstDivergence(
    const MechanismTree& tree, std::span<const StrategyTable> strategies,
    const std::vector<std::vector<int>>& subsets);

// Behavior profile that reaches `leaf`: every node on the root path takes
// the edge toward the leaf, other choices come from `base`.
std::vector<Behavior> SteerToward(const MechanismTree& tree, NodeId leaf,
                                  std::vector<Behavior> base);

}  // namespace osp

#endif  // OSPCHECK_CHECKS_HPP_
