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


#ifndef OSPCHECK_TESTS_SUPPORT_ORACLES_HPP_
#define OSPCHECK_TESTS_SUPPORT_ORACLES_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ospcheck/behavior.hpp"
#include "ospcheck/rational.hpp"
#include "ospcheck/setting.hpp"
#include "ospcheck/tree.hpp"
#include "ospcheck/valuation.hpp"

namespace osp::testing {

// Dominant strategies by enumeration: every opponent behavior profile is
// listed explicitly, and against each one the best reply of player i is
// computed by walking the tree with the opponents fixed.
bool BruteForceDsic(const MechanismTree& tree,
                    std::span<const StrategyTable> strategies,
                    const Domain& domain);

// Decisiveness by listing every behavior of the player inside the subtree
// and checking that all leaves reachable under it are good.
bool BruteForceDecisive(const MechanismTree& tree, NodeId node,
                        PlayerId player, const Bundle& bundle,
                        const Rational& price);

// OPT by recursing over item owners (or unit splits), independent of
// AllAllocations.
Rational BruteForceOpt(std::span<const Valuation> profile,
                       const AuctionSetting& setting);

// Per-item maximum for additive profiles.
Rational AdditiveClosedForm(std::span<const Valuation> profile);

struct RandomInstance {
  MechanismTree tree;
  std::vector<StrategyTable> strategies;
  Domain domain;
};

struct RandomInstanceOptions {
  int max_players = 2;
  int max_items = 2;
  int max_depth = 3;
  int max_edges = 3;
  int max_domain = 3;
  int max_value = 3;
  int max_payment = 2;
};

// Random sequential tree with random strategies. Half of the strategy
// tables are pushed toward obvious dominance so both verdicts show up.
RandomInstance MakeRandomInstance(std::mt19937_64& rng,
                                  const RandomInstanceOptions& opts = {});

// Random tree only (no domain), for structural queries.
MechanismTree MakeRandomTree(std::mt19937_64& rng,
                             const RandomInstanceOptions& opts = {});

}  // namespace osp::testing

#endif  // OSPCHECK_TESTS_SUPPORT_ORACLES_HPP_
