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

#ifndef OSPCHECK_BEHAVIOR_HPP_
#define OSPCHECK_BEHAVIOR_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ospcheck/rational.hpp"
#include "ospcheck/tree.hpp"
#include "ospcheck/valuation.hpp"

namespace osp {

// A message choice at every node the owner speaks at. Choices are stored as
// edge indices into the node's sorted edge list.
class Behavior {
 public:
  Behavior() = default;
  // Chooses the first edge at every owned node.
  Behavior(const MechanismTree& tree, PlayerId owner);

  PlayerId owner() const { return owner_; }
  // Throws if the node is not owned or the label does not exist.
  void Set(const MechanismTree& tree, NodeId node, const std::string& label);
  void SetIndex(NodeId node, int edge_index);
  // Edge index at the node, or -1 if the node is not owned.
  int Choice(NodeId node) const;
  const std::string& LabelAt(const MechanismTree& tree, NodeId node) const;

  // Throws unless defined on exactly the owner's nodes with valid choices.
  void Validate(const MechanismTree& tree) const;

  friend bool operator==(const Behavior&, const Behavior&) = default;

 private:
  PlayerId owner_ = -1;
  std::vector<int> choice_;  // indexed by node id; -1 where not owned
};

// Maps a player's domain valuation (by index) to a behavior.
using StrategyTable = std::vector<Behavior>;

struct RunResult {
  NodeId leaf = kNoNode;
  std::vector<NodeId> path;  // root ... leaf
};

// Follows one behavior per player from the root. Throws if a behavior is
// missing a choice on the realized path.
RunResult Run(const MechanismTree& tree, std::span<const Behavior> profile);

// True iff every node of `player` strictly above `node` on its root path has
// the behavior's edge toward `node`. Throws if `node` is not owned by
// `player`.
bool Attainable(const MechanismTree& tree, PlayerId player,
                const Behavior& behavior, NodeId node);

// value - payment for `player` at a leaf.
Rational Utility(const MechanismTree& tree, NodeId leaf, PlayerId player,
                 const Valuation& valuation);

struct Outcome {
  NodeId leaf = kNoNode;
  Allocation allocation;
  std::vector<Rational> payments;
};

// The social choice function and payments realized over a finite domain,
// indexed by ProfileIndexer order.
struct OutcomeTable {
  std::vector<int> sizes;
  std::vector<Outcome> entries;

  const Outcome& at(const std::vector<int>& profile) const;
};

// Throws if a strategy table does not cover its player's domain or a
// behavior is invalid for the tree.
void ValidateStrategies(const MechanismTree& tree,
                        std::span<const StrategyTable> strategies,
                        const Domain& domain);

// Behavior profile S_1(v_1) ... S_n(v_n) for a profile of domain indices.
std::vector<Behavior> ProfileBehaviors(std::span<const StrategyTable> strategies,
                                       const std::vector<int>& profile);

OutcomeTable Realize(const MechanismTree& tree,
                     std::span<const StrategyTable> strategies,
                     const Domain& domain);

// A mechanism together with strategies and the domain they are defined on.
struct MechanismBundle {
  MechanismTree tree;
  std::vector<StrategyTable> strategies;
  Domain domain;

  // Throws unless the domain fits the tree's setting and every strategy
  // table is total on its player's domain.
  void Validate() const;
};

}  // namespace osp

#endif  // OSPCHECK_BEHAVIOR_HPP_
