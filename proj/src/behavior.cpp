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

#include "ospcheck/behavior.hpp"

namespace osp {

Behavior::Behavior(const MechanismTree& tree, PlayerId owner)
    : owner_(owner), choice_(tree.size(), -1) {
  if (owner < 0 || owner >= tree.setting().players) {
    throw Error("behavior owner " + std::to_string(owner) + " out of range");
  }
  for (NodeId id : tree.NodesOf(owner)) choice_[id] = 0;
}

void Behavior::Set(const MechanismTree& tree, NodeId node,
                   const std::string& label) {
  if (node < 0 || node >= static_cast<int>(choice_.size()) ||
      tree.is_leaf(node) || tree.speaker(node) != owner_) {
    throw Error("node " + std::to_string(node) + " is not owned by player " +
                std::to_string(owner_));
  }
  int e = tree.EdgeIndex(node, label);
  if (e < 0) {
    throw Error("label \"" + label + "\" does not exist at node " +
                tree.Label(node));
  }
  choice_[node] = e;
}

void Behavior::SetIndex(NodeId node, int edge_index) {
  choice_.at(node) = edge_index;
}

int Behavior::Choice(NodeId node) const {
  if (node < 0 || node >= static_cast<int>(choice_.size())) return -1;
  return choice_[node];
}

const std::string& Behavior::LabelAt(const MechanismTree& tree,
                                     NodeId node) const {
  int e = Choice(node);
  if (e < 0) {
    throw Error("behavior of player " + std::to_string(owner_) +
                " has no choice at node " + tree.Label(node));
  }
  return tree.edges(node)[e].label;
}

void Behavior::Validate(const MechanismTree& tree) const {
  if (static_cast<int>(choice_.size()) != tree.size()) {
    throw Error("behavior was built for a different tree");
  }
  for (NodeId id = 0; id < tree.size(); ++id) {
    bool owned = !tree.is_leaf(id) && tree.speaker(id) == owner_;
    int c = choice_[id];
    if (owned && (c < 0 || c >= static_cast<int>(tree.edges(id).size()))) {
      throw Error("behavior of player " + std::to_string(owner_) +
                  " has no valid choice at node " + tree.Label(id));
    }
    if (!owned && c != -1) {
      throw Error("behavior of player " + std::to_string(owner_) +
                  " chooses at foreign node " + tree.Label(id));
    }
  }
}

RunResult Run(const MechanismTree& tree, std::span<const Behavior> profile) {
  RunResult out;
  NodeId cur = tree.root();
  out.path.push_back(cur);
  while (!tree.is_leaf(cur)) {
    PlayerId who = tree.speaker(cur);
    if (who >= static_cast<int>(profile.size())) {
      throw Error("no behavior supplied for player " + std::to_string(who));
    }
    int e = profile[who].Choice(cur);
    if (e < 0 || e >= static_cast<int>(tree.edges(cur).size())) {
      throw Error("behavior of player " + std::to_string(who) +
                  " is undefined at node " + tree.Label(cur));
    }
    cur = tree.edges(cur)[e].child;
    out.path.push_back(cur);
  }
  out.leaf = cur;
  return out;
}

bool Attainable(const MechanismTree& tree, PlayerId player,
                const Behavior& behavior, NodeId node) {
  if (tree.is_leaf(node) || tree.speaker(node) != player) {
    throw Error("node " + tree.Label(node) + " is not owned by player " +
                std::to_string(player));
  }
  std::vector<NodeId> path = tree.PathTo(node);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    NodeId u = path[k];
    if (tree.speaker(u) != player) continue;
    int e = behavior.Choice(u);
    if (e < 0 || tree.edges(u)[e].child != path[k + 1]) return false;
  }
  return true;
}

Rational Utility(const MechanismTree& tree, NodeId leaf, PlayerId player,
                 const Valuation& valuation) {
  return valuation.Evaluate(tree.allocation(leaf)[player]) -
         tree.payments(leaf)[player];
}

const Outcome& OutcomeTable::at(const std::vector<int>& profile) const {
  return entries.at(ProfileIndexer(sizes).Encode(profile));
}

void ValidateStrategies(const MechanismTree& tree,
                        std::span<const StrategyTable> strategies,
                        const Domain& domain) {
  if (static_cast<int>(strategies.size()) != tree.setting().players) {
    throw Error("expected one strategy table per player");
  }
  for (std::size_t i = 0; i < strategies.size(); ++i) {
    if (strategies[i].size() != domain.players.at(i).size()) {
      throw Error("strategy of player " + std::to_string(i) + " covers " +
                  std::to_string(strategies[i].size()) + " valuations, domain has " +
                  std::to_string(domain.players[i].size()));
    }
    for (const Behavior& b : strategies[i]) {
      if (b.owner() != static_cast<PlayerId>(i)) {
        throw Error("strategy of player " + std::to_string(i) +
                    " holds a behavior of player " + std::to_string(b.owner()));
      }
      b.Validate(tree);
    }
  }
}

std::vector<Behavior> ProfileBehaviors(std::span<const StrategyTable> strategies,
                                       const std::vector<int>& profile) {
  std::vector<Behavior> out;
  out.reserve(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out.push_back(strategies[i].at(profile[i]));
  }
  return out;
}

OutcomeTable Realize(const MechanismTree& tree,
                     std::span<const StrategyTable> strategies,
                     const Domain& domain) {
  ValidateStrategies(tree, strategies, domain);
  OutcomeTable table;
  table.sizes = domain.Sizes();
  ProfileIndexer indexer(table.sizes);
  table.entries.reserve(indexer.count());
  for (std::uint64_t k = 0; k < indexer.count(); ++k) {
    std::vector<int> profile = indexer.Decode(k);
    NodeId leaf = Run(tree, ProfileBehaviors(strategies, profile)).leaf;
    table.entries.push_back(
        {leaf, tree.allocation(leaf), tree.payments(leaf)});
  }
  return table;
}

void MechanismBundle::Validate() const {
  domain.Validate();
  if (!(domain.setting == tree.setting())) {
    throw Error("domain setting does not match the mechanism setting");
  }
  ValidateStrategies(tree, strategies, domain);
}

}  // namespace osp
