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


#ifndef OSPCHECK_STRUCTURE_HPP_
#define OSPCHECK_STRUCTURE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ospcheck/rational.hpp"
#include "ospcheck/setting.hpp"
#include "ospcheck/tree.hpp"

namespace osp {

// Minimum payment of `player` over the leaves below `node` that give the
// player a superset of `bundle`. Empty if there is no such leaf.
std::optional<Rational> MinimalPrice(const MechanismTree& tree, NodeId node,
                                     PlayerId player, const Bundle& bundle);

// Whether `player` can force, from `node` on, a leaf where it holds a
// superset of `bundle` and pays at most `price`. OR over the player's own
// messages, AND over everyone else's.
bool IsDecisive(const MechanismTree& tree, NodeId node, PlayerId player,
                const Bundle& bundle, const Rational& price);

struct VertexClassification {
  NodeId vertex = kNoNode;
  bool continue_or_quit = true;
  std::optional<std::string> continue_message;
  // Messages whose subtree has a leaf giving the speaker a nonempty bundle.
  int winning_messages = 0;
};

// Throws if `node` is a leaf.
VertexClassification ClassifyContinueOrQuit(const MechanismTree& tree,
                                            NodeId node);

struct StructureAudit {
  std::vector<VertexClassification> vertices;  // every internal node, preorder
  bool all_continue_or_quit = true;
};

StructureAudit AuditAscendingStructure(const MechanismTree& tree);

}  // namespace osp

#endif  // OSPCHECK_STRUCTURE_HPP_
