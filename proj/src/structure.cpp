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


#include "ospcheck/structure.hpp"

namespace osp {

std::optional<Rational> MinimalPrice(const MechanismTree& tree, NodeId node,
                                     PlayerId player, const Bundle& bundle) {
  std::optional<Rational> best;
  for (NodeId leaf : tree.SubtreeLeaves(node)) {
    if (!tree.allocation(leaf)[player].Contains(bundle)) continue;
    const Rational& p = tree.payments(leaf)[player];
    if (!best || p < *best) best = p;
  }
  return best;
}

bool IsDecisive(const MechanismTree& tree, NodeId node, PlayerId player,
                const Bundle& bundle, const Rational& price) {
  // Bottom-up over the contiguous preorder range of the subtree.
  const NodeId end = tree.SubtreeEnd(node);
  std::vector<char> win(end - node, 0);
  for (NodeId u = end - 1; u >= node; --u) {
    char& w = win[u - node];
    if (tree.is_leaf(u)) {
      w = tree.allocation(u)[player].Contains(bundle) &&
          tree.payments(u)[player] <= price;
      continue;
    }
    const bool mine = tree.speaker(u) == player;
    w = mine ? 0 : 1;
    for (const Edge& e : tree.edges(u)) {
      char c = win[e.child - node];
      w = mine ? (w || c) : (w && c);
    }
  }
  return win[0];
}

VertexClassification ClassifyContinueOrQuit(const MechanismTree& tree,
                                            NodeId node) {
  if (tree.is_leaf(node)) {
    throw Error("node " + tree.Label(node) + " is a leaf");
  }
  const PlayerId who = tree.speaker(node);
  VertexClassification out;
  out.vertex = node;
  for (const Edge& e : tree.edges(node)) {
    for (NodeId leaf : tree.SubtreeLeaves(e.child)) {
      if (!tree.allocation(leaf)[who].empty()) {
        ++out.winning_messages;
        out.continue_message = e.label;
        break;
      }
    }
  }
  out.continue_or_quit = out.winning_messages <= 1;
  if (out.winning_messages != 1) out.continue_message.reset();
  return out;
}

StructureAudit AuditAscendingStructure(const MechanismTree& tree) {
  StructureAudit out;
  for (NodeId u = 0; u < tree.size(); ++u) {
    if (tree.is_leaf(u)) continue;
    out.vertices.push_back(ClassifyContinueOrQuit(tree, u));
    out.all_continue_or_quit =
        out.all_continue_or_quit && out.vertices.back().continue_or_quit;
  }
  return out;
}

}  // namespace osp
