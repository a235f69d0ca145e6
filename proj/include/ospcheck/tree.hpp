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

#ifndef OSPCHECK_TREE_HPP_
#define OSPCHECK_TREE_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ospcheck/rational.hpp"
#include "ospcheck/setting.hpp"

namespace osp {

using NodeId = int;
inline constexpr NodeId kNoNode = -1;

struct Edge {
  std::string label;
  NodeId child = kNoNode;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Node {
  std::string name;  // optional display name, e.g. "N1"
  // Internal nodes: speaker >= 0 and at least one edge, sorted by label.
  PlayerId speaker = -1;
  std::vector<Edge> edges;
  // Leaves: allocation and one payment per player.
  Allocation allocation;
  std::vector<Rational> payments;

  bool is_leaf() const { return speaker < 0; }

  friend bool operator==(const Node&, const Node&) = default;
};

class TreeBuilder;

// A validated, immutable protocol tree. Node ids are canonical: preorder
// with edges visited in sorted label order, so the root is always 0 and ids
// survive serialization round trips.
class MechanismTree {
 public:
  const AuctionSetting& setting() const { return setting_; }
  NodeId root() const { return 0; }
  int size() const { return static_cast<int>(nodes_.size()); }

  const Node& node(NodeId id) const { return nodes_.at(id); }
  bool is_leaf(NodeId id) const { return node(id).is_leaf(); }
  PlayerId speaker(NodeId id) const { return node(id).speaker; }
  std::span<const Edge> edges(NodeId id) const { return node(id).edges; }
  // kNoNode if the label does not exist at the node.
  NodeId Child(NodeId id, const std::string& label) const;
  // -1 if the label does not exist at the node.
  int EdgeIndex(NodeId id, const std::string& label) const;
  const Allocation& allocation(NodeId leaf) const;
  const std::vector<Rational>& payments(NodeId leaf) const;
  const std::string& name(NodeId id) const { return node(id).name; }
  // Display name if set, otherwise "#<id>".
  std::string Label(NodeId id) const;

  NodeId parent(NodeId id) const { return parents_.at(id); }
  int depth(NodeId id) const { return depths_.at(id); }
  // Longest root-to-leaf edge count.
  int height() const { return height_; }

  // Nodes owned by the player (the set N_i), in id order.
  const std::vector<NodeId>& NodesOf(PlayerId player) const;
  const std::vector<NodeId>& leaves() const { return leaves_; }
  int internal_count() const { return size() - static_cast<int>(leaves_.size()); }

  // Root-to-node path, inclusive at both ends.
  std::vector<NodeId> PathTo(NodeId id) const;
  bool IsAncestorOrSelf(NodeId ancestor, NodeId id) const;
  // Ids of a subtree are contiguous in preorder: [id, SubtreeEnd(id)).
  NodeId SubtreeEnd(NodeId id) const { return subtree_end_.at(id); }
  std::vector<NodeId> SubtreeLeaves(NodeId id) const;
  // Node id looked up by display name, or kNoNode.
  NodeId FindByName(const std::string& name) const;

  // Every payment multiplied by `factor`.
  MechanismTree Scaled(const Rational& factor) const;

  friend bool operator==(const MechanismTree& a, const MechanismTree& b) {
    return a.setting_ == b.setting_ && a.nodes_ == b.nodes_;
  }

 private:
  friend class TreeBuilder;
  MechanismTree() = default;
  void Index();

  AuctionSetting setting_;
  std::vector<Node> nodes_;
  std::vector<NodeId> parents_;
  std::vector<int> depths_;
  std::vector<NodeId> subtree_end_;
  std::vector<NodeId> leaves_;
  std::vector<std::vector<NodeId>> nodes_of_;
  int height_ = 0;
};

// Structural tree description in arbitrary node order. Build() checks it
// and returns the canonical MechanismTree.
class TreeBuilder {
 public:
  explicit TreeBuilder(AuctionSetting setting);

  NodeId AddLeaf(Allocation allocation, std::vector<Rational> payments,
                 std::string name = {});
  // Internal node with no edges yet.
  NodeId AddInternal(PlayerId speaker, std::string name = {});
  void AddEdge(NodeId from, std::string label, NodeId to);

  // Throws osp::Error on: duplicate label at a node, an internal node
  // without edges, speaker id out of range, payment vector of the wrong
  // length, invalid leaf allocation, an edge to an unknown node, a node with
  // two parents, a cycle, or a node unreachable from `root`.
  // If `new_ids` is given it receives the canonical id of every builder id.
  MechanismTree Build(NodeId root, std::vector<NodeId>* new_ids = nullptr) const;

  int size() const { return static_cast<int>(nodes_.size()); }

 private:
  AuctionSetting setting_;
  std::vector<Node> nodes_;
};

// A tree with a single leaf: empty allocation and zero payments.
MechanismTree SingleLeafTree(const AuctionSetting& setting);

}  // namespace osp

#endif  // OSPCHECK_TREE_HPP_
