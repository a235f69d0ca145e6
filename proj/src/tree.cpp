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

#include "ospcheck/tree.hpp"

#include <algorithm>
#include <set>

namespace osp {

NodeId MechanismTree::Child(NodeId id, const std::string& label) const {
  int e = EdgeIndex(id, label);
  return e < 0 ? kNoNode : node(id).edges[e].child;
}

int MechanismTree::EdgeIndex(NodeId id, const std::string& label) const {
  const auto& edges = node(id).edges;
  auto it = std::lower_bound(
      edges.begin(), edges.end(), label,
      [](const Edge& e, const std::string& l) { return e.label < l; });
  if (it == edges.end() || it->label != label) return -1;
  return static_cast<int>(it - edges.begin());
}

const Allocation& MechanismTree::allocation(NodeId leaf) const {
  if (!is_leaf(leaf)) throw Error("node " + Label(leaf) + " is not a leaf");
  return node(leaf).allocation;
}

const std::vector<Rational>& MechanismTree::payments(NodeId leaf) const {
  if (!is_leaf(leaf)) throw Error("node " + Label(leaf) + " is not a leaf");
  return node(leaf).payments;
}

std::string MechanismTree::Label(NodeId id) const {
  const std::string& n = node(id).name;
  return n.empty() ? "#" + std::to_string(id) : n;
}

const std::vector<NodeId>& MechanismTree::NodesOf(PlayerId player) const {
  return nodes_of_.at(player);
}

std::vector<NodeId> MechanismTree::PathTo(NodeId id) const {
  std::vector<NodeId> path;
  for (NodeId cur = id; cur != kNoNode; cur = parents_.at(cur)) {
    path.push_back(cur);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

bool MechanismTree::IsAncestorOrSelf(NodeId ancestor, NodeId id) const {
  return ancestor <= id && id < subtree_end_.at(ancestor);
}

std::vector<NodeId> MechanismTree::SubtreeLeaves(NodeId id) const {
  std::vector<NodeId> out;
  auto lo = std::lower_bound(leaves_.begin(), leaves_.end(), id);
  auto hi = std::lower_bound(leaves_.begin(), leaves_.end(), subtree_end_.at(id));
  out.assign(lo, hi);
  return out;
}

NodeId MechanismTree::FindByName(const std::string& name) const {
  for (NodeId id = 0; id < size(); ++id) {
    if (nodes_[id].name == name) return id;
  }
  return kNoNode;
}

MechanismTree MechanismTree::Scaled(const Rational& factor) const {
  MechanismTree out = *this;
  for (Node& n : out.nodes_) {
    for (Rational& p : n.payments) p *= factor;
  }
  return out;
}

void MechanismTree::Index() {
  const int n = size();
  parents_.assign(n, kNoNode);
  depths_.assign(n, 0);
  subtree_end_.assign(n, n);
  leaves_.clear();
  nodes_of_.assign(setting_.players, {});
  height_ = 0;
  for (NodeId id = 0; id < n; ++id) {
    const Node& nd = nodes_[id];
    if (nd.is_leaf()) {
      leaves_.push_back(id);
    } else {
      nodes_of_[nd.speaker].push_back(id);
    }
    for (const Edge& e : nd.edges) {
      parents_[e.child] = id;
      depths_[e.child] = depths_[id] + 1;
    }
    height_ = std::max(height_, depths_[id]);
  }
  // Preorder: a subtree ends where the next sibling (or an ancestor's next
  // sibling) begins. Walk backwards so children are finalized first.
  for (NodeId id = n - 1; id >= 0; --id) {
    const Node& nd = nodes_[id];
    subtree_end_[id] = nd.edges.empty() ? id + 1
                                        : subtree_end_[nd.edges.back().child];
  }
}

TreeBuilder::TreeBuilder(AuctionSetting setting) : setting_(setting) {
  setting_.Validate();
}

NodeId TreeBuilder::AddLeaf(Allocation allocation,
                            std::vector<Rational> payments, std::string name) {
  Node n;
  n.name = std::move(name);
  n.allocation = std::move(allocation);
  n.payments = std::move(payments);
  nodes_.push_back(std::move(n));
  return size() - 1;
}

NodeId TreeBuilder::AddInternal(PlayerId speaker, std::string name) {
  if (speaker < 0) throw Error("negative speaker id");
  Node n;
  n.name = std::move(name);
  n.speaker = speaker;
  nodes_.push_back(std::move(n));
  return size() - 1;
}

void TreeBuilder::AddEdge(NodeId from, std::string label, NodeId to) {
  if (from < 0 || from >= size()) {
    throw Error("edge from unknown node " + std::to_string(from));
  }
  nodes_[from].edges.push_back({std::move(label), to});
}

MechanismTree TreeBuilder::Build(NodeId root,
                                 std::vector<NodeId>* new_ids) const {
  const int n = size();
  auto where = [&](NodeId id) {
    const std::string& nm = nodes_[id].name;
    return "node " + (nm.empty() ? "#" + std::to_string(id) : nm);
  };
  if (root < 0 || root >= n) throw Error("root id out of range");

  // Per-node checks, and parent counting for the shape checks below.
  std::vector<int> parent_count(n, 0);
  for (NodeId id = 0; id < n; ++id) {
    const Node& nd = nodes_[id];
    if (nd.is_leaf()) {
      if (!nd.edges.empty()) throw Error(where(id) + ": leaf with edges");
      if (static_cast<int>(nd.payments.size()) != setting_.players) {
        throw Error(where(id) + ": expected " +
                    std::to_string(setting_.players) + " payments, got " +
                    std::to_string(nd.payments.size()));
      }
      try {
        nd.allocation.Validate(setting_);
      } catch (const Error& e) {
        throw Error(where(id) + ": invalid allocation: " + e.what());
      }
      continue;
    }
    if (nd.speaker >= setting_.players) {
      throw Error(where(id) + ": speaker " + std::to_string(nd.speaker) +
                  " >= n=" + std::to_string(setting_.players));
    }
    if (nd.edges.empty()) throw Error(where(id) + ": internal node without edges");
    std::set<std::string> labels;
    for (const Edge& e : nd.edges) {
      if (!labels.insert(e.label).second) {
        throw Error(where(id) + ": duplicate message label \"" + e.label + "\"");
      }
      if (e.child < 0 || e.child >= n) {
        throw Error(where(id) + ": edge \"" + e.label + "\" to unknown node");
      }
      if (++parent_count[e.child] > 1) {
        throw Error(where(e.child) + " has more than one parent");
      }
    }
  }
  if (parent_count[root] != 0) throw Error("root lies on a cycle");

  // Canonical preorder renumbering, edges in sorted label order. With at
  // most one parent per node and a parentless root, the walk from the root
  // cannot revisit a node; anything it misses is an orphan or on a cycle.
  std::vector<NodeId> new_id(n, kNoNode);
  std::vector<NodeId> order;
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    new_id[id] = static_cast<NodeId>(order.size());
    order.push_back(id);
    std::vector<Edge> edges = nodes_[id].edges;
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.label < b.label; });
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) {
      stack.push_back(it->child);
    }
  }
  for (NodeId id = 0; id < n; ++id) {
    if (new_id[id] == kNoNode) {
      throw Error(where(id) + " is unreachable from the root (orphan or cycle)");
    }
  }

  MechanismTree tree;
  tree.setting_ = setting_;
  tree.nodes_.reserve(n);
  for (NodeId old : order) {
    Node nd = nodes_[old];
    std::sort(nd.edges.begin(), nd.edges.end(),
              [](const Edge& a, const Edge& b) { return a.label < b.label; });
    for (Edge& e : nd.edges) e.child = new_id[e.child];
    tree.nodes_.push_back(std::move(nd));
  }
  tree.Index();
  if (new_ids != nullptr) *new_ids = new_id;
  return tree;
}

MechanismTree SingleLeafTree(const AuctionSetting& setting) {
  TreeBuilder b(setting);
  NodeId leaf = b.AddLeaf(Allocation::Empty(setting),
                          std::vector<Rational>(setting.players, Rational(0)));
  return b.Build(leaf);
}

}  // namespace osp
