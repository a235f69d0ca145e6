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


#include "ospcheck/checks.hpp"

#include <algorithm>
#include <map>

namespace osp {

namespace {

std::vector<Behavior> DefaultProfile(const MechanismTree& tree) {
  std::vector<Behavior> out;
  for (PlayerId j = 0; j < tree.setting().players; ++j) {
    out.emplace_back(tree, j);
  }
  return out;
}

std::vector<Rational> LeafUtilities(const MechanismTree& tree, PlayerId player,
                                    const Valuation& v) {
  std::vector<Rational> util(tree.size());
  for (NodeId leaf : tree.leaves()) util[leaf] = Utility(tree, leaf, player, v);
  return util;
}

// reach[u]: u can be reached while `player` follows `b` at its own nodes.
std::vector<char> Reachable(const MechanismTree& tree, PlayerId player,
                            const Behavior& b) {
  std::vector<char> reach(tree.size(), 0);
  reach[tree.root()] = 1;
  for (NodeId u = 0; u < tree.size(); ++u) {
    if (!reach[u] || tree.is_leaf(u)) continue;
    auto edges = tree.edges(u);
    if (tree.speaker(u) == player) {
      reach[edges[b.Choice(u)].child] = 1;
    } else {
      for (const Edge& e : edges) reach[e.child] = 1;
    }
  }
  return reach;
}

std::vector<Valuation> ProfileValuations(const Domain& domain,
                                         const std::vector<int>& profile) {
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out.push_back(domain.players[i][profile[i]]);
  }
  return out;
}

std::pair<Rational, Allocation> BestOf(std::span<const Valuation> profile,
                                       const std::vector<Allocation>& allocs) {
  Rational best = -1;
  const Allocation* arg = nullptr;
  for (const Allocation& a : allocs) {
    Rational w = Welfare(profile, a);
    if (arg == nullptr || w > best) {
      best = w;
      arg = &a;
    }
  }
  return {best, *arg};
}

}  // namespace

std::string RatioReport::RatioString() const {
  return unbounded ? "unbounded" : ToString(ratio);
}

std::vector<Behavior> SteerToward(const MechanismTree& tree, NodeId leaf,
                                  std::vector<Behavior> base) {
  std::vector<NodeId> path = tree.PathTo(leaf);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    NodeId u = path[k];
    auto edges = tree.edges(u);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (edges[e].child == path[k + 1]) {
        base.at(tree.speaker(u)).SetIndex(u, static_cast<int>(e));
      }
    }
  }
  return base;
}

Verdict CheckIr(const MechanismTree& tree,
                std::span<const StrategyTable> strategies,
                const Domain& domain) {
  Verdict out{"ir", true, std::nullopt};
  OutcomeTable table = Realize(tree, strategies, domain);
  ProfileIndexer indexer(table.sizes);
  for (std::uint64_t k = 0; k < indexer.count(); ++k) {
    std::vector<int> profile = indexer.Decode(k);
    const Outcome& o = table.entries[k];
    for (PlayerId i = 0; i < tree.setting().players; ++i) {
      Rational u = Utility(tree, o.leaf, i, domain.players[i][profile[i]]);
      if (u < 0) {
        Witness w;
        w.player = i;
        w.valuation = profile[i];
        w.profile = profile;
        w.follow = ProfileBehaviors(strategies, profile);
        w.follow_leaf = o.leaf;
        w.follow_utility = u;
        w.payment = o.payments[i];
        out.pass = false;
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

Verdict CheckNnt(const MechanismTree& tree,
                 std::span<const StrategyTable> strategies,
                 const Domain& domain) {
  Verdict out{"nnt", true, std::nullopt};
  OutcomeTable table = Realize(tree, strategies, domain);
  ProfileIndexer indexer(table.sizes);
  for (std::uint64_t k = 0; k < indexer.count(); ++k) {
    const Outcome& o = table.entries[k];
    for (PlayerId i = 0; i < tree.setting().players; ++i) {
      if (o.payments[i] < 0) {
        Witness w;
        w.player = i;
        w.profile = indexer.Decode(k);
        w.valuation = w.profile[i];
        w.follow = ProfileBehaviors(strategies, w.profile);
        w.follow_leaf = o.leaf;
        w.payment = o.payments[i];
        out.pass = false;
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

Verdict CheckOsp(const MechanismTree& tree,
                 std::span<const StrategyTable> strategies,
                 const Domain& domain) {
  ValidateStrategies(tree, strategies, domain);
  Verdict out{"osp", true, std::nullopt};
  const int size = tree.size();
  for (PlayerId i = 0; i < tree.setting().players; ++i) {
    for (std::size_t a = 0; a < strategies[i].size(); ++a) {
      const Behavior& b = strategies[i][a];
      std::vector<Rational> util = LeafUtilities(tree, i, domain.players[i][a]);
      // Bottom-up: worst case while i follows b below, best case overall.
      std::vector<NodeId> worst(size), best(size);
      for (NodeId u = size - 1; u >= 0; --u) {
        if (tree.is_leaf(u)) {
          worst[u] = best[u] = u;
          continue;
        }
        auto edges = tree.edges(u);
        best[u] = best[edges[0].child];
        for (const Edge& e : edges) {
          if (util[best[e.child]] > util[best[u]]) best[u] = best[e.child];
        }
        if (tree.speaker(u) == i) {
          worst[u] = worst[edges[b.Choice(u)].child];
        } else {
          worst[u] = worst[edges[0].child];
          for (const Edge& e : edges) {
            if (util[worst[e.child]] < util[worst[u]]) worst[u] = worst[e.child];
          }
        }
      }
      std::vector<char> reach = Reachable(tree, i, b);
      for (NodeId u : tree.NodesOf(i)) {
        auto edges = tree.edges(u);
        if (!reach[u] || edges.size() < 2) continue;
        const int chosen = b.Choice(u);
        NodeId follow_leaf = worst[edges[chosen].child];
        NodeId deviate_leaf = kNoNode;
        for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
          if (e == chosen) continue;
          NodeId cand = best[edges[e].child];
          if (deviate_leaf == kNoNode || util[cand] > util[deviate_leaf]) {
            deviate_leaf = cand;
          }
        }
        if (util[follow_leaf] >= util[deviate_leaf]) continue;
        Witness w;
        w.player = i;
        w.valuation = static_cast<int>(a);
        w.vertex = u;
        std::vector<Behavior> base = DefaultProfile(tree);
        base[i] = b;
        w.follow = SteerToward(tree, follow_leaf, base);
        w.deviate = SteerToward(tree, deviate_leaf, base);
        w.follow_leaf = follow_leaf;
        w.deviate_leaf = deviate_leaf;
        w.follow_utility = util[follow_leaf];
        w.deviate_utility = util[deviate_leaf];
        out.pass = false;
        out.witness = std::move(w);
        return out;
      }
    }
  }
  return out;
}

Verdict CheckDsic(const MechanismTree& tree,
                  std::span<const StrategyTable> strategies,
                  const Domain& domain) {
  ValidateStrategies(tree, strategies, domain);
  Verdict out{"dsic", true, std::nullopt};
  const auto& leaves = tree.leaves();
  std::vector<std::vector<NodeId>> paths;
  for (NodeId leaf : leaves) paths.push_back(tree.PathTo(leaf));

  for (PlayerId i = 0; i < tree.setting().players; ++i) {
    for (std::size_t a = 0; a < strategies[i].size(); ++a) {
      const Behavior& b = strategies[i][a];
      std::vector<Rational> util = LeafUtilities(tree, i, domain.players[i][a]);
      std::vector<char> reach = Reachable(tree, i, b);
      for (std::size_t x = 0; x < leaves.size(); ++x) {
        if (!reach[leaves[x]]) continue;
        for (std::size_t y = 0; y < leaves.size(); ++y) {
          if (!(util[leaves[y]] > util[leaves[x]])) continue;
          // A common B_-i exists iff no opponent node lies on both paths
          // with different outgoing edges. Both paths start at the root and
          // share a prefix; after they split they never meet again, so
          // only the last shared node can conflict.
          const auto& p = paths[x];
          const auto& q = paths[y];
          std::size_t k = 0;
          while (k < p.size() && k < q.size() && p[k] == q[k]) ++k;
          NodeId split = p[k - 1];
          if (tree.speaker(split) != i) continue;

          std::vector<Behavior> others = DefaultProfile(tree);
          others[i] = b;
          others = SteerToward(tree, leaves[y], others);
          others[i] = b;
          std::vector<Behavior> follow = SteerToward(tree, leaves[x], others);
          follow[i] = b;
          std::vector<Behavior> deviate = follow;
          deviate[i] = SteerToward(tree, leaves[y], follow)[i];
          Witness w;
          w.player = i;
          w.valuation = static_cast<int>(a);
          w.vertex = split;
          w.follow = std::move(follow);
          w.deviate = std::move(deviate);
          w.follow_leaf = leaves[x];
          w.deviate_leaf = leaves[y];
          w.follow_utility = util[leaves[x]];
          w.deviate_utility = util[leaves[y]];
          out.pass = false;
          out.witness = std::move(w);
          return out;
        }
      }
    }
  }
  return out;
}

Rational Welfare(std::span<const Valuation> profile,
                 const Allocation& allocation) {
  Rational sum = 0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    sum += profile[i].Evaluate(allocation.bundles.at(i));
  }
  return sum;
}

std::pair<Rational, Allocation> OptWelfare(std::span<const Valuation> profile,
                                           const AuctionSetting& setting) {
  if (static_cast<int>(profile.size()) != setting.players) {
    throw Error("profile size does not match the setting");
  }
  return BestOf(profile, AllAllocations(setting));
}

RatioReport WelfareRatio(const MechanismTree& tree,
                         std::span<const StrategyTable> strategies,
                         const Domain& domain) {
  OutcomeTable table = Realize(tree, strategies, domain);
  std::vector<Allocation> allocs = AllAllocations(domain.setting);
  ProfileIndexer indexer(table.sizes);
  RatioReport out;
  bool have = false;
  for (std::uint64_t k = 0; k < indexer.count(); ++k) {
    std::vector<int> profile = indexer.Decode(k);
    std::vector<Valuation> vals = ProfileValuations(domain, profile);
    Rational sw = Welfare(vals, table.entries[k].allocation);
    Rational opt = BestOf(vals, allocs).first;
    bool unbounded = sw == 0 && opt > 0;
    Rational r = unbounded || sw == 0 ? Rational(1) : opt / sw;
    bool worse = !have || (unbounded && !out.unbounded) ||
                 (!unbounded && !out.unbounded && r > out.ratio);
    if (worse) {
      have = true;
      out.unbounded = unbounded;
      out.ratio = r;
      out.worst_profile = profile;
      out.welfare = sw;
      out.optimum = opt;
    }
  }
  return out;
}

std::vector<BadLeafGoodLeaf> ScanBadLeafGoodLeaf(
    const MechanismTree& tree, std::span<const StrategyTable> strategies,
    const Domain& domain, std::size_t limit) {
  OutcomeTable table = Realize(tree, strategies, domain);
  ProfileIndexer indexer(table.sizes);
  const std::uint64_t count = indexer.count();
  std::vector<std::vector<int>> profiles;
  for (std::uint64_t k = 0; k < count; ++k) profiles.push_back(indexer.Decode(k));

  std::vector<BadLeafGoodLeaf> out;
  for (std::uint64_t x = 0; x < count; ++x) {
    const NodeId leaf = table.entries[x].leaf;
    std::vector<NodeId> path = tree.PathTo(leaf);
    for (std::uint64_t y = 0; y < count; ++y) {
      const NodeId other = table.entries[y].leaf;
      for (NodeId u : path) {
        if (tree.is_leaf(u) || !tree.IsAncestorOrSelf(u, other)) continue;
        const PlayerId i = tree.speaker(u);
        const int vi = profiles[x][i];
        const int wi = profiles[y][i];
        if (strategies[i][vi].Choice(u) == strategies[i][wi].Choice(u)) continue;
        const Valuation& v = domain.players[i][vi];
        Rational mine = Utility(tree, leaf, i, v);
        Rational theirs = Utility(tree, other, i, v);
        if (!(mine < theirs)) continue;
        out.push_back({i, u, profiles[x], profiles[y], leaf, other, mine, theirs});
        if (limit != 0 && out.size() >= limit) return out;
      }
    }
  }
  return out;
}

std::optional<Divergence> FirstDivergence(
    const MechanismTree& tree, std::span<const StrategyTable> strategies,
    const std::vector<std::vector<int>>& subsets) {
  const int n = tree.setting().players;
  if (static_cast<int>(subsets.size()) != n ||
      static_cast<int>(strategies.size()) != n) {
    throw Error("expected one subset and one strategy table per player");
  }
  std::vector<int> sizes;
  for (const auto& s : subsets) {
    if (s.empty()) throw Error("empty valuation subset");
    sizes.push_back(static_cast<int>(s.size()));
  }
  // First profile seen at each vertex, and the edge it took.
  std::map<NodeId, std::pair<int, std::vector<int>>> first;
  std::optional<Divergence> best;
  ProfileIndexer indexer(sizes);
  for (std::uint64_t k = 0; k < indexer.count(); ++k) {
    std::vector<int> digits = indexer.Decode(k);
    std::vector<int> profile(n);
    for (int i = 0; i < n; ++i) profile[i] = subsets[i][digits[i]];
    RunResult r = Run(tree, ProfileBehaviors(strategies, profile));
    for (std::size_t s = 0; s + 1 < r.path.size(); ++s) {
      NodeId u = r.path[s];
      int edge = strategies[tree.speaker(u)][profile[tree.speaker(u)]].Choice(u);
      auto [it, inserted] = first.try_emplace(u, edge, profile);
      if (inserted || it->second.first == edge) continue;
      bool better = !best || tree.depth(u) < tree.depth(best->vertex) ||
                    (tree.depth(u) == tree.depth(best->vertex) &&
                     u < best->vertex);
      if (better) {
        const PlayerId i = tree.speaker(u);
        best = Divergence{u, i, it->second.second[i], profile[i],
                          it->second.second, profile};
      }
    }
  }
  return best;
}

}  // namespace osp
