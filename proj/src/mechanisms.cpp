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


#include "ospcheck/mechanisms.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ospcheck/fixtures.hpp"

namespace osp {

namespace {

// Maps a valuation to the label its truthful owner sends at one node.
using Rule = std::function<std::string(const Valuation&)>;

class RuledBuilder {
 public:
  explicit RuledBuilder(AuctionSetting setting) : builder_(setting) {}

  NodeId Leaf(Allocation allocation, std::vector<Rational> payments,
              std::string name = {}) {
    rules_.emplace_back();
    return builder_.AddLeaf(std::move(allocation), std::move(payments),
                            std::move(name));
  }
  NodeId Internal(PlayerId speaker, Rule rule, std::string name = {}) {
    rules_.push_back(std::move(rule));
    return builder_.AddInternal(speaker, std::move(name));
  }
  void Edge(NodeId from, std::string label, NodeId to) {
    builder_.AddEdge(from, std::move(label), to);
  }

  MechanismBundle Finish(NodeId root, Domain domain) const {
    std::vector<NodeId> ids;
    MechanismTree tree = builder_.Build(root, &ids);
    std::vector<StrategyTable> strategies(domain.player_count());
    for (PlayerId i = 0; i < domain.player_count(); ++i) {
      for (const Valuation& v : domain.players[i]) {
        Behavior b(tree, i);
        for (NodeId old = 0; old < static_cast<NodeId>(rules_.size()); ++old) {
          NodeId id = ids[old];
          if (!rules_[old] || tree.speaker(id) != i) continue;
          b.Set(tree, id, rules_[old](v));
        }
        strategies[i].push_back(std::move(b));
      }
    }
    MechanismBundle out{std::move(tree), std::move(strategies),
                        std::move(domain)};
    out.Validate();
    return out;
  }

 private:
  TreeBuilder builder_;
  std::vector<Rule> rules_;
};

std::string IntegerLabel(const Rational& r) {
  if (r.denominator() != 1) {
    throw Error("value " + ToString(r) + " is not an integer");
  }
  return std::to_string(r.numerator());
}

struct ClockSpec {
  AuctionSetting setting;
  int max_price = 1;
  Bundle prize;
  std::function<Rational(const Valuation&)> threshold;
};

class ClockBuilder {
 public:
  explicit ClockBuilder(const ClockSpec& spec)
      : spec_(spec), rb_(spec.setting) {}

  MechanismBundle Run(Domain domain) {
    const int n = spec_.setting.players;
    NodeId root;
    if (n == 1) {
      root = Win(0, Rational(1));
    } else {
      std::vector<PlayerId> active(n);
      for (int i = 0; i < n; ++i) active[i] = i;
      root = Step(1, active, Descending(active),
                  std::vector<Rational>(n, Rational(0)));
    }
    return rb_.Finish(root, std::move(domain));
  }

 private:
  static std::vector<PlayerId> Descending(std::vector<PlayerId> active) {
    std::sort(active.rbegin(), active.rend());
    return active;
  }

  NodeId Win(PlayerId winner, const Rational& price) {
    Allocation a = Allocation::Empty(spec_.setting);
    a[winner] = spec_.prize;
    std::vector<Rational> pay(spec_.setting.players, Rational(0));
    pay[winner] = price;
    return rb_.Leaf(std::move(a), std::move(pay));
  }

  // `queue` holds the bidders still to be asked at `price`, in asking order.
  NodeId Step(int price, const std::vector<PlayerId>& active,
              std::vector<PlayerId> queue, std::vector<Rational> last) {
    if (active.size() == 1) return Win(active[0], last[active[0]]);
    if (queue.empty()) {
      if (price == spec_.max_price) {
        return Win(active.front(), Rational(spec_.max_price));
      }
      return Step(price + 1, active, Descending(active), std::move(last));
    }
    const PlayerId who = queue.front();
    queue.erase(queue.begin());
    const Rational p(price);
    auto threshold = spec_.threshold;
    NodeId u = rb_.Internal(who, [p, threshold](const Valuation& v) {
      return p <= threshold(v) ? "stay" : "quit";
    });
    std::vector<Rational> stayed = last;
    stayed[who] = p;
    rb_.Edge(u, "stay", Step(price, active, queue, std::move(stayed)));
    std::vector<PlayerId> rest;
    for (PlayerId j : active) {
      if (j != who) rest.push_back(j);
    }
    rb_.Edge(u, "quit", Step(price, rest, queue, std::move(last)));
    return u;
  }

  ClockSpec spec_;
  RuledBuilder rb_;
};

class SerialBuilder {
 public:
  SerialBuilder(const Rational& low, const Rational& high,
                const AuctionSetting& setting)
      : low_(low), high_(high), setting_(setting), rb_(setting) {}

  MechanismBundle Run() {
    const std::uint32_t all = (1u << setting_.items) - 1u;
    NodeId root = Step(1, 0, 0, all, std::vector<std::uint32_t>(
                                         setting_.players, 0));
    return rb_.Finish(root,
                      RestrictedAdditiveDomain(low_, high_, setting_));
  }

 private:
  // Next question at or after (round, player, item) among remaining items.
  NodeId Step(int round, PlayerId player, int item, std::uint32_t remaining,
              std::vector<std::uint32_t> owned) {
    while (remaining != 0 && round <= 2) {
      while (item < setting_.items && !(remaining & (1u << item))) ++item;
      if (item < setting_.items) break;
      item = 0;
      if (++player == setting_.players) {
        player = 0;
        ++round;
      }
    }
    if (remaining == 0 || round > 2) return Leaf(owned);

    const Rational low = low_, high = high_;
    const int j = item;
    NodeId u = rb_.Internal(player, [round, j, low, high](const Valuation& v) {
      Rational x = v.Evaluate(Bundle::Items({j}));
      bool take = round == 1 ? x == high : x >= low;
      return std::string(take ? "yes" : "no");
    });
    std::vector<std::uint32_t> took = owned;
    took[player] |= 1u << item;
    rb_.Edge(u, "yes", Step(round, player, item + 1, remaining & ~(1u << item),
                            std::move(took)));
    rb_.Edge(u, "no", Step(round, player, item + 1, remaining, std::move(owned)));
    return u;
  }

  NodeId Leaf(const std::vector<std::uint32_t>& owned) {
    Allocation a;
    std::vector<Rational> pay;
    for (std::uint32_t mask : owned) {
      Bundle b = Bundle::FromMask(mask);
      pay.push_back(low_ * Rational(b.size()));
      a.bundles.push_back(b);
    }
    return rb_.Leaf(std::move(a), std::move(pay));
  }

  Rational low_, high_;
  AuctionSetting setting_;
  RuledBuilder rb_;
};

}  // namespace

MechanismBundle SecondPriceSingleItem(int max_value, PlayerId first_speaker,
                                      PlayerId tiebreak_winner) {
  if (max_value < 1) throw Error("K must be at least 1");
  if (first_speaker < 0 || first_speaker > 1 || tiebreak_winner < 0 ||
      tiebreak_winner > 1) {
    throw Error("second price needs players 0 and 1");
  }
  const AuctionSetting setting{AuctionKind::kCombinatorial, 2, 1};
  const PlayerId second = 1 - first_speaker;
  const Bundle item = Bundle::Items({0});
  auto announce = [item](const Valuation& v) {
    return IntegerLabel(v.Evaluate(item));
  };
  RuledBuilder rb(setting);
  int internal = 1, leaves = 0;
  NodeId root = rb.Internal(first_speaker, announce, "N1");
  for (int x = 1; x <= max_value; ++x) {
    NodeId reply = rb.Internal(second, announce, "N" + std::to_string(++internal));
    rb.Edge(root, std::to_string(x), reply);
    for (int y = 1; y <= max_value; ++y) {
      PlayerId winner = x > y ? first_speaker
                              : (y > x ? second : tiebreak_winner);
      Allocation a = Allocation::Empty(setting);
      a[winner] = item;
      std::vector<Rational> pay(2, Rational(0));
      pay[winner] = Rational(winner == first_speaker ? y : x);
      NodeId leaf = rb.Leaf(std::move(a), std::move(pay),
                            "L" + std::to_string(++leaves));
      rb.Edge(reply, std::to_string(y), leaf);
    }
  }
  return rb.Finish(root, IntegerValueDomain(2, max_value));
}

MechanismBundle TwoDuckAuction() { return SecondPriceSingleItem(2, 0, 1); }

MechanismBundle AscendingSingleItem(int max_price, int players) {
  if (max_price < 1) throw Error("K must be at least 1");
  Domain domain = IntegerValueDomain(players, max_price);
  const Bundle item = Bundle::Items({0});
  ClockSpec spec{domain.setting, max_price, item,
                 [item](const Valuation& v) { return v.Evaluate(item); }};
  return ClockBuilder(spec).Run(std::move(domain));
}

MechanismBundle GrandBundleAscending(const Domain& domain, int max_price) {
  if (max_price < 1) throw Error("K must be at least 1");
  domain.Validate();
  const Bundle all = Bundle::All(domain.setting);
  ClockSpec spec{domain.setting, max_price, all,
                 [all](const Valuation& v) { return v.Evaluate(all); }};
  return ClockBuilder(spec).Run(domain);
}

MechanismBundle GrandBundleAscending(const AuctionSetting& setting,
                                     int max_price) {
  if (max_price < 1) throw Error("K must be at least 1");
  setting.Validate();
  const Bundle all = Bundle::All(setting);
  std::vector<Valuation> values;
  for (int x = 1; x <= max_price; ++x) {
    values.push_back(setting.kind == AuctionKind::kMultiUnit
                         ? Valuation::SingleMindedMu(setting.items, Rational(x),
                                                     setting.items)
                         : Valuation::SingleMindedCa(all, Rational(x),
                                                     setting.items));
  }
  Domain domain{setting,
                std::vector<std::vector<Valuation>>(setting.players, values)};
  return GrandBundleAscending(domain, max_price);
}

MechanismBundle SerialPostedPrice(const Rational& low, const Rational& high,
                                  const AuctionSetting& setting) {
  if (low <= 0) throw Error("x_l must be positive");
  if (low >= high) throw Error("x_l must be below x_h");
  if (setting.kind != AuctionKind::kCombinatorial) {
    throw Error("serial posted price needs a combinatorial setting");
  }
  return SerialBuilder(low, high, setting).Run();
}

}  // namespace osp
