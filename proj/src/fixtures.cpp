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


#include "ospcheck/fixtures.hpp"

#include <algorithm>
#include <numeric>

namespace osp {

std::string ToString(AdversarialFamily family) {
  switch (family) {
    case AdversarialFamily::kMuSingleMinded: return "mu-single-minded";
    case AdversarialFamily::kCaSingleMinded: return "ca-single-minded";
    case AdversarialFamily::kAdditive: return "additive";
    case AdversarialFamily::kUnitDemand: return "unit-demand";
  }
  return "?";
}

AdversarialFamily ParseAdversarialFamily(const std::string& text) {
  for (auto f : {AdversarialFamily::kMuSingleMinded,
                 AdversarialFamily::kCaSingleMinded,
                 AdversarialFamily::kAdditive, AdversarialFamily::kUnitDemand}) {
    if (ToString(f) == text) return f;
  }
  throw Error("unknown valuation family \"" + text + "\"");
}

AuctionKind KindOf(AdversarialFamily family) {
  return family == AdversarialFamily::kMuSingleMinded
             ? AuctionKind::kMultiUnit
             : AuctionKind::kCombinatorial;
}

std::int64_t AdversarialScale(const AuctionSetting& setting) {
  return std::max(setting.items, setting.players);
}

namespace {

std::vector<Valuation> SingleMindedSet(const AuctionSetting& s,
                                       AdversarialFamily family, int role) {
  const std::int64_t k = AdversarialScale(s);
  const int m = s.items;
  const Rational one(1), big(k * k + 1), all(k * k * k * k);
  // Role r (1-based) wants item e_min(r,m); 0-based that is min(r,m)-1.
  const int own = std::min(role, m) - 1;
  std::vector<Valuation> out;
  if (family == AdversarialFamily::kMuSingleMinded) {
    out.push_back(Valuation::SingleMindedMu(1, one, m, "one"));
    if (role <= 2) {
      out.push_back(Valuation::SingleMindedMu(1, big, m, "ONE"));
      out.push_back(Valuation::SingleMindedMu(m, all, m, "all"));
    }
    return out;
  }
  out.push_back(Valuation::SingleMindedCa(Bundle::Items({own}), one, m, "one"));
  if (role <= 2) {
    out.push_back(
        Valuation::SingleMindedCa(Bundle::Items({role - 1}), big, m, "ONE"));
    out.push_back(
        Valuation::SingleMindedCa(Bundle::All(s), all, m, "all"));
  }
  return out;
}

std::vector<Valuation> AdditiveSet(const AuctionSetting& s, bool unit_demand,
                                   int role) {
  const std::int64_t k = AdversarialScale(s);
  const int m = s.items;
  auto make = [&](std::vector<Rational> values, std::string name) {
    return unit_demand ? Valuation::UnitDemand(std::move(values), std::move(name))
                       : Valuation::Additive(std::move(values), std::move(name));
  };
  auto single = [&](int item, Rational value) {
    std::vector<Rational> values(m, Rational(0));
    values[item] = value;
    return values;
  };
  const int own = std::min(role, m) - 1;
  std::vector<Valuation> out;
  if (role > 2) {
    out.push_back(make(single(own, 1), "e" + std::to_string(own + 1) + "-one"));
    return out;
  }
  const int other = role == 1 ? 1 : 0;
  const Rational big(3 * k * k * k * k);
  const std::string own_name = "e" + std::to_string(own + 1);
  const std::string other_name = "e" + std::to_string(other + 1);
  out.push_back(make(single(own, 1), own_name + "-one"));
  out.push_back(make(single(own, big), own_name + "-big"));
  out.push_back(make(single(other, big), other_name + "-big"));
  std::vector<Rational> both(m, Rational(0));
  both[own] = Rational(2 * k * k + 2);
  both[other] = Rational(2 * k * k);
  out.push_back(make(both, "both"));
  return out;
}

}  // namespace

Domain AdversarialDomain(const AuctionSetting& setting,
                         AdversarialFamily family,
                         std::vector<PlayerId> roles) {
  setting.Validate();
  if (setting.items < 2 || setting.players < 2) {
    throw Error("adversarial domains need m >= 2 and n >= 2");
  }
  if (setting.kind != KindOf(family)) {
    throw Error("family " + ToString(family) + " needs a " +
                ToString(KindOf(family)) + " setting");
  }
  if (roles.empty()) {
    roles.resize(setting.players);
    std::iota(roles.begin(), roles.end(), 0);
  }
  std::vector<PlayerId> sorted = roles;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < setting.players; ++i) {
    if (static_cast<int>(sorted.size()) != setting.players || sorted[i] != i) {
      throw Error("roles must be a permutation of the players");
    }
  }
  Domain d;
  d.setting = setting;
  d.players.resize(setting.players);
  for (int r = 0; r < setting.players; ++r) {
    const int role = r + 1;
    switch (family) {
      case AdversarialFamily::kMuSingleMinded:
      case AdversarialFamily::kCaSingleMinded:
        d.players[roles[r]] = SingleMindedSet(setting, family, role);
        break;
      case AdversarialFamily::kAdditive:
        d.players[roles[r]] = AdditiveSet(setting, false, role);
        break;
      case AdversarialFamily::kUnitDemand:
        d.players[roles[r]] = AdditiveSet(setting, true, role);
        break;
    }
  }
  d.Validate();
  return d;
}

Domain RestrictedAdditiveDomain(const Rational& low, const Rational& high,
                                const AuctionSetting& setting) {
  setting.Validate();
  if (low <= 0) throw Error("x_l must be positive");
  if (low >= high) throw Error("x_l must be below x_h");
  if (setting.kind != AuctionKind::kCombinatorial) {
    throw Error("restricted additive domains need a combinatorial setting");
  }
  const Rational levels[3] = {Rational(0), low, high};
  std::vector<Valuation> all;
  std::uint64_t count = 1;
  for (int j = 0; j < setting.items; ++j) count *= 3;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<Rational> values(setting.items);
    std::uint64_t rest = code;
    for (int j = setting.items - 1; j >= 0; --j) {
      values[j] = levels[rest % 3];
      rest /= 3;
    }
    all.push_back(Valuation::Additive(std::move(values)));
  }
  Domain d{setting, std::vector<std::vector<Valuation>>(setting.players, all)};
  d.Validate();
  return d;
}

Domain IntegerValueDomain(int players, int max_value) {
  if (max_value < 1) throw Error("max value must be at least 1");
  AuctionSetting s{AuctionKind::kCombinatorial, players, 1};
  s.Validate();
  std::vector<Valuation> values;
  for (int x = 1; x <= max_value; ++x) {
    values.push_back(Valuation::Additive({Rational(x)}, std::to_string(x)));
  }
  return Domain{s, std::vector<std::vector<Valuation>>(players, values)};
}

}  // namespace osp
