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

#include "ospcheck/valuation.hpp"

#include <algorithm>

namespace osp {

std::string ToString(ValuationTag tag) {
  switch (tag) {
    case ValuationTag::kAdditive: return "additive";
    case ValuationTag::kUnitDemand: return "unit-demand";
    case ValuationTag::kSingleMindedCa: return "single-minded-ca";
    case ValuationTag::kSingleMindedMu: return "single-minded-mu";
    case ValuationTag::kGeneralCa: return "general-ca";
    case ValuationTag::kGeneralMu: return "general-mu";
  }
  return "?";
}

ValuationTag ParseValuationTag(const std::string& text) {
  for (auto tag : {ValuationTag::kAdditive, ValuationTag::kUnitDemand,
                   ValuationTag::kSingleMindedCa, ValuationTag::kSingleMindedMu,
                   ValuationTag::kGeneralCa, ValuationTag::kGeneralMu}) {
    if (ToString(tag) == text) return tag;
  }
  throw Error("unknown valuation tag \"" + text + "\"");
}

Valuation Valuation::Additive(std::vector<Rational> item_values,
                              std::string name) {
  Valuation v;
  v.tag_ = ValuationTag::kAdditive;
  v.items_ = static_cast<int>(item_values.size());
  v.item_values_ = std::move(item_values);
  v.name_ = std::move(name);
  v.Validate();
  return v;
}

Valuation Valuation::UnitDemand(std::vector<Rational> item_values,
                                std::string name) {
  Valuation v = Additive(std::move(item_values), std::move(name));
  v.tag_ = ValuationTag::kUnitDemand;
  return v;
}

Valuation Valuation::SingleMindedCa(Bundle target, Rational value, int items,
                                    std::string name) {
  Valuation v;
  v.tag_ = ValuationTag::kSingleMindedCa;
  v.items_ = items;
  v.target_ = target;
  v.value_ = value;
  v.name_ = std::move(name);
  v.Validate();
  return v;
}

Valuation Valuation::SingleMindedMu(int quantity, Rational value, int items,
                                    std::string name) {
  Valuation v;
  v.tag_ = ValuationTag::kSingleMindedMu;
  v.items_ = items;
  v.target_ = Bundle::Quantity(quantity);
  v.value_ = value;
  v.name_ = std::move(name);
  v.Validate();
  return v;
}

Valuation Valuation::GeneralCa(std::vector<Rational> table, std::string name) {
  Valuation v;
  v.tag_ = ValuationTag::kGeneralCa;
  int m = 0;
  while ((std::size_t{1} << m) < table.size()) ++m;
  if ((std::size_t{1} << m) != table.size() || table.size() < 2) {
    throw Error("general-ca table size " + std::to_string(table.size()) +
                " is not 2^m for some m >= 1");
  }
  v.items_ = m;
  v.table_ = std::move(table);
  v.name_ = std::move(name);
  v.Validate();
  return v;
}

Valuation Valuation::GeneralMu(std::vector<Rational> table, std::string name) {
  Valuation v;
  v.tag_ = ValuationTag::kGeneralMu;
  if (table.size() < 2) throw Error("general-mu table needs m+1 >= 2 entries");
  v.items_ = static_cast<int>(table.size()) - 1;
  v.table_ = std::move(table);
  v.name_ = std::move(name);
  v.Validate();
  return v;
}

AuctionKind Valuation::kind() const {
  return (tag_ == ValuationTag::kSingleMindedMu ||
          tag_ == ValuationTag::kGeneralMu)
             ? AuctionKind::kMultiUnit
             : AuctionKind::kCombinatorial;
}

void Valuation::Validate() const {
  const std::string who = name_.empty() ? ToString(tag_) : name_;
  if (items_ < 1) throw Error(who + ": valuation needs at least one item");
  if (kind() == AuctionKind::kCombinatorial && items_ > kMaxCombinatorialItems) {
    throw Error(who + ": too many items");
  }
  auto nonneg = [&](const Rational& r) {
    if (r < 0) throw Error(who + ": negative value " + ToString(r));
  };
  switch (tag_) {
    case ValuationTag::kAdditive:
    case ValuationTag::kUnitDemand:
      std::for_each(item_values_.begin(), item_values_.end(), nonneg);
      break;
    case ValuationTag::kSingleMindedCa:
      nonneg(value_);
      if (target_.kind() != AuctionKind::kCombinatorial) {
        throw Error(who + ": single-minded-ca target must be an item set");
      }
      target_.Validate({AuctionKind::kCombinatorial, 1, items_});
      if (target_.empty() && value_ != 0) {
        throw Error(who + ": not normalized (empty target bundle)");
      }
      break;
    case ValuationTag::kSingleMindedMu:
      nonneg(value_);
      target_.Validate({AuctionKind::kMultiUnit, 1, items_});
      if (target_.empty() && value_ != 0) {
        throw Error(who + ": not normalized (target quantity 0)");
      }
      break;
    case ValuationTag::kGeneralCa: {
      std::for_each(table_.begin(), table_.end(), nonneg);
      if (table_[0] != 0) throw Error(who + ": not normalized, v(empty) != 0");
      const std::uint32_t full = 1u << items_;
      for (std::uint32_t s = 0; s < full; ++s) {
        for (int j = 0; j < items_; ++j) {
          std::uint32_t t = s | (1u << j);
          if (table_[s] > table_[t]) {
            throw Error(who + ": monotonicity violated between masks " +
                        std::to_string(s) + " and " + std::to_string(t));
          }
        }
      }
      break;
    }
    case ValuationTag::kGeneralMu:
      std::for_each(table_.begin(), table_.end(), nonneg);
      if (table_[0] != 0) throw Error(who + ": not normalized, v(0) != 0");
      for (std::size_t q = 1; q < table_.size(); ++q) {
        if (table_[q - 1] > table_[q]) {
          throw Error(who + ": monotonicity violated between quantities " +
                      std::to_string(q - 1) + " and " + std::to_string(q));
        }
      }
      break;
  }
}

Rational Valuation::Evaluate(const Bundle& bundle) const {
  if (bundle.kind() != kind()) {
    throw Error("cannot evaluate " + ToString(tag_) + " valuation on a " +
                ToString(bundle.kind()) + " bundle");
  }
  bundle.Validate({kind(), 1, items_});
  switch (tag_) {
    case ValuationTag::kAdditive: {
      Rational sum = 0;
      for (int j : bundle.items()) sum += item_values_[j];
      return sum;
    }
    case ValuationTag::kUnitDemand: {
      Rational best = 0;
      for (int j : bundle.items()) best = std::max(best, item_values_[j]);
      return best;
    }
    case ValuationTag::kSingleMindedCa:
    case ValuationTag::kSingleMindedMu:
      return bundle.Contains(target_) ? value_ : Rational(0);
    case ValuationTag::kGeneralCa:
      return table_[bundle.mask()];
    case ValuationTag::kGeneralMu:
      return table_[bundle.quantity()];
  }
  return 0;
}

Valuation Valuation::Scaled(const Rational& factor) const {
  if (factor <= 0) throw Error("scale factor must be positive");
  Valuation v = *this;
  for (auto& x : v.item_values_) x *= factor;
  for (auto& x : v.table_) x *= factor;
  v.value_ *= factor;
  return v;
}

Valuation Valuation::Renamed(std::string name) const {
  Valuation v = *this;
  v.name_ = std::move(name);
  return v;
}

std::string Valuation::Describe() const {
  std::string out = name_.empty() ? ToString(tag_) : name_ + " [" + ToString(tag_) + "]";
  auto list = [](const std::vector<Rational>& xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) s += ", ";
      s += ToString(xs[i]);
    }
    return s + ")";
  };
  switch (tag_) {
    case ValuationTag::kAdditive:
    case ValuationTag::kUnitDemand:
      return out + " " + list(item_values_);
    case ValuationTag::kSingleMindedCa:
    case ValuationTag::kSingleMindedMu:
      return out + " " + ToString(value_) + " for " + target_.ToString();
    case ValuationTag::kGeneralCa:
    case ValuationTag::kGeneralMu:
      return out + " " + list(table_);
  }
  return out;
}

void Domain::Validate() const {
  setting.Validate();
  if (static_cast<int>(players.size()) != setting.players) {
    throw Error("domain lists " + std::to_string(players.size()) +
                " players but the setting has " +
                std::to_string(setting.players));
  }
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (players[i].empty()) {
      throw Error("player " + std::to_string(i) + " has an empty domain");
    }
    for (const Valuation& v : players[i]) {
      if (v.kind() != setting.kind || v.items() != setting.items) {
        throw Error("valuation " + v.Describe() + " of player " +
                    std::to_string(i) + " does not fit the setting");
      }
    }
  }
}

std::vector<int> Domain::Sizes() const {
  std::vector<int> sizes;
  for (const auto& p : players) sizes.push_back(static_cast<int>(p.size()));
  return sizes;
}

std::uint64_t Domain::ProfileCount() const {
  return ProfileIndexer(Sizes()).count();
}

Domain Domain::Scaled(const Rational& factor) const {
  Domain out = *this;
  for (auto& p : out.players) {
    for (auto& v : p) v = v.Scaled(factor);
  }
  return out;
}

ProfileIndexer::ProfileIndexer(std::vector<int> sizes)
    : sizes_(std::move(sizes)), strides_(sizes_.size(), 1) {
  for (int i = static_cast<int>(sizes_.size()) - 1; i >= 0; --i) {
    if (sizes_[i] < 1) throw Error("empty factor in profile product");
    strides_[i] = count_;
    count_ *= static_cast<std::uint64_t>(sizes_[i]);
  }
}

std::vector<int> ProfileIndexer::Decode(std::uint64_t index) const {
  std::vector<int> profile(sizes_.size());
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    profile[i] = static_cast<int>(index / strides_[i]);
    index %= strides_[i];
  }
  return profile;
}

std::uint64_t ProfileIndexer::Encode(const std::vector<int>& profile) const {
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    index += strides_[i] * static_cast<std::uint64_t>(profile.at(i));
  }
  return index;
}

}  // namespace osp
