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

#include "ospcheck/setting.hpp"

#include <bit>

namespace osp {

std::string ToString(AuctionKind kind) {
  return kind == AuctionKind::kCombinatorial ? "combinatorial" : "multi-unit";
}

AuctionKind ParseAuctionKind(const std::string& text) {
  if (text == "combinatorial") return AuctionKind::kCombinatorial;
  if (text == "multi-unit") return AuctionKind::kMultiUnit;
  throw Error("unknown auction kind \"" + text + "\"");
}

void AuctionSetting::Validate() const {
  if (players < 1) throw Error("setting needs at least one player");
  if (items < 1) throw Error("setting needs at least one item");
  if (kind == AuctionKind::kCombinatorial && items > kMaxCombinatorialItems) {
    throw Error("combinatorial settings support at most " +
                std::to_string(kMaxCombinatorialItems) + " items");
  }
}

Bundle Bundle::Items(std::initializer_list<int> items) {
  return Items(std::vector<int>(items));
}

Bundle Bundle::Items(const std::vector<int>& items) {
  std::uint32_t mask = 0;
  for (int item : items) {
    if (item < 0 || item >= kMaxCombinatorialItems) {
      throw Error("item index " + std::to_string(item) + " out of range");
    }
    std::uint32_t bit = 1u << item;
    if (mask & bit) {
      throw Error("item " + std::to_string(item) + " listed twice in bundle");
    }
    mask |= bit;
  }
  return Bundle(AuctionKind::kCombinatorial, mask);
}

Bundle Bundle::Quantity(int units) {
  if (units < 0) throw Error("negative unit count");
  return Bundle(AuctionKind::kMultiUnit, static_cast<std::uint32_t>(units));
}

Bundle Bundle::All(const AuctionSetting& setting) {
  if (setting.kind == AuctionKind::kMultiUnit) return Quantity(setting.items);
  return FromMask((1u << setting.items) - 1u);
}

int Bundle::size() const {
  if (kind_ == AuctionKind::kMultiUnit) return quantity();
  return std::popcount(value_);
}

std::vector<int> Bundle::items() const {
  std::vector<int> out;
  if (kind_ != AuctionKind::kCombinatorial) return out;
  for (int j = 0; j < 32; ++j) {
    if (value_ & (1u << j)) out.push_back(j);
  }
  return out;
}

bool Bundle::Contains(const Bundle& other) const {
  if (kind_ != other.kind_) throw Error("bundle kind mismatch");
  if (kind_ == AuctionKind::kMultiUnit) return value_ >= other.value_;
  return (value_ & other.value_) == other.value_;
}

void Bundle::Validate(const AuctionSetting& setting) const {
  if (kind_ != setting.kind) {
    throw Error("bundle kind " + osp::ToString(kind_) +
                " does not match setting kind " + osp::ToString(setting.kind));
  }
  if (kind_ == AuctionKind::kMultiUnit) {
    if (quantity() > setting.items) {
      throw Error("bundle of " + std::to_string(quantity()) +
                  " units exceeds m=" + std::to_string(setting.items));
    }
  } else if (setting.items < 32 && (value_ >> setting.items) != 0) {
    throw Error("bundle " + ToString() + " names an item beyond m=" +
                std::to_string(setting.items));
  }
}

std::string Bundle::ToString() const {
  if (kind_ == AuctionKind::kMultiUnit) return std::to_string(quantity());
  std::string out = "{";
  bool first = true;
  for (int item : items()) {
    if (!first) out += ",";
    out += std::to_string(item);
    first = false;
  }
  return out + "}";
}

Allocation Allocation::Empty(const AuctionSetting& setting) {
  return Allocation{
      std::vector<Bundle>(setting.players, Bundle::Empty(setting.kind))};
}

Allocation Allocation::GrandBundleTo(const AuctionSetting& setting,
                                     PlayerId winner) {
  Allocation out = Empty(setting);
  out[winner] = Bundle::All(setting);
  return out;
}

void Allocation::Validate(const AuctionSetting& setting) const {
  if (static_cast<int>(bundles.size()) != setting.players) {
    throw Error("allocation has " + std::to_string(bundles.size()) +
                " bundles for " + std::to_string(setting.players) + " players");
  }
  std::uint32_t seen = 0;
  int units = 0;
  for (const Bundle& b : bundles) {
    b.Validate(setting);
    if (setting.kind == AuctionKind::kMultiUnit) {
      units += b.quantity();
    } else {
      if (seen & b.mask()) {
        throw Error("allocation " + ToString() + " gives an item twice");
      }
      seen |= b.mask();
    }
  }
  if (units > setting.items) {
    throw Error("allocation " + ToString() + " hands out " +
                std::to_string(units) + " units but m=" +
                std::to_string(setting.items));
  }
}

std::string Allocation::ToString() const {
  std::string out = "(";
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    if (i) out += ", ";
    out += bundles[i].ToString();
  }
  return out + ")";
}

namespace {

void MultiUnitSplits(const AuctionSetting& s, int player, int left,
                     std::vector<int>& acc, std::vector<Allocation>& out) {
  if (player == s.players) {
    Allocation a;
    for (int q : acc) a.bundles.push_back(Bundle::Quantity(q));
    out.push_back(std::move(a));
    return;
  }
  for (int q = 0; q <= left; ++q) {
    acc.push_back(q);
    MultiUnitSplits(s, player + 1, left - q, acc, out);
    acc.pop_back();
  }
}

}  // namespace

std::vector<Allocation> AllAllocations(const AuctionSetting& setting) {
  setting.Validate();
  std::vector<Allocation> out;
  if (setting.kind == AuctionKind::kMultiUnit) {
    std::vector<int> acc;
    MultiUnitSplits(setting, 0, setting.items, acc, out);
    return out;
  }
  // Digit j of the counter is the owner of item j; digit value n = unsold.
  const int base = setting.players + 1;
  std::uint64_t total = 1;
  for (int j = 0; j < setting.items; ++j) total *= base;
  out.reserve(total);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> masks(setting.players, 0);
    std::uint64_t rest = code;
    for (int j = setting.items - 1; j >= 0; --j) {
      int owner = static_cast<int>(rest % base);
      rest /= base;
      if (owner < setting.players) masks[owner] |= 1u << j;
    }
    Allocation a;
    for (auto m : masks) a.bundles.push_back(Bundle::FromMask(m));
    out.push_back(std::move(a));
  }
  return out;
}

}  // namespace osp
