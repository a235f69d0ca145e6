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

#ifndef OSPCHECK_SETTING_HPP_
#define OSPCHECK_SETTING_HPP_

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace osp {

// Every contract violation in the toolkit surfaces as an osp::Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PlayerId = int;

enum class AuctionKind { kCombinatorial, kMultiUnit };

std::string ToString(AuctionKind kind);
AuctionKind ParseAuctionKind(const std::string& text);

struct AuctionSetting {
  AuctionKind kind = AuctionKind::kCombinatorial;
  int players = 1;
  int items = 1;

  // Throws if players < 1, items < 1, or a combinatorial setting has more
  // items than fit in a bundle mask.
  void Validate() const;

  friend bool operator==(const AuctionSetting&, const AuctionSetting&) = default;
};

inline constexpr int kMaxCombinatorialItems = 20;

// A set of items (combinatorial) or a number of units (multi-unit).
// Combinatorial bundles are stored as a bit mask over item indices.
class Bundle {
 public:
  Bundle() = default;

  static Bundle Empty(AuctionKind kind) { return Bundle(kind, 0); }
  static Bundle FromMask(std::uint32_t mask) {
    return Bundle(AuctionKind::kCombinatorial, mask);
  }
  static Bundle Items(std::initializer_list<int> items);
  static Bundle Items(const std::vector<int>& items);
  static Bundle Quantity(int units);
  // The grand bundle: all m items, or all m units.
  static Bundle All(const AuctionSetting& setting);

  AuctionKind kind() const { return kind_; }
  std::uint32_t mask() const { return value_; }
  int quantity() const { return static_cast<int>(value_); }
  bool empty() const { return value_ == 0; }
  // Number of items or units.
  int size() const;
  std::vector<int> items() const;

  // True iff this bundle contains `other` (superset for items, >= for units).
  // Throws on a kind mismatch.
  bool Contains(const Bundle& other) const;

  // Throws if an item index is >= m or the quantity exceeds m.
  void Validate(const AuctionSetting& setting) const;

  std::string ToString() const;

  friend bool operator==(const Bundle&, const Bundle&) = default;
  friend auto operator<=>(const Bundle&, const Bundle&) = default;

 private:
  Bundle(AuctionKind kind, std::uint32_t value) : kind_(kind), value_(value) {}

  AuctionKind kind_ = AuctionKind::kCombinatorial;
  std::uint32_t value_ = 0;
};

// One bundle per player. Items may be left unallocated.
struct Allocation {
  std::vector<Bundle> bundles;

  static Allocation Empty(const AuctionSetting& setting);
  // Everything to `winner`, nothing to anyone else.
  static Allocation GrandBundleTo(const AuctionSetting& setting,
                                  PlayerId winner);

  const Bundle& operator[](PlayerId i) const { return bundles.at(i); }
  Bundle& operator[](PlayerId i) { return bundles.at(i); }

  // Throws unless there is one bundle per player of the right kind, item
  // bundles are pairwise disjoint, and unit counts sum to at most m.
  void Validate(const AuctionSetting& setting) const;

  std::string ToString() const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

// Every valid allocation of the setting in a fixed order. Combinatorial:
// each item goes to a player or to nobody ((n+1)^m entries). Multi-unit:
// every unit-count vector with sum <= m, lexicographic.
std::vector<Allocation> AllAllocations(const AuctionSetting& setting);

}  // namespace osp

#endif  // OSPCHECK_SETTING_HPP_
