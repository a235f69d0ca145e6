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

#ifndef OSPCHECK_VALUATION_HPP_
#define OSPCHECK_VALUATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ospcheck/rational.hpp"
#include "ospcheck/setting.hpp"

namespace osp {

enum class ValuationTag {
  kAdditive,
  kUnitDemand,
  kSingleMindedCa,
  kSingleMindedMu,
  kGeneralCa,
  kGeneralMu,
};

std::string ToString(ValuationTag tag);
ValuationTag ParseValuationTag(const std::string& text);

// A normalized, monotone, nonnegative value function over bundles of one
// setting kind. Instances are immutable and validated on construction.
class Valuation {
 public:
  // Per-item values; v(S) = sum over S.
  static Valuation Additive(std::vector<Rational> item_values,
                            std::string name = {});
  // Per-item values; v(S) = max over S, 0 on the empty bundle.
  static Valuation UnitDemand(std::vector<Rational> item_values,
                              std::string name = {});
  // v(S) = value iff target ⊆ S. `items` is m.
  static Valuation SingleMindedCa(Bundle target, Rational value, int items,
                                  std::string name = {});
  // v(s) = value iff s >= quantity. `items` is m.
  static Valuation SingleMindedMu(int quantity, Rational value, int items,
                                  std::string name = {});
  // Explicit table indexed by item mask; size must be 2^m.
  static Valuation GeneralCa(std::vector<Rational> table,
                             std::string name = {});
  // Explicit table indexed by quantity 0..m; size must be m+1.
  static Valuation GeneralMu(std::vector<Rational> table,
                             std::string name = {});

  ValuationTag tag() const { return tag_; }
  AuctionKind kind() const;
  int items() const { return items_; }
  const std::string& name() const { return name_; }

  // Parameters; only those relevant to the tag are populated.
  const std::vector<Rational>& item_values() const { return item_values_; }
  const Bundle& target() const { return target_; }
  const Rational& value() const { return value_; }
  const std::vector<Rational>& table() const { return table_; }

  // Throws osp::Error if the bundle kind differs from kind() or the bundle
  // refers to items beyond m.
  Rational Evaluate(const Bundle& bundle) const;

  // Same function with every value multiplied by `factor` (> 0).
  Valuation Scaled(const Rational& factor) const;

  Valuation Renamed(std::string name) const;

  std::string Describe() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;

 private:
  Valuation() = default;
  void Validate() const;

  ValuationTag tag_ = ValuationTag::kAdditive;
  int items_ = 0;
  std::string name_;
  std::vector<Rational> item_values_;
  Bundle target_;
  Rational value_;
  std::vector<Rational> table_;
};

// A finite valuation list per player for one setting.
struct Domain {
  AuctionSetting setting;
  std::vector<std::vector<Valuation>> players;

  // Throws unless every player has at least one valuation and every
  // valuation matches the setting's kind and item count.
  void Validate() const;

  int player_count() const { return static_cast<int>(players.size()); }
  std::vector<int> Sizes() const;
  std::uint64_t ProfileCount() const;

  Domain Scaled(const Rational& factor) const;
};

// Mixed-radix enumeration of valuation profiles. Player 0 is the most
// significant digit, so profile order is lexicographic in player order.
class ProfileIndexer {
 public:
  explicit ProfileIndexer(std::vector<int> sizes);

  std::uint64_t count() const { return count_; }
  std::vector<int> Decode(std::uint64_t index) const;
  std::uint64_t Encode(const std::vector<int>& profile) const;
  const std::vector<int>& sizes() const { return sizes_; }

 private:
  std::vector<int> sizes_;
  std::vector<std::uint64_t> strides_;
  std::uint64_t count_ = 1;
};

}  // namespace osp

#endif  // OSPCHECK_VALUATION_HPP_
