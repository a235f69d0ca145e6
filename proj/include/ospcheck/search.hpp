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


#ifndef OSPCHECK_SEARCH_HPP_
#define OSPCHECK_SEARCH_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ospcheck/behavior.hpp"
#include "ospcheck/checks.hpp"
#include "ospcheck/fixtures.hpp"
#include "ospcheck/rational.hpp"
#include "ospcheck/valuation.hpp"

namespace osp {

// Normalized mechanisms over a finite domain: every internal node splits
// the speaker's consistent valuation set into at least two blocks (one
// message per block, labelled by the block's domain indices, e.g. "0,2"),
// and every leaf carries an allocation and one grid payment per player.
// Players follow block membership.
struct SearchSpace {
  Domain domain;
  std::vector<Rational> grid;
  // Maximum number of internal nodes on a root-leaf path. Negative selects
  // the default: the total number of valuations across players.
  int max_depth = -1;

  // Throws on an empty grid, an invalid domain, or more than 16 valuations
  // for one player.
  void Validate() const;
  int EffectiveDepth() const;
};

// 0, 1, k^2, k^2+1, k^4 for the single-minded families and 0, 1, 2k^2,
// 2k^2+2, 2k^3+k^2 for additive and unit-demand, plus the integers up to 5.
// Sorted, without duplicates.
std::vector<Rational> DefaultPaymentGrid(AdversarialFamily family,
                                         const AuctionSetting& setting);

enum class SearchOutcome { kNoCounterexample, kCounterexample, kBudgetExhausted };
std::string ToString(SearchOutcome outcome);

struct SearchStats {
  // Complete mechanisms that went through the final check.
  std::uint64_t examined = 0;
  // Partial mechanisms discarded on a leaf-pair incentive violation.
  std::uint64_t pruned = 0;
  // Complete mechanisms passing OSP, IR, NNT and the ratio bound.
  std::uint64_t survivors = 0;
};

struct SearchOptions {
  // Off: complete every labeling and run the checkers on it. The per-leaf
  // IR, NNT and ratio filters stay on in both modes.
  bool pruning = true;
  // Wall-clock limit in seconds; 0 means none.
  double budget_seconds = 0;
  // 0 reads OSPCHECK_WORKERS, defaulting to 1.
  int workers = 0;
  // Keep going after the first survivor, e.g. to audit all of them.
  bool stop_at_first = true;
  // Called for every survivor in enumeration order (single worker only).
  std::function<void(const MechanismBundle&)> on_survivor;
};

struct SearchVerdict {
  SearchOutcome outcome = SearchOutcome::kNoCounterexample;
  std::optional<MechanismBundle> counterexample;
  std::optional<RatioReport> counterexample_ratio;
  SearchStats stats;
  double elapsed_seconds = 0;
  Rational target{2};
  bool pruning = true;
  int workers = 1;
  std::string class_description;
  std::string caveat;
};

// Looks for a normalized mechanism that is OSP, IR and NNT with welfare
// ratio strictly below `target`. Throws if target <= 1 or the space is
// invalid.
SearchVerdict FalsifyImpossibility(const SearchSpace& space,
                                   const Rational& target,
                                   const SearchOptions& options = {});

// Streams every normalized mechanism in the space, in a fixed order, with
// no property filtering. `visit` returns false to stop early.
void EnumerateNormalizedMechanisms(
    const SearchSpace& space,
    const std::function<bool(const MechanismBundle&)>& visit);

// Number of normalized tree shapes (leaves unlabelled) for the given
// per-player domain sizes.
std::uint64_t CountTreeShapes(const std::vector<int>& sizes, int max_depth);

// Valuations k^2 for all m units, used next to the multi-unit fixtures to
// pin the price of the grand bundle.
Valuation HatValuation(const AuctionSetting& setting);

// Adds the hat valuation to both distinguished players of a multi-unit
// fixture domain. The payment-bound argument (winning all units under
// (all, one, ...) costs at most k^2) compares "all" with "hat", so the
// impossibility only bites once "hat" is in the domain; over the bare
// fixture sets a ratio-1 OSP mechanism exists.
Domain AddHatValuations(const Domain& fixture);

// Multi-unit domain {one, all, hat} for the first player and {one} for the
// others.
Domain PaymentBoundWitnessDomain(const AuctionSetting& setting);

// Payment bounds on a multi-unit mechanism whose domain uses the fixture
// names "one" and "all": at the all-"one" profile every winner pays at most
// 1, and a player with "all" facing "one" elsewhere who wins every unit
// pays at most k^2. Profiles missing from the domain are skipped.
struct PaymentBoundReport {
  int profiles_checked = 0;
  bool pass = true;
  std::string detail;
};
PaymentBoundReport AuditPaymentBounds(const MechanismBundle& bundle);

}  // namespace osp

#endif  // OSPCHECK_SEARCH_HPP_
