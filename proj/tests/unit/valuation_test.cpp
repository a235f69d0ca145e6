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


#include <random>

#include "doctest.h"
#include "ospcheck/checks.hpp"
#include "ospcheck/fixtures.hpp"
#include "ospcheck/valuation.hpp"
#include "support/oracles.hpp"

namespace osp {
namespace {

namespace fx = fixture_index;

const AuctionSetting kCa2{AuctionKind::kCombinatorial, 2, 2};
const AuctionSetting kMu2{AuctionKind::kMultiUnit, 2, 2};

TEST_CASE("evaluate per family") {
  Bundle both = Bundle::Items({0, 1});
  CHECK(Valuation::Additive({Rational(3), Rational(1)}).Evaluate(both) == 4);
  CHECK(Valuation::UnitDemand({Rational(3), Rational(1)}).Evaluate(both) == 3);
  CHECK(Valuation::UnitDemand({Rational(3), Rational(1)})
            .Evaluate(Bundle::Items({})) == 0);
  Valuation all = Valuation::SingleMindedMu(2, Rational(16), 2);
  CHECK(all.Evaluate(Bundle::Quantity(1)) == 0);
  CHECK(all.Evaluate(Bundle::Quantity(2)) == 16);
  Valuation sm = Valuation::SingleMindedCa(Bundle::Items({0}), Rational(5), 2);
  CHECK(sm.Evaluate(both) == 5);
  CHECK(sm.Evaluate(Bundle::Items({1})) == 0);
  CHECK_THROWS(sm.Evaluate(Bundle::Quantity(1)));
}

TEST_CASE("constructors enforce normalization and monotonicity") {
  CHECK_THROWS_WITH(
      Valuation::GeneralCa({Rational(1), Rational(1), Rational(1), Rational(1)}),
      doctest::Contains("not normalized"));
  CHECK_THROWS_WITH(Valuation::GeneralMu({Rational(0), Rational(2), Rational(1)}),
                    doctest::Contains("monotonicity"));
  CHECK_THROWS(Valuation::Additive({Rational(-1)}));
  CHECK_THROWS(Valuation::SingleMindedCa(Bundle::Items({}), Rational(1), 2));
  CHECK_THROWS(Valuation::GeneralCa({Rational(0), Rational(1), Rational(1)}));
}

TEST_CASE("random valuations are monotone and agree on singletons") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 4;
    std::vector<Rational> xs;
    for (int j = 0; j < m; ++j) xs.push_back(Rational(rng() % 7));
    Valuation add = Valuation::Additive(xs);
    Valuation ud = Valuation::UnitDemand(xs);
    for (int j = 0; j < m; ++j) {
      CHECK(add.Evaluate(Bundle::Items({j})) == ud.Evaluate(Bundle::Items({j})));
    }
    const std::uint32_t full = 1u << m;
    for (std::uint32_t s = 0; s < full; ++s) {
      for (int j = 0; j < m; ++j) {
        Bundle a = Bundle::FromMask(s), b = Bundle::FromMask(s | (1u << j));
        CHECK(add.Evaluate(a) <= add.Evaluate(b));
        CHECK(ud.Evaluate(a) <= ud.Evaluate(b));
      }
    }
  }
}

TEST_CASE("multi-unit single-minded fixtures") {
  Domain d = AdversarialDomain(kMu2, AdversarialFamily::kMuSingleMinded);
  REQUIRE(d.players[0].size() == 3);
  Bundle two = Bundle::Quantity(2);
  CHECK(d.players[0][fx::kOne].Evaluate(two) == 1);
  CHECK(d.players[0][fx::kOneBig].Evaluate(two) == 5);
  CHECK(d.players[0][fx::kAll].Evaluate(two) == 16);
  CHECK(d.players[0][fx::kAll].Evaluate(Bundle::Quantity(1)) == 0);
  CHECK(d.players[0][fx::kOneBig].Evaluate(Bundle::Quantity(1)) == 5);

  Domain d3 = AdversarialDomain({AuctionKind::kMultiUnit, 3, 2},
                                AdversarialFamily::kMuSingleMinded);
  CHECK(d3.players[2].size() == 1);
  // k = 3 now.
  CHECK(d3.players[0][fx::kOneBig].value() == 10);
  CHECK(d3.players[0][fx::kAll].value() == 81);

  CHECK_THROWS(AdversarialDomain({AuctionKind::kMultiUnit, 1, 2},
                                 AdversarialFamily::kMuSingleMinded));
  CHECK_THROWS(AdversarialDomain({AuctionKind::kMultiUnit, 2, 1},
                                 AdversarialFamily::kMuSingleMinded));
  CHECK_THROWS(AdversarialDomain(kCa2, AdversarialFamily::kMuSingleMinded));
}

TEST_CASE("fixture values keep their ordering") {
  for (int k = 2; k <= 5; ++k) {
    Domain d = AdversarialDomain({AuctionKind::kMultiUnit, k, k},
                                 AdversarialFamily::kMuSingleMinded);
    CHECK(d.players[0][fx::kOne].value() < d.players[0][fx::kOneBig].value());
    CHECK(d.players[0][fx::kOneBig].value() < d.players[0][fx::kAll].value());
    Domain a = AdversarialDomain({AuctionKind::kCombinatorial, k, k},
                                 AdversarialFamily::kAdditive);
    const auto& both = a.players[0][fx::kBoth].item_values();
    CHECK(both[1] < both[0]);
    CHECK(both[0] < a.players[0][fx::kOwnBig].item_values()[0]);
  }
}

TEST_CASE("combinatorial single-minded fixtures") {
  AuctionSetting s{AuctionKind::kCombinatorial, 3, 2};
  Domain d = AdversarialDomain(s, AdversarialFamily::kCaSingleMinded);
  // k = 3.
  CHECK(d.players[0][fx::kOne].target() == Bundle::Items({0}));
  CHECK(d.players[1][fx::kOne].target() == Bundle::Items({1}));
  CHECK(d.players[2][fx::kOne].target() == Bundle::Items({1}));
  CHECK(d.players[2].size() == 1);
  CHECK(d.players[0][fx::kOneBig].target() == Bundle::Items({0}));
  CHECK(d.players[1][fx::kOneBig].target() == Bundle::Items({1}));
  CHECK(d.players[0][fx::kOneBig].value() == 10);
  CHECK(d.players[1][fx::kAll].target() == Bundle::Items({0, 1}));
  CHECK(d.players[1][fx::kAll].value() == 81);
}

TEST_CASE("roles permute the distinguished players") {
  AuctionSetting s{AuctionKind::kMultiUnit, 3, 2};
  Domain d = AdversarialDomain(s, AdversarialFamily::kMuSingleMinded, {2, 0, 1});
  CHECK(d.players[2].size() == 3);
  CHECK(d.players[0].size() == 3);
  CHECK(d.players[1].size() == 1);
  CHECK_THROWS(AdversarialDomain(s, AdversarialFamily::kMuSingleMinded, {0, 0, 1}));
  CHECK_THROWS(AdversarialDomain(s, AdversarialFamily::kMuSingleMinded, {0, 1}));
}

TEST_CASE("additive and unit-demand fixtures at k = 2") {
  for (auto fam : {AdversarialFamily::kAdditive, AdversarialFamily::kUnitDemand}) {
    Domain d = AdversarialDomain(kCa2, fam);
    const auto& p1 = d.players[0];
    const auto& p2 = d.players[1];
    REQUIRE(p1.size() == 4);
    using V = std::vector<Rational>;
    CHECK(p1[fx::kOwnOne].item_values() == V{1, 0});
    CHECK(p1[fx::kOwnBig].item_values() == V{48, 0});
    CHECK(p1[fx::kOtherBig].item_values() == V{0, 48});
    CHECK(p1[fx::kBoth].item_values() == V{10, 8});
    CHECK(p2[fx::kOwnOne].item_values() == V{0, 1});
    CHECK(p2[fx::kOwnBig].item_values() == V{0, 48});
    CHECK(p2[fx::kOtherBig].item_values() == V{48, 0});
    CHECK(p2[fx::kBoth].item_values() == V{8, 10});
    const ValuationTag tag = fam == AdversarialFamily::kAdditive
                                 ? ValuationTag::kAdditive
                                 : ValuationTag::kUnitDemand;
    for (const auto& v : p1) CHECK(v.tag() == tag);
  }
  Domain unit = AdversarialDomain(kCa2, AdversarialFamily::kUnitDemand);
  CHECK(unit.players[0][fx::kBoth].Evaluate(Bundle::Items({0, 1})) == 10);
  Domain add = AdversarialDomain(kCa2, AdversarialFamily::kAdditive);
  CHECK(add.players[0][fx::kBoth].Evaluate(Bundle::Items({0, 1})) == 18);
}

TEST_CASE("players beyond m want the last item") {
  AuctionSetting s{AuctionKind::kCombinatorial, 4, 2};
  Domain d = AdversarialDomain(s, AdversarialFamily::kAdditive);
  using V = std::vector<Rational>;
  CHECK(d.players[2][0].item_values() == V{0, 1});
  CHECK(d.players[3][0].item_values() == V{0, 1});
  // k = 4: 3k^4 = 768, 2k^2+2 = 34.
  CHECK(d.players[0][fx::kOwnBig].item_values()[0] == 768);
  CHECK(d.players[0][fx::kBoth].item_values() == V{34, 32});
}

TEST_CASE("restricted additive domain") {
  Domain d = RestrictedAdditiveDomain(Rational(1), Rational(3), kCa2);
  REQUIRE(d.players[0].size() == 9);
  using V = std::vector<Rational>;
  bool zero = false, mixed = false;
  for (const auto& v : d.players[0]) {
    zero = zero || v.item_values() == V{0, 0};
    mixed = mixed || v.item_values() == V{3, 1};
  }
  CHECK(zero);
  CHECK(mixed);
  CHECK_THROWS(RestrictedAdditiveDomain(Rational(3), Rational(3), kCa2));
  CHECK_THROWS(RestrictedAdditiveDomain(Rational(0), Rational(3), kCa2));
  CHECK_THROWS(RestrictedAdditiveDomain(Rational(1), Rational(3), kMu2));
}

TEST_CASE("optimal welfare matches independent oracles") {
  Domain add = AdversarialDomain(kCa2, AdversarialFamily::kAdditive);
  for (const auto& a : add.players[0]) {
    for (const auto& b : add.players[1]) {
      std::vector<Valuation> p{a, b};
      CHECK(OptWelfare(p, kCa2).first == testing::AdditiveClosedForm(p));
    }
  }
  Domain mu = AdversarialDomain(kMu2, AdversarialFamily::kMuSingleMinded);
  std::vector<Valuation> p{mu.players[0][fx::kAll], mu.players[1][fx::kOne]};
  auto [opt, alloc] = OptWelfare(p, kMu2);
  CHECK(opt == 16);
  CHECK(alloc[0] == Bundle::Quantity(2));
  std::vector<Valuation> zeros{Valuation::Additive({0, 0}),
                               Valuation::Additive({0, 0})};
  CHECK(OptWelfare(zeros, kCa2).first == 0);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    testing::RandomInstance inst = testing::MakeRandomInstance(rng);
    std::vector<Valuation> prof;
    for (const auto& vs : inst.domain.players) prof.push_back(vs.front());
    CHECK(OptWelfare(prof, inst.domain.setting).first ==
          testing::BruteForceOpt(prof, inst.domain.setting));
  }
}

}  // namespace
}  // namespace osp
