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


#include <string>

#include "doctest.h"
#include "ospcheck/fixtures.hpp"
#include "ospcheck/io.hpp"
#include "ospcheck/mechanisms.hpp"
#include "ospcheck/search.hpp"

namespace osp {
namespace {

const std::string kData = OSPCHECK_TEST_DATA;

std::vector<std::string> ValuationNames(const Domain& d, PlayerId i) {
  std::vector<std::string> out;
  for (const Valuation& v : d.players[i]) out.push_back(v.name());
  return out;
}

TEST_CASE("hand-written two-duck file") {
  MechanismFile f = ParseMechanism(ReadTextFile(kData + "/two_duck.json"));
  const MechanismTree& t = f.tree;
  CHECK(t.leaves().size() == 4);
  REQUIRE(f.has_strategies());
  // Behavior profile (N1:"2"), (N2:"2", N3:"1").
  Behavior s(t, 0), j(t, 1);
  s.Set(t, t.FindByName("N1"), "2");
  j.Set(t, t.FindByName("N2"), "2");
  j.Set(t, t.FindByName("N3"), "1");
  std::vector<Behavior> b = {s, j};
  RunResult r = Run(t, b);
  std::vector<std::string> names;
  for (NodeId u : r.path) names.push_back(t.name(u));
  CHECK(names == std::vector<std::string>{"N1", "N3", "L3"});

  // Truthful play: the jacket duck (player 1) wins ties.
  MechanismBundle m = f.Bundle();
  const int winner[2][2] = {{1, 1}, {0, 1}};
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      NodeId leaf = Run(t, ProfileBehaviors(m.strategies, {a, c})).leaf;
      CHECK_FALSE(t.allocation(leaf)[winner[a][c]].empty());
    }
  }
  // Same object as the constructor builds.
  MechanismBundle built = TwoDuckAuction();
  CHECK(built.tree == t);
  CHECK(built.strategies == m.strategies);
  CHECK(ValuationNames(built.domain, 0) == ValuationNames(m.domain, 0));
}

TEST_CASE("mechanism round trips") {
  const AuctionSetting mu{AuctionKind::kMultiUnit, 2, 2};
  const AuctionSetting ca{AuctionKind::kCombinatorial, 2, 2};
  std::vector<MechanismBundle> all = {
      TwoDuckAuction(), SecondPriceSingleItem(3, 1, 0), AscendingSingleItem(3, 3),
      GrandBundleAscending(AdversarialDomain(mu, AdversarialFamily::kMuSingleMinded), 16),
      SerialPostedPrice(Rational(1), Rational(3), ca),
      SerialPostedPrice(Rational(1, 2), Rational(7, 3), ca)};
  for (const MechanismBundle& m : all) {
    const std::string text = SerializeMechanism(m);
    MechanismFile f = ParseMechanism(text);
    CHECK(f.tree == m.tree);
    REQUIRE(f.has_strategies());
    CHECK(*f.strategies == m.strategies);
    CHECK(SerializeMechanism(f.Bundle()) == text);
    // Tree-only form.
    const std::string bare = SerializeMechanism(m.tree);
    MechanismFile g = ParseMechanism(bare);
    CHECK(g.tree == m.tree);
    CHECK_FALSE(g.has_strategies());
    CHECK_FALSE(g.domain.has_value());
    CHECK_THROWS_AS(g.Bundle(), Error);
    CHECK(SerializeMechanism(g.tree) == bare);
  }
}

TEST_CASE("domain round trips") {
  const AuctionSetting mu{AuctionKind::kMultiUnit, 3, 2};
  const AuctionSetting ca{AuctionKind::kCombinatorial, 2, 3};
  std::vector<Domain> all = {
      AdversarialDomain(mu, AdversarialFamily::kMuSingleMinded),
      AddHatValuations(AdversarialDomain(mu, AdversarialFamily::kMuSingleMinded)),
      AdversarialDomain(ca, AdversarialFamily::kCaSingleMinded),
      AdversarialDomain(ca, AdversarialFamily::kAdditive),
      AdversarialDomain(ca, AdversarialFamily::kUnitDemand),
      RestrictedAdditiveDomain(Rational(1), Rational(3), ca),
      Domain{AuctionSetting{AuctionKind::kMultiUnit, 1, 2},
             {{Valuation::GeneralMu({Rational(0), Rational(3, 2), Rational(2)}, "g")}}},
      Domain{AuctionSetting{AuctionKind::kCombinatorial, 1, 1},
             {{Valuation::GeneralCa({Rational(0), Rational(5)}, "t")}}},
  };
  for (const Domain& d : all) {
    const std::string text = SerializeDomain(d);
    Domain back = ParseDomain(text);
    CHECK(SerializeDomain(back) == text);
    CHECK(back.Sizes() == d.Sizes());
    for (int i = 0; i < d.player_count(); ++i) {
      for (std::size_t a = 0; a < d.players[i].size(); ++a) {
        CHECK(back.players[i][a].Evaluate(Bundle::All(d.setting)) ==
              d.players[i][a].Evaluate(Bundle::All(d.setting)));
        CHECK(back.players[i][a].tag() == d.players[i][a].tag());
      }
    }
  }
}

std::string TwoDuckText() { return ReadTextFile(kData + "/two_duck.json"); }

std::string Replace(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

TEST_CASE("parse errors") {
  SUBCASE("syntax error has line and column") {
    try {
      ParseMechanism("{\n  \"format\": \"ospcheck-mechanism\",\n  \"version\" 1\n}");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 13);
      CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
  }
  SUBCASE("duplicate edge label names the node path") {
    std::string text = Replace(
        TwoDuckText(),
        "\"2\": {\"name\": \"L4\"",
        "\"1\": {\"name\": \"L4\"");
    try {
      ParseMechanism(text);
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.where() == "tree/edges/2/edges/1");
      CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
    }
  }
  SUBCASE("semantic errors carry the path") {
    auto where = [](const std::string& text) {
      try {
        ParseMechanism(text);
      } catch (const ParseError& e) {
        return e.where();
      }
      return std::string("no error");
    };
    const std::string base = TwoDuckText();
    CHECK(where(Replace(base, "\"speaker\": 1,\n        \"messages\": [\"1\", \"2\"],\n        \"edges\": {\n          \"1\": {\"name\": \"L3\"",
                        "\"speaker\": 7,\n        \"messages\": [\"1\", \"2\"],\n        \"edges\": {\n          \"1\": {\"name\": \"L3\"")) ==
          "tree/edges/2/speaker");
    CHECK(where(Replace(base, "\"allocation\": [[0], []]", "\"allocation\": [[0], [0]]")) ==
          "tree/edges/2/edges/1/allocation");
    CHECK(where(Replace(base, "\"payments\": [\"0\", \"2\"]", "\"payments\": [\"0\", \"2/0\"]")) ==
          "tree/edges/2/edges/2/payments/1");
    CHECK(where(Replace(base, "\"payments\": [\"0\", \"2\"]", "\"payments\": [\"0\"]")) ==
          "tree/edges/2/edges/2/payments");
    CHECK(where(Replace(base, "\"messages\": [\"1\", \"2\"],\n    \"edges\"",
                        "\"messages\": [\"1\", \"3\"],\n    \"edges\"")) ==
          "tree/messages/1");
    CHECK(where(Replace(base, "\"messages\": [\"1\", \"2\"],\n    \"edges\"",
                        "\"messages\": [\"1\"],\n    \"edges\"")) == "tree/messages");
    CHECK(where(Replace(base, "\"version\": 1", "\"version\": 2")) == "version");
    CHECK(where(Replace(base, "\"ospcheck-mechanism\"", "\"ospcheck-domain\"")) == "format");
    CHECK(where(Replace(base, "\"tag\": \"additive\"", "\"tag\": \"cubic\"")) == "domain/0/0");
  }
  SUBCASE("messages everywhere or nowhere") {
    std::string text = Replace(TwoDuckText(),
                               "\"messages\": [\"1\", \"2\"],\n    \"edges\"",
                               "\"edges\"");
    CHECK_THROWS_AS(ParseMechanism(text), ParseError);
  }
  SUBCASE("domain files") {
    CHECK_THROWS_AS(ParseDomain("{\"format\": \"ospcheck-domain\"}"), ParseError);
    CHECK_THROWS_AS(ParseDomain("[1, 2"), ParseError);
    CHECK_THROWS_AS(
        ParseDomain("{\"format\": \"ospcheck-domain\", \"version\": 1, "
                    "\"setting\": {\"kind\": \"multi-unit\", \"players\": 2, \"items\": 2}, "
                    "\"players\": [[{\"tag\": \"single-minded-mu\", \"quantity\": 1, \"value\": \"1\"}]]}"),
        ParseError);
  }
  CHECK_THROWS_AS(ReadTextFile(kData + "/missing.json"), Error);
}

}  // namespace
}  // namespace osp
