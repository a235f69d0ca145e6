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


#include "ospcheck/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace osp {

namespace {

using Json = nlohmann::json;
using OutJson = nlohmann::ordered_json;

constexpr const char* kMechanismFormat = "ospcheck-mechanism";
constexpr const char* kDomainFormat = "ospcheck-domain";
constexpr int kVersion = 1;

[[noreturn]] void Fail(const std::string& where, const std::string& message) {
  throw ParseError(where + ": " + message, 0, 0, where);
}

// Line and column of a 1-based byte offset.
std::pair<int, int> LineColumn(std::string_view text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Parses JSON, rejecting duplicate object keys (nlohmann keeps the last).
Json ParseJson(std::string_view text) {
  struct Frame {
    bool object = true;
    std::set<std::string> keys;
    std::string name;  // current key or array index
    int index = 0;
  };
  std::vector<Frame> stack;
  auto path = [&] {
    std::string p;
    for (const Frame& f : stack) {
      if (f.name.empty()) continue;
      p += (p.empty() ? "" : "/") + f.name;
    }
    return p.empty() ? std::string("(root)") : p;
  };
  auto child_done = [&] {
    if (!stack.empty() && !stack.back().object) {
      stack.back().name = std::to_string(++stack.back().index);
    }
  };
  using Event = nlohmann::json::parse_event_t;
  auto cb = [&](int, Event event, Json& parsed) {
    switch (event) {
      case Event::object_start:
        stack.push_back({true, {}, {}, 0});
        break;
      case Event::array_start:
        stack.push_back({false, {}, "0", 0});
        break;
      case Event::key: {
        Frame& f = stack.back();
        const std::string key = parsed.get<std::string>();
        if (!f.keys.insert(key).second) {
          f.name = key;
          throw ParseError(path() + ": duplicate key \"" + key + "\"", 0, 0,
                           path());
        }
        f.name = key;
        break;
      }
      case Event::object_end:
      case Event::array_end:
        stack.pop_back();
        child_done();
        break;
      case Event::value:
        child_done();
        break;
    }
    return true;
  };
  try {
    return Json::parse(text.begin(), text.end(), cb);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, column] = LineColumn(text, e.byte);
    std::string what = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
    auto cut = what.find("] ");
    if (cut != std::string::npos) what = what.substr(cut + 2);
    throw ParseError("syntax error at line " + std::to_string(line) +
                         ", column " + std::to_string(column) + ": " + what,
                     line, column);
  }
}

const Json& Field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) Fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) Fail(where, std::string("missing \"") + key + "\"");
  return *it;
}

int GetInt(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) Fail(where, "expected an integer");
  return j.get<int>();
}

std::string GetString(const Json& j, const std::string& where) {
  if (!j.is_string()) Fail(where, "expected a string");
  return j.get<std::string>();
}

const Json& GetArray(const Json& j, const std::string& where) {
  if (!j.is_array()) Fail(where, "expected an array");
  return j;
}

Rational GetRational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  const std::string s = GetString(j, where);
  try {
    return ParseRational(s);
  } catch (const std::exception&) {
    Fail(where, "bad rational \"" + s + "\"");
  }
}

std::vector<Rational> GetRationals(const Json& j, const std::string& where) {
  std::vector<Rational> out;
  int k = 0;
  for (const Json& x : GetArray(j, where)) {
    out.push_back(GetRational(x, where + "/" + std::to_string(k++)));
  }
  return out;
}

void CheckHeader(const Json& j, const char* format) {
  if (!j.is_object()) Fail("(root)", "expected an object");
  if (GetString(Field(j, "format", "(root)"), "format") != format) {
    Fail("format", std::string("expected \"") + format + "\"");
  }
  if (GetInt(Field(j, "version", "(root)"), "version") != kVersion) {
    Fail("version", "unsupported version");
  }
}

AuctionSetting GetSetting(const Json& j) {
  const std::string w = "setting";
  AuctionSetting s;
  try {
    s.kind = ParseAuctionKind(GetString(Field(j, "kind", w), w + "/kind"));
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    Fail(w + "/kind", e.what());
  }
  s.players = GetInt(Field(j, "players", w), w + "/players");
  s.items = GetInt(Field(j, "items", w), w + "/items");
  try {
    s.Validate();
  } catch (const Error& e) {
    Fail(w, e.what());
  }
  return s;
}

OutJson SettingJson(const AuctionSetting& s) {
  OutJson j;
  j["kind"] = ToString(s.kind);
  j["players"] = s.players;
  j["items"] = s.items;
  return j;
}

OutJson RationalsJson(const std::vector<Rational>& xs) {
  OutJson j = OutJson::array();
  for (const Rational& x : xs) j.push_back(ToString(x));
  return j;
}

OutJson BundleJson(const Bundle& b) {
  if (b.kind() == AuctionKind::kMultiUnit) return b.quantity();
  OutJson j = OutJson::array();
  for (int x : b.items()) j.push_back(x);
  return j;
}

Bundle GetBundle(const Json& j, AuctionKind kind, const std::string& where) {
  if (kind == AuctionKind::kMultiUnit) {
    int q = GetInt(j, where);
    if (q < 0) Fail(where, "negative quantity");
    return Bundle::Quantity(q);
  }
  std::vector<int> items;
  int k = 0;
  for (const Json& x : GetArray(j, where)) {
    int item = GetInt(x, where + "/" + std::to_string(k++));
    if (item < 0 || item >= kMaxCombinatorialItems) Fail(where, "bad item index");
    items.push_back(item);
  }
  std::set<int> unique(items.begin(), items.end());
  if (unique.size() != items.size()) Fail(where, "repeated item");
  return Bundle::Items(items);
}

OutJson ValuationJson(const Valuation& v) {
  OutJson j;
  j["name"] = v.name();
  j["tag"] = ToString(v.tag());
  switch (v.tag()) {
    case ValuationTag::kAdditive:
    case ValuationTag::kUnitDemand:
      j["values"] = RationalsJson(v.item_values());
      break;
    case ValuationTag::kSingleMindedCa:
      j["items"] = BundleJson(v.target());
      j["value"] = ToString(v.value());
      break;
    case ValuationTag::kSingleMindedMu:
      j["quantity"] = v.target().quantity();
      j["value"] = ToString(v.value());
      break;
    case ValuationTag::kGeneralCa:
    case ValuationTag::kGeneralMu:
      j["table"] = RationalsJson(v.table());
      break;
  }
  return j;
}

Valuation GetValuation(const Json& j, const AuctionSetting& s,
                       const std::string& w) {
  std::string name;
  if (j.is_object() && j.contains("name")) name = GetString(j["name"], w + "/name");
  const std::string tag_text = GetString(Field(j, "tag", w), w + "/tag");
  try {
    switch (ParseValuationTag(tag_text)) {
      case ValuationTag::kAdditive:
        return Valuation::Additive(GetRationals(Field(j, "values", w), w + "/values"), name);
      case ValuationTag::kUnitDemand:
        return Valuation::UnitDemand(GetRationals(Field(j, "values", w), w + "/values"), name);
      case ValuationTag::kSingleMindedCa:
        return Valuation::SingleMindedCa(
            GetBundle(Field(j, "items", w), AuctionKind::kCombinatorial, w + "/items"),
            GetRational(Field(j, "value", w), w + "/value"), s.items, name);
      case ValuationTag::kSingleMindedMu:
        return Valuation::SingleMindedMu(
            GetInt(Field(j, "quantity", w), w + "/quantity"),
            GetRational(Field(j, "value", w), w + "/value"), s.items, name);
      case ValuationTag::kGeneralCa:
        return Valuation::GeneralCa(GetRationals(Field(j, "table", w), w + "/table"), name);
      case ValuationTag::kGeneralMu:
        return Valuation::GeneralMu(GetRationals(Field(j, "table", w), w + "/table"), name);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    Fail(w, e.what());
  }
  Fail(w, "unknown tag");
}

OutJson PlayersJson(const Domain& d) {
  OutJson players = OutJson::array();
  for (const auto& vals : d.players) {
    OutJson row = OutJson::array();
    for (const Valuation& v : vals) row.push_back(ValuationJson(v));
    players.push_back(std::move(row));
  }
  return players;
}

Domain GetPlayers(const Json& j, const AuctionSetting& s, const std::string& w) {
  Domain d{s, {}};
  int i = 0;
  for (const Json& row : GetArray(j, w)) {
    const std::string wi = w + "/" + std::to_string(i++);
    std::vector<Valuation> vals;
    int a = 0;
    for (const Json& v : GetArray(row, wi)) {
      vals.push_back(GetValuation(v, s, wi + "/" + std::to_string(a++)));
    }
    d.players.push_back(std::move(vals));
  }
  try {
    if (d.player_count() != s.players) {
      throw Error("expected " + std::to_string(s.players) + " players");
    }
    d.Validate();
  } catch (const Error& e) {
    Fail(w, e.what());
  }
  return d;
}

OutJson NodeJson(const MechanismTree& t, NodeId u,
                 const std::vector<StrategyTable>* strategies) {
  OutJson j;
  if (!t.name(u).empty()) j["name"] = t.name(u);
  if (t.is_leaf(u)) {
    OutJson alloc = OutJson::array();
    for (const Bundle& b : t.allocation(u).bundles) alloc.push_back(BundleJson(b));
    j["allocation"] = std::move(alloc);
    j["payments"] = RationalsJson(t.payments(u));
    return j;
  }
  const PlayerId i = t.speaker(u);
  j["speaker"] = i;
  if (strategies) {
    OutJson messages = OutJson::array();
    for (const Behavior& b : (*strategies)[i]) messages.push_back(b.LabelAt(t, u));
    j["messages"] = std::move(messages);
  }
  OutJson edges = OutJson::object();
  for (const Edge& e : t.edges(u)) edges[e.label] = NodeJson(t, e.child, strategies);
  j["edges"] = std::move(edges);
  return j;
}

struct TreeReader {
  const AuctionSetting& setting;
  const Domain* domain;
  TreeBuilder builder;
  // Per builder id: messages per valuation of the speaker, if given.
  std::vector<std::optional<std::vector<std::string>>> messages;
  bool any_messages = false;
  bool missing_messages = false;

  NodeId Read(const Json& j, const std::string& w) {
    if (!j.is_object()) Fail(w, "expected a node object");
    std::string name;
    if (j.contains("name")) name = GetString(j["name"], w + "/name");
    const bool leaf = j.contains("allocation") || j.contains("payments");
    if (leaf) {
      if (j.contains("edges") || j.contains("speaker")) {
        Fail(w, "node has both leaf and internal fields");
      }
      Allocation alloc;
      int i = 0;
      for (const Json& b : GetArray(Field(j, "allocation", w), w + "/allocation")) {
        alloc.bundles.push_back(
            GetBundle(b, setting.kind, w + "/allocation/" + std::to_string(i++)));
      }
      try {
        alloc.Validate(setting);
      } catch (const Error& e) {
        Fail(w + "/allocation", e.what());
      }
      std::vector<Rational> pay = GetRationals(Field(j, "payments", w), w + "/payments");
      if (static_cast<int>(pay.size()) != setting.players) {
        Fail(w + "/payments", "expected one payment per player");
      }
      messages.emplace_back();
      return builder.AddLeaf(std::move(alloc), std::move(pay), name);
    }
    const int speaker = GetInt(Field(j, "speaker", w), w + "/speaker");
    if (speaker < 0 || speaker >= setting.players) Fail(w + "/speaker", "no such player");
    const Json& edges = Field(j, "edges", w);
    if (!edges.is_object() || edges.empty()) Fail(w + "/edges", "expected a nonempty object");
    const NodeId id = builder.AddInternal(speaker, name);
    messages.emplace_back();
    if (j.contains("messages")) {
      std::vector<std::string> m;
      int a = 0;
      for (const Json& x : GetArray(j["messages"], w + "/messages")) {
        const std::string wa = w + "/messages/" + std::to_string(a++);
        std::string label = GetString(x, wa);
        if (!edges.contains(label)) Fail(wa, "no edge \"" + label + "\"");
        m.push_back(std::move(label));
      }
      if (!domain) Fail(w + "/messages", "messages need a domain");
      if (m.size() != domain->players[speaker].size()) {
        Fail(w + "/messages", "expected one message per valuation of player " +
                                  std::to_string(speaker));
      }
      messages[id] = std::move(m);
      any_messages = true;
    } else {
      missing_messages = true;
    }
    for (auto it = edges.begin(); it != edges.end(); ++it) {
      const NodeId child = Read(it.value(), w + "/edges/" + it.key());
      builder.AddEdge(id, it.key(), child);
    }
    return id;
  }
};

std::string Dump(const OutJson& j) { return j.dump(2) + "\n"; }

}  // namespace

ParseError::ParseError(const std::string& message, int line, int column,
                       std::string where)
    : Error(message), line_(line), column_(column), where_(std::move(where)) {}

MechanismBundle MechanismFile::Bundle() const {
  if (!strategies) throw Error("mechanism file has no strategies");
  MechanismBundle b{tree, *strategies, *domain};
  b.Validate();
  return b;
}

MechanismFile ParseMechanism(std::string_view text) {
  const Json j = ParseJson(text);
  CheckHeader(j, kMechanismFormat);
  const AuctionSetting setting = GetSetting(Field(j, "setting", "(root)"));
  std::optional<Domain> domain;
  if (j.contains("domain")) domain = GetPlayers(j["domain"], setting, "domain");
  TreeReader reader{setting, domain ? &*domain : nullptr, TreeBuilder(setting), {}};
  const NodeId root = reader.Read(Field(j, "tree", "(root)"), "tree");
  if (reader.any_messages && reader.missing_messages) {
    Fail("tree", "messages must be given at every internal node or none");
  }
  std::vector<NodeId> ids;
  std::optional<MechanismTree> tree;
  try {
    tree = reader.builder.Build(root, &ids);
  } catch (const Error& e) {
    Fail("tree", e.what());
  }
  MechanismFile out{*tree, domain, std::nullopt};
  if (reader.any_messages) {
    std::vector<StrategyTable> strategies(setting.players);
    for (PlayerId i = 0; i < setting.players; ++i) {
      for (std::size_t a = 0; a < domain->players[i].size(); ++a) {
        strategies[i].emplace_back(*tree, i);
      }
    }
    for (std::size_t b = 0; b < ids.size(); ++b) {
      if (!reader.messages[b]) continue;
      const NodeId u = ids[b];
      const PlayerId i = tree->speaker(u);
      for (std::size_t a = 0; a < reader.messages[b]->size(); ++a) {
        strategies[i][a].Set(*tree, u, (*reader.messages[b])[a]);
      }
    }
    out.strategies = std::move(strategies);
  }
  return out;
}

std::string SerializeMechanism(const MechanismTree& tree) {
  OutJson j;
  j["format"] = kMechanismFormat;
  j["version"] = kVersion;
  j["setting"] = SettingJson(tree.setting());
  j["tree"] = NodeJson(tree, tree.root(), nullptr);
  return Dump(j);
}

std::string SerializeMechanism(const MechanismBundle& bundle) {
  bundle.Validate();
  OutJson j;
  j["format"] = kMechanismFormat;
  j["version"] = kVersion;
  j["setting"] = SettingJson(bundle.tree.setting());
  j["domain"] = PlayersJson(bundle.domain);
  j["tree"] = NodeJson(bundle.tree, bundle.tree.root(), &bundle.strategies);
  return Dump(j);
}

Domain ParseDomain(std::string_view text) {
  const Json j = ParseJson(text);
  CheckHeader(j, kDomainFormat);
  const AuctionSetting setting = GetSetting(Field(j, "setting", "(root)"));
  return GetPlayers(Field(j, "players", "(root)"), setting, "players");
}

std::string SerializeDomain(const Domain& domain) {
  OutJson j;
  j["format"] = kDomainFormat;
  j["version"] = kVersion;
  j["setting"] = SettingJson(domain.setting);
  j["players"] = PlayersJson(domain);
  return Dump(j);
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void WriteTextFile(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed: " + path);
}

}  // namespace osp
