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


#include "ospcheck/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ospcheck/checks.hpp"
#include "ospcheck/fixtures.hpp"
#include "ospcheck/io.hpp"
#include "ospcheck/mechanisms.hpp"
#include "ospcheck/report.hpp"
#include "ospcheck/search.hpp"
#include "ospcheck/structure.hpp"

namespace osp {

namespace {

namespace fs = std::filesystem;

// Bad input files or flag values: exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Flags {
  std::string mechanism;
  std::string domain;
  std::string checks = "osp,dsic,ir,nnt";
  std::string target;
  std::string grid;
  std::string config;
  std::string family = "mu-single-minded";
  std::string out_dir;
  std::string format = "text";
  int max_depth = -1;
  double budget = 0;
  int players = 2;
  int items = 2;
  bool no_pruning = false;
  bool hat = false;
};

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream s(text);
  std::string part;
  while (std::getline(s, part, ',')) {
    part.erase(0, part.find_first_not_of(' '));
    part.erase(part.find_last_not_of(' ') + 1);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

Rational ParseRationalFlag(const std::string& text, const std::string& flag) {
  try {
    return ParseRational(text);
  } catch (const std::exception&) {
    throw UsageError(flag + ": bad rational \"" + text + "\"");
  }
}

std::string ReadInput(ReportDocument& doc, const std::string& role,
                      const std::string& path) {
  std::string text;
  try {
    text = ReadTextFile(path);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  doc.inputs.push_back({role, path, Sha256Hex(text)});
  return text;
}

MechanismFile LoadMechanism(ReportDocument& doc, const Flags& f) {
  if (f.mechanism.empty()) throw UsageError("--mechanism is required");
  MechanismFile file = ParseMechanism(ReadInput(doc, "mechanism", f.mechanism));
  if (!f.domain.empty()) {
    Domain d = ParseDomain(ReadInput(doc, "domain", f.domain));
    if (file.domain && d.Sizes() != file.domain->Sizes()) {
      throw UsageError("--domain must have the same number of valuations per "
                       "player as the mechanism's own domain");
    }
    if (!(d.setting == file.tree.setting())) {
      throw UsageError("--domain setting differs from the mechanism's");
    }
    file.domain = std::move(d);
  }
  return file;
}

MechanismBundle NeedBundle(const MechanismFile& file) {
  if (!file.has_strategies()) {
    throw UsageError("mechanism file has no strategies (needs a domain and "
                     "per-node messages)");
  }
  try {
    return file.Bundle();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

void RunVerify(ReportDocument& doc, const Flags& f) {
  MechanismBundle m = NeedBundle(LoadMechanism(doc, f));
  std::vector<std::string> checks = SplitList(f.checks);
  if (checks.empty()) throw UsageError("--checks is empty");
  for (const std::string& c : checks) {
    Verdict v;
    if (c == "osp") {
      v = CheckOsp(m.tree, m.strategies, m.domain);
    } else if (c == "dsic") {
      v = CheckDsic(m.tree, m.strategies, m.domain);
    } else if (c == "ir") {
      v = CheckIr(m.tree, m.strategies, m.domain);
    } else if (c == "nnt") {
      v = CheckNnt(m.tree, m.strategies, m.domain);
    } else {
      throw UsageError("unknown check \"" + c + "\" (expected osp, dsic, ir, nnt)");
    }
    doc.entries.push_back(VerdictEntry(v, m.tree, m.domain));
  }
}

void RunRatio(ReportDocument& doc, const Flags& f) {
  MechanismBundle m = NeedBundle(LoadMechanism(doc, f));
  RatioReport r = WelfareRatio(m.tree, m.strategies, m.domain);
  ReportEntry e = RatioEntry(r, m.domain);
  if (!f.target.empty()) {
    const Rational t = ParseRationalFlag(f.target, "--target-ratio");
    const bool ok = !r.unbounded && r.ratio < t;
    e.outcome = ok ? EntryOutcome::kPass : EntryOutcome::kFail;
    e.fields.emplace_back("target", ToString(t));
  }
  doc.entries.push_back(std::move(e));
}

void RunAnalyze(ReportDocument& doc, const Flags& f) {
  MechanismFile file = LoadMechanism(doc, f);
  doc.entries.push_back(
      StructureEntry(AuditAscendingStructure(file.tree), file.tree));
  // Payment bounds apply to multi-unit mechanisms over the fixture names.
  if (file.has_strategies() &&
      file.tree.setting().kind == AuctionKind::kMultiUnit) {
    MechanismBundle m = NeedBundle(file);
    bool named = true;
    for (const auto& vals : m.domain.players) {
      named = named && std::any_of(vals.begin(), vals.end(), [](const Valuation& v) {
                return v.name() == "one";
              });
    }
    if (named) doc.entries.push_back(PaymentBoundEntry(AuditPaymentBounds(m), "fixture"));
  }
}

void RunFixtures(ReportDocument& doc, const Flags& f) {
  if (f.out_dir.empty()) throw UsageError("--out is required");
  std::error_code ec;
  fs::create_directories(f.out_dir, ec);
  if (ec) throw UsageError("cannot create " + f.out_dir + ": " + ec.message());
  ReportEntry e;
  e.kind = "fixtures";
  e.name = f.out_dir;
  e.outcome = EntryOutcome::kInfo;
  auto emit = [&](const std::string& file, const std::string& text) {
    const std::string path = (fs::path(f.out_dir) / file).string();
    WriteTextFile(path, text);
    e.fields.emplace_back(file, "sha256:" + Sha256Hex(text));
  };
  const AuctionSetting mu{AuctionKind::kMultiUnit, f.players, f.items};
  const AuctionSetting ca{AuctionKind::kCombinatorial, f.players, f.items};
  try {
    for (AdversarialFamily fam :
         {AdversarialFamily::kMuSingleMinded, AdversarialFamily::kCaSingleMinded,
          AdversarialFamily::kAdditive, AdversarialFamily::kUnitDemand}) {
      const AuctionSetting& s = KindOf(fam) == AuctionKind::kMultiUnit ? mu : ca;
      emit(ToString(fam) + ".domain.json", SerializeDomain(AdversarialDomain(s, fam)));
    }
    emit("mu-single-minded-hat.domain.json",
         SerializeDomain(AddHatValuations(
             AdversarialDomain(mu, AdversarialFamily::kMuSingleMinded))));
    emit("restricted-additive.domain.json",
         SerializeDomain(RestrictedAdditiveDomain(Rational(1), Rational(3), ca)));
    emit("two_duck.json", SerializeMechanism(TwoDuckAuction()));
    emit("second_price_3.json", SerializeMechanism(SecondPriceSingleItem(3, 0, 1)));
    emit("ascending_single_item.json", SerializeMechanism(AscendingSingleItem(3, 2)));
    const std::int64_t k = AdversarialScale(mu);
    emit("grand_bundle_ascending.json",
         SerializeMechanism(GrandBundleAscending(
             AdversarialDomain(mu, AdversarialFamily::kMuSingleMinded),
             static_cast<int>(k * k * k * k))));
    emit("serial_posted_price.json",
         SerializeMechanism(SerialPostedPrice(Rational(1), Rational(3), ca)));
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e2) {
    throw UsageError(e2.what());
  }
  e.status = std::to_string(e.fields.size()) + " files";
  doc.entries.push_back(std::move(e));
}

// Search settings: config block first, then flags on top.
struct SearchPlan {
  std::string family = "mu-single-minded";
  int players = 2;
  int items = 2;
  bool hat = false;
  std::string domain_path;
  Rational target{2};
  std::optional<std::vector<Rational>> grid;
  int max_depth = -1;
  double budget = 0;
  bool pruning = true;
  int workers = 0;
};

void ApplyConfig(SearchPlan& plan, ReportDocument& doc, const std::string& path) {
  using Json = nlohmann::json;
  const std::string text = ReadInput(doc, "config", path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("search") || !j["search"].is_object()) {
    throw UsageError(path + ": expected an object with a \"search\" block");
  }
  const Json& s = j["search"];
  static const std::set<std::string> known = {
      "family", "players", "items", "hat", "domain", "target_ratio", "grid",
      "max_depth", "budget_seconds", "pruning", "workers"};
  try {
    for (auto it = s.begin(); it != s.end(); ++it) {
      if (!known.count(it.key())) {
        throw UsageError(path + ": unknown search key \"" + it.key() + "\"");
      }
    }
    auto rat = [&](const Json& x) {
      return x.is_number_integer() ? Rational(x.get<std::int64_t>())
                                   : ParseRationalFlag(x.get<std::string>(), path);
    };
    if (s.contains("family")) plan.family = s["family"].get<std::string>();
    if (s.contains("players")) plan.players = s["players"].get<int>();
    if (s.contains("items")) plan.items = s["items"].get<int>();
    if (s.contains("hat")) plan.hat = s["hat"].get<bool>();
    if (s.contains("domain")) {
      fs::path p = s["domain"].get<std::string>();
      if (p.is_relative()) p = fs::path(path).parent_path() / p;
      plan.domain_path = p.string();
    }
    if (s.contains("target_ratio")) plan.target = rat(s["target_ratio"]);
    if (s.contains("grid")) {
      std::vector<Rational> g;
      for (const Json& x : s["grid"]) g.push_back(rat(x));
      plan.grid = g;
    }
    if (s.contains("max_depth")) plan.max_depth = s["max_depth"].get<int>();
    if (s.contains("budget_seconds")) plan.budget = s["budget_seconds"].get<double>();
    if (s.contains("pruning")) plan.pruning = s["pruning"].get<bool>();
    if (s.contains("workers")) plan.workers = s["workers"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void RunSearch(ReportDocument& doc, const Flags& f, const CLI::App& sub) {
  SearchPlan plan;
  if (!f.config.empty()) ApplyConfig(plan, doc, f.config);
  if (sub.count("--family")) plan.family = f.family;
  if (sub.count("--players")) plan.players = f.players;
  if (sub.count("--items")) plan.items = f.items;
  if (sub.count("--hat")) plan.hat = true;
  if (!f.domain.empty()) plan.domain_path = f.domain;
  if (!f.target.empty()) plan.target = ParseRationalFlag(f.target, "--target-ratio");
  if (!f.grid.empty()) {
    std::vector<Rational> g;
    for (const std::string& x : SplitList(f.grid)) g.push_back(ParseRationalFlag(x, "--grid"));
    plan.grid = g;
  }
  if (sub.count("--max-depth")) plan.max_depth = f.max_depth;
  if (sub.count("--budget")) plan.budget = f.budget;
  if (f.no_pruning) plan.pruning = false;

  SearchSpace space;
  std::optional<AdversarialFamily> family;
  try {
    if (!plan.domain_path.empty()) {
      space.domain = ParseDomain(ReadInput(doc, "domain", plan.domain_path));
    } else {
      family = ParseAdversarialFamily(plan.family);
      AuctionSetting s{KindOf(*family), plan.players, plan.items};
      space.domain = AdversarialDomain(s, *family);
    }
    if (plan.hat) space.domain = AddHatValuations(space.domain);
    if (plan.grid) {
      space.grid = *plan.grid;
    } else if (family) {
      space.grid = DefaultPaymentGrid(*family, space.domain.setting);
    } else {
      throw UsageError("a domain file needs --grid or a grid in the config");
    }
    if (plan.target <= 1) throw UsageError("--target-ratio must exceed 1");
    space.max_depth = plan.max_depth;
    space.Validate();
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  SearchOptions o;
  o.pruning = plan.pruning;
  o.budget_seconds = plan.budget;
  o.workers = plan.workers;
  SearchVerdict v = FalsifyImpossibility(space, plan.target, o);
  ReportEntry e = SearchEntry(v);
  e.fields.insert(e.fields.begin(),
                  {"domain", plan.domain_path.empty()
                                 ? plan.family + " n=" + std::to_string(plan.players) +
                                       " m=" + std::to_string(plan.items) +
                                       (plan.hat ? " with hat" : "")
                                 : plan.domain_path});
  doc.entries.push_back(std::move(e));
}

int ExitCode(EntryOutcome overall) {
  switch (overall) {
    case EntryOutcome::kFail: return kExitFail;
    case EntryOutcome::kIncomplete: return kExitIncomplete;
    default: return kExitPass;
  }
}

}  // namespace

int Execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  Flags f;
  CLI::App app{"Checks sequential auction mechanisms for obvious "
               "strategy-proofness and searches for counterexamples."};
  app.name("ospcheck");
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 all pass / no counterexample, 1 a property failed or a "
      "counterexample was found, 2 usage or input error, 3 search budget "
      "exhausted.\nEnvironment: OSPCHECK_WORKERS sets the search worker "
      "count (default 1).");
  auto add_format = [&](CLI::App* s) {
    s->add_option("--format", f.format, "Report format")
        ->check(CLI::IsMember({"text", "machine"}))
        ->capture_default_str();
  };
  auto add_mechanism = [&](CLI::App* s) {
    s->add_option("--mechanism", f.mechanism, "Mechanism file")->required();
    s->add_option("--domain", f.domain,
                  "Domain file replacing the mechanism's own (same shape)");
  };

  CLI::App* verify = app.add_subcommand("verify", "Run property checks");
  add_mechanism(verify);
  verify->add_option("--checks", f.checks, "Comma list of osp, dsic, ir, nnt")
      ->capture_default_str();
  add_format(verify);

  CLI::App* ratio = app.add_subcommand("ratio", "Welfare approximation ratio");
  add_mechanism(ratio);
  ratio->add_option("--target-ratio", f.target,
                    "Fail unless the ratio is strictly below P/Q");
  add_format(ratio);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Continue-or-quit audit, plus payment bounds on fixtures");
  add_mechanism(analyze);
  add_format(analyze);

  CLI::App* fixtures = app.add_subcommand(
      "fixtures", "Write fixture domains and reference mechanisms");
  fixtures->add_option("--out", f.out_dir, "Output directory")->required();
  fixtures->add_option("--players", f.players, "n")->capture_default_str();
  fixtures->add_option("--items", f.items, "m")->capture_default_str();
  add_format(fixtures);

  CLI::App* search = app.add_subcommand(
      "search", "Look for an OSP+IR+NNT mechanism beating a ratio");
  search->add_option("--config", f.config, "JSON file with a \"search\" block");
  search->add_option("--domain", f.domain, "Domain file to search over");
  search->add_option("--family", f.family,
                     "Fixture family: mu-single-minded, ca-single-minded, "
                     "additive, unit-demand")
      ->capture_default_str();
  search->add_option("--players", f.players, "n for the fixture family")
      ->capture_default_str();
  search->add_option("--items", f.items, "m for the fixture family")
      ->capture_default_str();
  search->add_flag("--hat", f.hat,
                   "Add the hat valuation (k^2 for all units) to players 0 and 1");
  search->add_option("--target-ratio", f.target, "Target P/Q (default 2)");
  search->add_option("--grid", f.grid,
                     "Comma list of payments (default: family thresholds and 0..5)");
  search->add_option("--max-depth", f.max_depth,
                     "Internal nodes per path (default: total valuations)");
  search->add_option("--budget", f.budget, "Seconds; 0 means no limit")
      ->capture_default_str();
  search->add_flag("--no-pruning", f.no_pruning,
                   "Check complete mechanisms only (slow)");
  add_format(search);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kExitUsage;
  }

  ReportDocument doc;
  doc.command = app.get_subcommands().front()->get_name();
  try {
    if (verify->parsed()) RunVerify(doc, f);
    if (ratio->parsed()) RunRatio(doc, f);
    if (analyze->parsed()) RunAnalyze(doc, f);
    if (fixtures->parsed()) RunFixtures(doc, f);
    if (search->parsed()) RunSearch(doc, f, *search);
  } catch (const ParseError& e) {
    err << "ospcheck: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "ospcheck: " << e.what() << "\n";
    return kExitUsage;
  }
  out << (f.format == "machine" ? doc.RenderMachine() : doc.RenderText());
  return ExitCode(doc.Overall());
}

}  // namespace osp
