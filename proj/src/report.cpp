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


#include "ospcheck/report.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "ospcheck/io.hpp"

namespace osp {

namespace {

using OutJson = nlohmann::ordered_json;

std::string Fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string NodeString(const MechanismTree& t, NodeId u) {
  return u == kNoNode ? "-" : t.Label(u);
}

}  // namespace

std::string Sha256Hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("sha256 failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += hex[digest[k] >> 4];
    out += hex[digest[k] & 15];
  }
  return out;
}

std::string ToString(EntryOutcome outcome) {
  switch (outcome) {
    case EntryOutcome::kPass: return "pass";
    case EntryOutcome::kFail: return "fail";
    case EntryOutcome::kIncomplete: return "incomplete";
    case EntryOutcome::kInfo: return "info";
  }
  return "?";
}

EntryOutcome ReportDocument::Overall() const {
  bool incomplete = false;
  for (const ReportEntry& e : entries) {
    if (e.outcome == EntryOutcome::kFail) return EntryOutcome::kFail;
    incomplete = incomplete || e.outcome == EntryOutcome::kIncomplete;
  }
  return incomplete ? EntryOutcome::kIncomplete : EntryOutcome::kPass;
}

std::string ReportDocument::RenderText() const {
  std::ostringstream s;
  s << "ospcheck " << kToolVersion;
  if (!command.empty()) s << " " << command;
  s << "\n";
  for (const InputDigest& in : inputs) {
    s << "  input " << in.role << " " << in.path << " sha256:" << in.sha256 << "\n";
  }
  for (const ReportEntry& e : entries) {
    s << e.kind << " " << e.name << ": " << e.status << "\n";
    for (const auto& [k, v] : e.fields) s << "  " << k << ": " << v << "\n";
    if (e.mechanism_json) {
      s << "  mechanism: embedded in the machine report\n";
    }
  }
  s << "overall: " << ToString(Overall()) << "\n";
  return s.str();
}

std::string ReportDocument::RenderMachine() const {
  OutJson j;
  j["tool"] = "ospcheck";
  j["version"] = kToolVersion;
  j["command"] = command;
  OutJson inputs_json = OutJson::array();
  for (const InputDigest& in : inputs) {
    inputs_json.push_back({{"role", in.role}, {"path", in.path}, {"sha256", in.sha256}});
  }
  j["inputs"] = std::move(inputs_json);
  OutJson results = OutJson::array();
  for (const ReportEntry& e : entries) {
    OutJson r;
    r["kind"] = e.kind;
    r["name"] = e.name;
    r["outcome"] = ToString(e.outcome);
    r["status"] = e.status;
    OutJson fields = OutJson::object();
    for (const auto& [k, v] : e.fields) fields[k] = v;
    r["fields"] = std::move(fields);
    if (e.mechanism_json) r["mechanism"] = OutJson::parse(*e.mechanism_json);
    results.push_back(std::move(r));
  }
  j["results"] = std::move(results);
  j["status"] = ToString(Overall());
  return j.dump(2) + "\n";
}

std::string ProfileString(const Domain& domain, const std::vector<int>& profile) {
  std::string s = "(";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (i > 0) s += ", ";
    const Valuation& v = domain.players[i][profile[i]];
    s += v.name().empty() ? "#" + std::to_string(profile[i]) : v.name();
  }
  return s + ")";
}

ReportEntry VerdictEntry(const Verdict& verdict, const MechanismTree& tree,
                         const Domain& domain) {
  ReportEntry e;
  e.kind = "verdict";
  e.name = verdict.property;
  e.outcome = verdict.pass ? EntryOutcome::kPass : EntryOutcome::kFail;
  e.status = verdict.pass ? "pass" : "fail";
  if (!verdict.witness) return e;
  const Witness& w = *verdict.witness;
  e.fields.emplace_back("player", std::to_string(w.player));
  if (w.valuation >= 0) {
    const Valuation& v = domain.players[w.player][w.valuation];
    e.fields.emplace_back("valuation", v.name().empty() ? std::to_string(w.valuation) : v.name());
  }
  if (!w.profile.empty()) e.fields.emplace_back("profile", ProfileString(domain, w.profile));
  if (w.vertex != kNoNode) e.fields.emplace_back("vertex", NodeString(tree, w.vertex));
  if (verdict.property == "nnt") {
    e.fields.emplace_back("leaf", NodeString(tree, w.follow_leaf));
    e.fields.emplace_back("payment", ToString(w.payment));
  } else if (verdict.property == "ir") {
    e.fields.emplace_back("leaf", NodeString(tree, w.follow_leaf));
    e.fields.emplace_back("utility", ToString(w.follow_utility));
  } else {
    e.fields.emplace_back("follow leaf", NodeString(tree, w.follow_leaf));
    e.fields.emplace_back("follow utility", ToString(w.follow_utility));
    e.fields.emplace_back("deviate leaf", NodeString(tree, w.deviate_leaf));
    e.fields.emplace_back("deviate utility", ToString(w.deviate_utility));
  }
  return e;
}

ReportEntry RatioEntry(const RatioReport& report, const Domain& domain) {
  ReportEntry e;
  e.kind = "ratio";
  e.name = "welfare";
  e.outcome = EntryOutcome::kInfo;
  e.status = report.RatioString();
  if (!report.worst_profile.empty()) {
    e.fields.emplace_back("worst profile", ProfileString(domain, report.worst_profile));
  }
  e.fields.emplace_back("welfare", ToString(report.welfare));
  e.fields.emplace_back("optimum", ToString(report.optimum));
  return e;
}

ReportEntry SearchEntry(const SearchVerdict& v) {
  ReportEntry e;
  e.kind = "search";
  e.name = "target " + ToString(v.target);
  e.status = ToString(v.outcome);
  switch (v.outcome) {
    case SearchOutcome::kNoCounterexample: e.outcome = EntryOutcome::kPass; break;
    case SearchOutcome::kCounterexample: e.outcome = EntryOutcome::kFail; break;
    case SearchOutcome::kBudgetExhausted: e.outcome = EntryOutcome::kIncomplete; break;
  }
  e.fields.emplace_back("examined", std::to_string(v.stats.examined));
  e.fields.emplace_back("pruned", std::to_string(v.stats.pruned));
  e.fields.emplace_back("survivors", std::to_string(v.stats.survivors));
  e.fields.emplace_back("pruning", v.pruning ? "on" : "off");
  e.fields.emplace_back("workers", std::to_string(v.workers));
  e.fields.emplace_back("elapsed seconds", Fixed(v.elapsed_seconds));
  e.fields.emplace_back("class", v.class_description);
  e.fields.emplace_back("caveat", v.caveat);
  if (v.counterexample) {
    const MechanismBundle& m = *v.counterexample;
    e.fields.emplace_back("counterexample nodes", std::to_string(m.tree.size()));
    if (v.counterexample_ratio) {
      e.fields.emplace_back("counterexample ratio", v.counterexample_ratio->RatioString());
    }
    e.mechanism_json = SerializeMechanism(m);
  }
  return e;
}

ReportEntry StructureEntry(const StructureAudit& audit, const MechanismTree& tree) {
  ReportEntry e;
  e.kind = "structure";
  e.name = "continue-or-quit";
  e.outcome = audit.all_continue_or_quit ? EntryOutcome::kPass : EntryOutcome::kFail;
  e.status = audit.all_continue_or_quit ? "all vertices" : "violated";
  int flagged = 0;
  std::string list;
  for (const VertexClassification& v : audit.vertices) {
    if (v.continue_or_quit) continue;
    ++flagged;
    if (!list.empty()) list += ", ";
    list += NodeString(tree, v.vertex);
  }
  e.fields.emplace_back("internal vertices", std::to_string(audit.vertices.size()));
  e.fields.emplace_back("flagged", flagged == 0 ? "none" : list);
  return e;
}

ReportEntry PaymentBoundEntry(const PaymentBoundReport& report,
                              const std::string& name) {
  ReportEntry e;
  e.kind = "payment-bounds";
  e.name = name;
  e.outcome = report.pass ? EntryOutcome::kPass : EntryOutcome::kFail;
  e.status = report.pass ? "pass" : "fail";
  e.fields.emplace_back("profiles checked", std::to_string(report.profiles_checked));
  e.fields.emplace_back("detail", report.detail);
  return e;
}

}  // namespace osp
