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


#ifndef OSPCHECK_REPORT_HPP_
#define OSPCHECK_REPORT_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ospcheck/checks.hpp"
#include "ospcheck/search.hpp"
#include "ospcheck/structure.hpp"

namespace osp {

inline constexpr const char* kToolVersion = "1.0.0";

// Lowercase hex SHA-256.
std::string Sha256Hex(std::string_view bytes);

struct InputDigest {
  std::string role;  // "mechanism", "domain", "config"
  std::string path;
  std::string sha256;
};

enum class EntryOutcome { kPass, kFail, kIncomplete, kInfo };
std::string ToString(EntryOutcome outcome);

struct ReportEntry {
  std::string kind;  // verdict, ratio, search, structure, payment-bounds, ...
  std::string name;
  EntryOutcome outcome = EntryOutcome::kInfo;
  std::string status;  // short word shown to users, e.g. "pass", "2/1"
  std::vector<std::pair<std::string, std::string>> fields;
  // A mechanism file embedded verbatim (e.g. a search counterexample).
  std::optional<std::string> mechanism_json;
};

// One structure, two renderings.
struct ReportDocument {
  std::string command;
  std::vector<InputDigest> inputs;
  std::vector<ReportEntry> entries;

  // Fail beats incomplete beats pass.
  EntryOutcome Overall() const;
  std::string RenderText() const;
  std::string RenderMachine() const;
};

// Valuation names for a profile, e.g. "(one, all)".
std::string ProfileString(const Domain& domain, const std::vector<int>& profile);

ReportEntry VerdictEntry(const Verdict& verdict, const MechanismTree& tree,
                         const Domain& domain);
ReportEntry RatioEntry(const RatioReport& report, const Domain& domain);
ReportEntry SearchEntry(const SearchVerdict& verdict);
ReportEntry StructureEntry(const StructureAudit& audit, const MechanismTree& tree);
ReportEntry PaymentBoundEntry(const PaymentBoundReport& report,
                              const std::string& name);

}  // namespace osp

#endif  // OSPCHECK_REPORT_HPP_
