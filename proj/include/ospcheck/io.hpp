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


#ifndef OSPCHECK_IO_HPP_
#define OSPCHECK_IO_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "ospcheck/behavior.hpp"
#include "ospcheck/setting.hpp"
#include "ospcheck/tree.hpp"
#include "ospcheck/valuation.hpp"

namespace osp {

// Malformed input. line and column are 1-based and 0 when unknown; `where`
// is the JSON path of the offending node ("tree/edges/2/...").
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column,
             std::string where = {});
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& where() const { return where_; }

 private:
  int line_;
  int column_;
  std::string where_;
};

// A parsed mechanism file. Strategies come with a domain: every internal
// node then lists, per valuation of its speaker, the message it sends.
struct MechanismFile {
  MechanismTree tree;
  std::optional<Domain> domain;
  std::optional<std::vector<StrategyTable>> strategies;

  bool has_strategies() const { return strategies.has_value(); }
  // Throws unless strategies are present.
  MechanismBundle Bundle() const;
};

// Format "ospcheck-mechanism", version 1:
//   {"format", "version", "setting": {"kind", "players", "items"},
//    "domain": [[valuation...] per player]   (optional),
//    "tree": node}
// node: {"name"?, "speaker", "messages"?, "edges": {label: node}} or
//       {"name"?, "allocation": [bundle per player], "payments": ["p/q"...]}
// Bundles are sorted item arrays (combinatorial) or unit counts.
MechanismFile ParseMechanism(std::string_view text);
std::string SerializeMechanism(const MechanismTree& tree);
std::string SerializeMechanism(const MechanismBundle& bundle);

// Format "ospcheck-domain", version 1: {"format", "version", "setting",
// "players": [[valuation...] per player]}. A valuation is
// {"name", "tag", ...} with "values" (additive, unit-demand), "items" and
// "value" (single-minded-ca), "quantity" and "value" (single-minded-mu) or
// "table" (general-ca, general-mu).
Domain ParseDomain(std::string_view text);
std::string SerializeDomain(const Domain& domain);

std::string ReadTextFile(const std::string& path);
void WriteTextFile(const std::string& path, std::string_view text);

}  // namespace osp

#endif  // OSPCHECK_IO_HPP_
