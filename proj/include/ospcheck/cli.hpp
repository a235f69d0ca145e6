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


#ifndef OSPCHECK_CLI_HPP_
#define OSPCHECK_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace osp {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIncomplete = 3;  // search budget ran out

// Runs one command line. `args` excludes the program name. Reports go to
// `out`, diagnostics and usage text to `err`.
int Execute(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace osp

#endif  // OSPCHECK_CLI_HPP_
