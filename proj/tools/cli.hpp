// Copyright 2026 The TRE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRE_TOOLS_CLI_HPP_
#define TRE_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace tre::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kParseError = 1;
inline constexpr int kConfigError = 2;
inline constexpr int kDivergence = 3;
inline constexpr int kCheckFailed = 4;

// Runs the `tre` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace tre::cli

#endif  // TRE_TOOLS_CLI_HPP_
