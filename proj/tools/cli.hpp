// Copyright 2026 The fiberk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: `fiberk simulate | kfun | dist`.

#ifndef FIBERK_TOOLS_CLI_HPP_
#define FIBERK_TOOLS_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace fiberk::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFileError = 1;
inline constexpr int kUsageError = 2;
inline constexpr int kEmptyWindow = 3;

/// Runs the tool with `args` (without the program name). Diagnostics go to
/// `err`, the summary line of `kfun` to `out`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fiberk::cli

#endif  // FIBERK_TOOLS_CLI_HPP_
