//
// Copyright 2026 The betalike Authors
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
//

#ifndef BETALIKE_TOOLS_CLI_H_
#define BETALIKE_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace betalike::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;       // configuration, I/O or data errors
inline constexpr int kExitUsage = 2;       // malformed command line
inline constexpr int kExitBreach = 3;      // a fresh artifact failed its audit

// Runs one subcommand. `args` excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace betalike::cli

#endif  // BETALIKE_TOOLS_CLI_H_
