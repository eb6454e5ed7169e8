// Copyright 2026 The nerboot Authors.
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

// The nerboot command line: seed, run, eval, gen and inspect.

#ifndef NERBOOT_TOOLS_CLI_H_
#define NERBOOT_TOOLS_CLI_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "nerboot/bootstrap.h"

namespace nerboot::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // I/O, parse, validation or run error
inline constexpr int kExitUsage = 2;    // bad command line or config file

// Reads "key = value" lines; '#' starts a comment. Keys are the long flag
// names without dashes. Throws ConfigError on a malformed line or an
// unknown key.
std::map<std::string, std::string> ParseConfigFile(std::istream &in,
                                                   const std::string &source);

// The keys accepted by ParseConfigFile, with their defaults.
const std::vector<std::pair<std::string, std::string>> &ConfigDefaults();

int Main(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nerboot::cli

#endif  // NERBOOT_TOOLS_CLI_H_
