// Copyright 2026 The relpara Authors.
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

// Entry point of the relpara command-line tool. One subcommand per process;
// exit codes: 0 success, 2 config error, 3 missing input, 4 backend failure,
// 1 anything else.

#ifndef RELPARA_TOOLS_COMMANDS_H_
#define RELPARA_TOOLS_COMMANDS_H_

#include <ostream>

namespace relpara::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitMissingInput = 3;
inline constexpr int kExitBackend = 4;

// Environment variable naming the SICK distribution directory when --sick-dir
// is not given.
inline constexpr const char* kSickDirEnv = "RELPARA_SICK_DIR";

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relpara::cli

#endif  // RELPARA_TOOLS_COMMANDS_H_
