// Copyright 2026 The slashsim Authors
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

#ifndef SLASH_TOOLS_CLI_H
#define SLASH_TOOLS_CLI_H

#include <ostream>
#include <string>
#include <vector>

namespace slash {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitScenario = 2,
    kExitPhysics = 3,
};

/// Entry point of the `slash` tool; args excludes the program name. Reports
/// go to `out` unless --output names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace slash

#endif
