// Copyright 2026 The Sybilbench Authors
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

#ifndef SYBILBENCH_CLI_HPP_
#define SYBILBENCH_CLI_HPP_

#include <string>
#include <vector>

namespace sybilbench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// Runs one CLI invocation. args[0] is the program name.
int run_cli(const std::vector<std::string>& args);

}  // namespace sybilbench

#endif  // SYBILBENCH_CLI_HPP_
