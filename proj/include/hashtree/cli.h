// Copyright 2026 The Hashtree Authors. All Rights Reserved.
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

#ifndef HASHTREE_CLI_H_
#define HASHTREE_CLI_H_

#include <ostream>
#include <span>
#include <string>

namespace hashtree {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitViolations = 3;

// Runs `hashtree <command> ...`. args[0] is the program name.
int run_cli(std::span<const std::string> args, std::ostream& out,
            std::ostream& err);

}  // namespace hashtree

#endif  // HASHTREE_CLI_H_
