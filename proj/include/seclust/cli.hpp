// Copyright 2026 The seclust Authors
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

#ifndef SECLUST_CLI_HPP_
#define SECLUST_CLI_HPP_

#include <iosfwd>

namespace seclust {

// Exit codes returned by run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInternalError = 2;

// Subcommands: detect, eval, synth, bench, knn-trace.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seclust

#endif  // SECLUST_CLI_HPP_
