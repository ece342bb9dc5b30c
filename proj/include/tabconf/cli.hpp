// Copyright 2026 The tabconf Authors.
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tabconf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPartial = 1;  // some records dropped or malformed
inline constexpr int kExitFatal = 2;    // usage error or unrecoverable failure

// Runs one command line (args[0] is the program name). stdin is only read
// by `parse` when no text argument is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace tabconf::cli
