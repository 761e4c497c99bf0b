/*
 * Copyright 2026 The fakescope Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line entry point shared by the fakescope binary and the tests.

#ifndef FAKESCOPE_CLI_H_
#define FAKESCOPE_CLI_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace fakescope::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

// args excludes the program name. Reports go to `out`, diagnostics to
// `err`. Returns 0 on success, 1 on a usage error and 2 on a data error.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int Run(int argc, const char* const* argv);

// FNV-1a 64 of the file bytes as 16 hex digits.
std::string FileDigest(const std::filesystem::path& path);

}  // namespace fakescope::cli

#endif  // FAKESCOPE_CLI_H_
