// Copyright 2026 The fusionsim Authors
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

#ifndef FUSIONSIM_CLI_H
#define FUSIONSIM_CLI_H

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fusionsim/config.h"
#include "fusionsim/report.h"

namespace fusionsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitValidationFailure = 3;

std::vector<std::string_view> cli_commands();

/// Runs one command on a finished config. Throws ConfigError on bad input.
RunReport run_command(std::string_view command, const Config &config);

/// Applies a graph program such as "path 3 1; path 2 4; fuse 3 4 success;
/// measure_x 2". Ops: path <n> <first>, fuse <a> <b> success|failure,
/// measure_z <photon>, measure_x <photon>.
RunReport run_graph_program(std::string_view program);

/// Full command line: fusionsim <command> [--config FILE] [--out FILE]
/// [--csv [FILE]] [--<key> VALUE ...]. Returns the process exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace fusionsim

#endif
