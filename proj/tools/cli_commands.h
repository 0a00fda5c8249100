// Copyright 2026 The paritysim Authors
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


#ifndef PARITYSIM_TOOLS_CLI_COMMANDS_H
#define PARITYSIM_TOOLS_CLI_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "paritysim/strategy_engine.h"

namespace paritysim::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kBadArguments = 2, kIoError = 3 };

struct RunConfig {
    std::string command;
    int64_t trials = 0;
    uint64_t seed = 1;
    int row_lo = 0;
    int row_hi = 0;
    std::string format = "csv";
    /// Empty: "<command>.<format>" in the working directory.
    std::string out;
    /// 0 picks the hardware concurrency.
    int threads = 0;
    bool recycle = true;
    int max_level = 4;
    /// key=value strategy overrides.
    std::vector<std::string> overrides;
    std::vector<std::string> suites;
};

using Cell = std::variant<int64_t, double, std::string>;

struct Table {
    std::string name;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// Human-readable notes printed after the summary.
    std::vector<std::string> warnings;
};

/// Parses "A..B" or "A". Throws std::invalid_argument.
std::pair<int, int> parse_rows(const std::string &text);

/// Applies key=value overrides. Throws std::invalid_argument on unknown keys.
StrategySpec apply_overrides(StrategySpec spec, const std::vector<std::string> &overrides);

Table compute_table1(const RunConfig &config);
Table compute_table2(const RunConfig &config);
Table compute_strategy_search(const RunConfig &config);

/// csv: "# key=value ..." line, header row, one line per row.
/// json: object with meta, columns and rows.
/// markdown: "<!-- key=value ... -->" line and a pipe table.
std::string render(const Table &table, const std::string &format);

/// Full command-line entry point. Returns an ExitCode.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace paritysim::cli

#endif
