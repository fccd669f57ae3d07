// Copyright 2026 The qcyc Authors
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

#ifndef QCYC_CLI_HPP
#define QCYC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "qcyc/io.hpp"

namespace qcyc::cli {

enum ExitCode : int { ok = 0, usage_error = 1, mismatch = 2 };

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

struct TableCheck {
  json record;
  bool match = false;
};

/// One record per non-cuspidal table row; levels 15 and 20 over Q(i), 21 over Q(sqrt -3).
/// A level of 0 selects all three tables.
std::vector<TableCheck> table_checks(int level);

/// The invariant suite run by `verify-tables --all`.
std::vector<TableCheck> invariant_checks();

}  // namespace qcyc::cli

#endif  // QCYC_CLI_HPP
