// Copyright 2026 The armapred Authors.
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

namespace armapred::cli {

/// Exit codes of arma_predict.
enum ExitCode : int { kPass = 0, kFailure = 1, kUsage = 2 };

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a..b", "a..b:step" or "a,b,c". Throws std::invalid_argument.
std::vector<long> parse_n_list(const std::string& text);

/// "re+imj" with 17 significant digits.
std::string format_complex_csv(double re, double im);

}  // namespace armapred::cli
