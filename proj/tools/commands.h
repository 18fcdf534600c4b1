// Copyright 2026 The balhyp Authors
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

// The balhyp command line. Exit codes: 0 success, 2 bad input or a failed
// check, 3 budget exhausted.

#ifndef BALHYP_TOOLS_COMMANDS_H_
#define BALHYP_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace balhyp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitBudget = 3;

// args excludes the program name.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// Scientific notation with 6 significant digits and a bare exponent,
// e.g. 1.40625e1 or 2.00000e-1.
std::string FormatBound(double x);

}  // namespace balhyp::cli

#endif  // BALHYP_TOOLS_COMMANDS_H_
