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

// Text format "khg v1":
//
//   khg 1
//   <k> <n_1> ... <n_k>
//   <m>
//   <m lines of k space-separated 0-based indices, slot i = part i>
//
// LF line endings, single spaces, no trailing whitespace. Emitted files list
// edges in lexicographic order, so parse followed by emit reproduces any
// canonical file byte for byte.

#ifndef BALHYP_KHG_FORMAT_H_
#define BALHYP_KHG_FORMAT_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "balhyp/hypergraph.h"

namespace balhyp {

class KhgParseError : public std::runtime_error {
 public:
  KhgParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Parses the exact grammar above. Syntax errors and invariant violations
// (out-of-range index, duplicate edge) raise KhgParseError with the 1-based
// line number.
KPartiteHypergraph ParseKhg(std::string_view text);
std::string EmitKhg(const KPartiteHypergraph& h);

KPartiteHypergraph ReadKhgFile(const std::string& path);
void WriteKhgFile(const std::string& path, const KPartiteHypergraph& h);

// Reads a whole file; throws std::runtime_error when it cannot be opened.
std::string ReadFile(const std::string& path);
// Writes to a sibling temporary file and renames it over `path`.
void WriteFileAtomically(const std::string& path, std::string_view contents);

}  // namespace balhyp

#endif  // BALHYP_KHG_FORMAT_H_
