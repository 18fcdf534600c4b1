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

#include "balhyp/khg_format.h"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace balhyp {

namespace {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  int line() const { return line_; }

  // Returns the next LF-terminated line without its terminator.
  std::string_view Next(const char* expected) {
    ++line_;
    if (pos_ >= text_.size()) {
      throw KhgParseError(line_, std::string("unexpected end of file, expected ") +
                                     expected);
    }
    const std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) {
      throw KhgParseError(line_, "missing LF line terminator");
    }
    std::string_view s = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return s;
  }

  bool AtEnd() const { return pos_ >= text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

// Splits on single spaces and parses unsigned decimal fields.
std::vector<std::uint64_t> Fields(std::string_view s, int line) {
  std::vector<std::uint64_t> out;
  if (s.empty()) throw KhgParseError(line, "empty line");
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(s.find(' ', pos), s.size());
    std::string_view tok = s.substr(pos, end - pos);
    if (tok.empty()) {
      throw KhgParseError(line, "fields must be separated by single spaces");
    }
    if (tok.size() > 1 && tok[0] == '0') {
      throw KhgParseError(line, "leading zero in '" + std::string(tok) + "'");
    }
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw KhgParseError(line, "not a non-negative integer: '" +
                                    std::string(tok) + "'");
    }
    out.push_back(value);
    if (end == s.size()) break;
    pos = end + 1;
  }
  return out;
}

}  // namespace

KPartiteHypergraph ParseKhg(std::string_view text) {
  LineReader reader(text);
  if (reader.Next("header") != "khg 1") {
    throw KhgParseError(reader.line(), "expected header 'khg 1'");
  }
  // Next() advances the line counter, so it must run before line().
  std::string_view text_line = reader.Next("dimensions");
  auto dims = Fields(text_line, reader.line());
  if (dims[0] < 2) throw KhgParseError(reader.line(), "k must be at least 2");
  if (dims.size() != dims[0] + 1) {
    throw KhgParseError(reader.line(), "expected k followed by k part sizes");
  }
  const int k = static_cast<int>(dims[0]);
  std::vector<Index> sizes(k);
  for (int i = 0; i < k; ++i) {
    if (dims[i + 1] > UINT32_MAX) {
      throw KhgParseError(reader.line(), "part size too large");
    }
    sizes[i] = static_cast<Index>(dims[i + 1]);
  }
  text_line = reader.Next("edge count");
  auto count = Fields(text_line, reader.line());
  if (count.size() != 1) throw KhgParseError(reader.line(), "expected edge count");
  const std::uint64_t m = count[0];
  std::vector<Index> flat;
  std::map<std::vector<Index>, int> seen;
  for (std::uint64_t e = 0; e < m; ++e) {
    text_line = reader.Next("edge");
    auto members = Fields(text_line, reader.line());
    if (static_cast<int>(members.size()) != k) {
      throw KhgParseError(reader.line(),
                          "expected " + std::to_string(k) + " indices");
    }
    std::vector<Index> edge(k);
    for (int i = 0; i < k; ++i) {
      if (members[i] >= sizes[i]) {
        throw KhgParseError(reader.line(),
                            "index out of range in part " + std::to_string(i));
      }
      edge[i] = static_cast<Index>(members[i]);
    }
    auto [it, inserted] = seen.emplace(edge, reader.line());
    if (!inserted) {
      throw KhgParseError(reader.line(), "duplicate edge (first on line " +
                                             std::to_string(it->second) + ")");
    }
    flat.insert(flat.end(), edge.begin(), edge.end());
  }
  if (!reader.AtEnd()) {
    throw KhgParseError(reader.line() + 1, "trailing content after last edge");
  }
  return KPartiteHypergraph::FromFlat(std::move(sizes), std::move(flat));
}

std::string EmitKhg(const KPartiteHypergraph& h) {
  std::string out = "khg 1\n" + std::to_string(h.k());
  for (Index s : h.part_sizes()) out += " " + std::to_string(s);
  out += "\n" + std::to_string(h.num_edges()) + "\n";
  for (std::size_t e = 0; e < h.num_edges(); ++e) {
    auto members = h.edge(e);
    for (int i = 0; i < h.k(); ++i) {
      if (i > 0) out += ' ';
      out += std::to_string(members[i]);
    }
    out += '\n';
  }
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileAtomically(const std::string& path, std::string_view contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw std::runtime_error("cannot write " + path);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot write " + path + ": " + ec.message());
  }
}

KPartiteHypergraph ReadKhgFile(const std::string& path) {
  return ParseKhg(ReadFile(path));
}

void WriteKhgFile(const std::string& path, const KPartiteHypergraph& h) {
  WriteFileAtomically(path, EmitKhg(h));
}

}  // namespace balhyp
