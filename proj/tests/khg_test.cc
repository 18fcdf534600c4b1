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

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "balhyp/khg_format.h"
#include "oracles.h"

namespace balhyp {
namespace {

int ErrorLine(const std::string& text) {
  try {
    ParseKhg(text);
  } catch (const KhgParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Khg, CanonicalRoundTrip) {
  const std::string text = "khg 1\n3 2 2 3\n2\n0 1 2\n1 0 0\n";
  const KPartiteHypergraph h = ParseKhg(text);
  EXPECT_EQ(h.k(), 3);
  EXPECT_EQ(h.part_size(2), 3u);
  EXPECT_EQ(EmitKhg(h), text);
}

TEST(Khg, UnsortedInputIsSortedOnEmit) {
  const KPartiteHypergraph h = ParseKhg("khg 1\n2 2 2\n2\n1 1\n0 1\n");
  EXPECT_EQ(EmitKhg(h), "khg 1\n2 2 2\n2\n0 1\n1 1\n");
}

TEST(Khg, RandomRoundTrips) {
  std::mt19937_64 gen(1);
  for (int round = 0; round < 50; ++round) {
    const int k = 2 + round % 3;
    KPartiteHypergraph h(std::vector<Index>(k, 4),
                         oracle::RandomEdges(k, 4, 0.2, gen));
    const std::string text = EmitKhg(h);
    ASSERT_EQ(ParseKhg(text), h);
    ASSERT_EQ(EmitKhg(ParseKhg(text)), text);
  }
}

TEST(Khg, ErrorsCarryLineNumbers) {
  EXPECT_EQ(ErrorLine("khg 2\n2 1 1\n0\n"), 1);
  EXPECT_EQ(ErrorLine("khg 1\n2 1\n0\n"), 2);
  EXPECT_EQ(ErrorLine("khg 1\n1 1\n0\n"), 2);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n1\n0 2\n"), 4);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n2\n0 1\n0 1\n"), 5);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n1\n0  1\n"), 4);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n1\n01 1\n"), 4);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n1\n0 1"), 4);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n2\n0 1\n"), 5);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n1\n0 1\n1 1\n"), 5);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 2\n1\n0 1 1\n"), 4);
  EXPECT_EQ(ErrorLine("khg 1\r\n2 2 2\n0\n"), 1);
  EXPECT_EQ(ErrorLine("khg 1\n2 2 x\n0\n"), 2);
}

TEST(Khg, FilesAreWrittenAtomically) {
  const auto dir = std::filesystem::temp_directory_path() / "balhyp_khg_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "h.khg").string();
  const KPartiteHypergraph h = KPartiteHypergraph::Complete(2, 3);
  WriteKhgFile(path, h);
  EXPECT_EQ(ReadKhgFile(path), h);
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    EXPECT_EQ(entry.path().filename(), "h.khg");
  }
  EXPECT_THROW(ReadFile((dir / "missing.khg").string()), std::runtime_error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace balhyp
