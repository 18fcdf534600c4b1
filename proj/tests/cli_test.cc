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
#include <sstream>

#include "balhyp/khg_format.h"
#include "commands.h"

namespace balhyp::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("balhyp_cli_" + std::string(::testing::UnitTest::GetInstance()
                                            ->current_test_info()
                                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  int Call(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, GenThenVerify) {
  ASSERT_EQ(Call({"gen", "--k", "2", "--n", "8", "--p", "0.25", "--seed", "7", "--out",
                  Path("h.khg")}),
            kExitOk);
  EXPECT_EQ(Call({"verify", "--in", Path("h.khg")}), kExitOk);
}

TEST_F(CliTest, ExactAlphaOnComplete) {
  WriteKhgFile(Path("tiny.khg"), KPartiteHypergraph::Complete(2, 3));
  EXPECT_EQ(Call({"exact", "--in", Path("tiny.khg"), "--what", "alpha"}), kExitOk);
  EXPECT_EQ(out_.str(), "0\n");
}

TEST_F(CliTest, BoundFormatting) {
  EXPECT_EQ(Call({"bound", "--k", "2", "--N", "6", "--s", "2", "--p", "0.5"}), kExitOk);
  EXPECT_EQ(out_.str(), "1.40625e1\n");
  EXPECT_EQ(FormatBound(0.2), "2.00000e-1");
  EXPECT_EQ(FormatBound(0), "0.00000e0");
  EXPECT_EQ(FormatBound(1234567), "1.23457e6");
}

TEST_F(CliTest, ParseErrorExitsTwoWithLine) {
  WriteFileAtomically(Path("bad.khg"), "khg 1\n2 2 2\n1\n0 5\n");
  EXPECT_EQ(Call({"verify", "--in", Path("bad.khg")}), kExitInvalid);
  EXPECT_NE(err_.str().find("line 4"), std::string::npos);
}

TEST_F(CliTest, UnknownFlagExitsTwo) {
  EXPECT_EQ(Call({"bound", "--k", "2", "--bogus", "1"}), kExitInvalid);
  EXPECT_EQ(Call({}), kExitInvalid);
}

TEST_F(CliTest, BudgetExhaustionExitsThree) {
  WriteKhgFile(Path("big.khg"), KPartiteHypergraph::Empty(3, 40));
  EXPECT_EQ(Call({"exact", "--in", Path("big.khg"), "--what", "alpha", "--budget", "1000"}),
            kExitBudget);
}

TEST_F(CliTest, OutputsVerify) {
  ASSERT_EQ(Call({"gen", "--k", "3", "--n", "12", "--p", "0.01", "--seed", "3", "--out",
                  Path("h.khg")}),
            kExitOk);
  ASSERT_EQ(Call({"bis", "--in", Path("h.khg"), "--p", "0.4", "--trials", "20", "--json",
                  Path("bis.json")}),
            kExitOk);
  EXPECT_EQ(Call({"verify", "--in", Path("h.khg"), "--set", Path("bis.json")}), kExitOk);
  ASSERT_EQ(Call({"fallback-color", "--in", Path("h.khg"), "--out", Path("fb.json")}),
            kExitOk);
  EXPECT_EQ(Call({"verify", "--in", Path("h.khg"), "--coloring", Path("fb.json")}),
            kExitOk);
  ASSERT_EQ(Call({"color", "--in", Path("h.khg"), "--json", Path("c.json")}), kExitOk);
  EXPECT_EQ(Call({"verify", "--in", Path("h.khg"), "--coloring", Path("c.json")}),
            kExitOk);
}

TEST_F(CliTest, VerifyRejectsBadColoring) {
  WriteKhgFile(Path("h.khg"), KPartiteHypergraph({1, 1}, {{0, 0}}));
  WriteFileAtomically(Path("c.json"), R"({"palette": 1, "colors": [[1], [1]]})");
  EXPECT_EQ(Call({"verify", "--in", Path("h.khg"), "--coloring", Path("c.json")}),
            kExitInvalid);
}

TEST_F(CliTest, ExperimentWritesCsvPair) {
  ASSERT_EQ(Call({"experiment", "--mode", "bound", "--k", "2", "--n", "6", "--s", "2",
                  "--p", "0.5", "--trials", "3", "--out", Path("t.csv")}),
            kExitOk);
  EXPECT_TRUE(fs::exists(Path("t.csv")));
  EXPECT_TRUE(fs::exists(Path("t.csv.summary.csv")));
  ASSERT_EQ(Call({"experiment", "--mode", "bound", "--n", "6", "--trials", "3",
                  "--format", "json", "--out", Path("t.json")}),
            kExitOk);
  EXPECT_EQ(ReadFile(Path("t.json")).substr(0, 1), "{");
}

}  // namespace
}  // namespace balhyp::cli
