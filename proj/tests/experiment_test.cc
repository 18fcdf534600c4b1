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

#include <cmath>
#include <map>
#include <sstream>

#include "balhyp/experiment.h"

namespace balhyp {
namespace {

using Table = std::vector<std::map<std::string, std::string>>;

std::vector<std::string> Split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

// Parses a versioned CSV: version row, header row, data rows.
Table ParseCsv(const std::string& text, std::string* version) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  *version = line;
  std::getline(in, line);
  const auto header = Split(line, ',');
  Table rows;
  while (std::getline(in, line)) {
    const auto fields = Split(line, ',');
    EXPECT_EQ(fields.size(), header.size());
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < header.size(); ++i) row[header[i]] = fields[i];
    rows.push_back(row);
  }
  return rows;
}

// One-pass reducer: integer sums, then the documented formulas.
struct Reduced {
  double mean = 0;
  double se = 0;
};
Reduced Reduce(const std::vector<long long>& xs) {
  long long s1 = 0, s2 = 0;
  for (long long x : xs) {
    s1 += x;
    s2 += x * x;
  }
  const double t = static_cast<double>(xs.size());
  Reduced r;
  r.mean = static_cast<double>(s1) / t;
  if (xs.size() > 1) {
    const double d1 = static_cast<double>(s1);
    const double sd = std::sqrt(std::max(0.0, (static_cast<double>(s2) - d1 * d1 / t) / (t - 1)));
    r.se = sd / std::sqrt(t);
  }
  return r;
}

TEST(Experiment, SingleCellSingleTrial) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::kBis;
  spec.ns = {64};
  spec.degrees = {8};
  spec.trials = 1;
  const ExperimentResult r = RunExperiment(spec);
  const std::string csv = r.TrialsCsv(spec.mode);
  std::string version;
  const Table rows = ParseCsv(csv, &version);
  EXPECT_EQ(version, "# balhyp-trials v1 mode=bis");
  EXPECT_EQ(rows.size(), 1u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
}

TEST(Experiment, InvalidSpecs) {
  ExperimentSpec spec;
  spec.trials = 0;
  EXPECT_THROW(ValidateSpec(spec), std::invalid_argument);
  spec.trials = 1;
  spec.ns.clear();
  EXPECT_THROW(ValidateSpec(spec), std::invalid_argument);
  EXPECT_THROW(ParseExperimentMode("nope"), std::invalid_argument);
}

TEST(Experiment, ConcentrationSummaryMatchesReducer) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::kConcentration;
  spec.ks = {2};
  spec.ns = {256};
  spec.degrees = {32};
  spec.colors = {8};
  spec.trials = 5000;
  spec.master_seed = 2024;
  const ExperimentResult r = RunExperiment(spec);
  std::string version;
  const Table trials = ParseCsv(r.TrialsCsv(spec.mode), &version);
  const Table summary = ParseCsv(r.SummaryCsv(spec.mode), &version);
  ASSERT_EQ(trials.size(), 5000u);

  std::vector<long long> lost1, empty, class0;
  for (const auto& row : trials) {
    lost1.push_back(row.at("lost_colors")[0] == '1');
    empty.push_back(std::stoll(row.at("list_empty")));
    class0.push_back(std::stoll(row.at("class_sizes_color_1")));
  }
  const double deg = std::stod(trials[0].at("vertex_degree"));
  const Reduced lost = Reduce(lost1);
  bool seen = false;
  for (const auto& row : summary) {
    if (row.at("check") == "claim_4_2_1") {
      seen = true;
      EXPECT_EQ(std::stod(row.at("lhs")), lost.mean);
      EXPECT_EQ(std::stod(row.at("se")), lost.se);
      EXPECT_NEAR(std::stod(row.at("rhs")), 1 - std::pow(1 - 1.0 / 8, deg), 1e-15);
      const bool pass = lost.mean <= std::stod(row.at("rhs")) + 3 * lost.se;
      EXPECT_EQ(row.at("pass"), pass ? "pass" : "fail");
    }
    if (row.at("check") == "claim_4_2_2") {
      EXPECT_EQ(std::stod(row.at("lhs")), Reduce(empty).mean);
      EXPECT_EQ(std::stod(row.at("se")), Reduce(empty).se);
    }
    if (row.at("check") == "lemma_4_1_part_0_color_1") {
      EXPECT_EQ(std::stod(row.at("lhs")), Reduce(class0).mean);
      EXPECT_DOUBLE_EQ(std::stod(row.at("rhs")), 32.0);
    }
  }
  EXPECT_TRUE(seen);
}

TEST(Experiment, BisSummaryMatchesReducer) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::kBis;
  spec.ks = {3};
  spec.ns = {40};
  spec.degrees = {10};
  spec.trials = 300;
  const ExperimentResult r = RunExperiment(spec);
  std::string version;
  const Table trials = ParseCsv(r.TrialsCsv(spec.mode), &version);
  const Table summary = ParseCsv(r.SummaryCsv(spec.mode), &version);
  std::vector<std::vector<long long>> parts(3);
  for (const auto& row : trials) {
    const auto sizes = Split(row.at("part_sizes"), ';');
    ASSERT_EQ(sizes.size(), 3u);
    for (int i = 0; i < 3; ++i) parts[i].push_back(std::stoll(sizes[i]));
  }
  for (const auto& row : summary) {
    if (row.at("check") == "lemma_3_3_part_1") {
      EXPECT_EQ(std::stod(row.at("lhs")), Reduce(parts[1]).mean);
    }
    if (row.at("check") == "lemma_3_4") {
      EXPECT_EQ(std::stod(row.at("lhs")), Reduce(parts[2]).mean);
      EXPECT_EQ(std::stod(row.at("se")), Reduce(parts[2]).se);
    }
  }
}

TEST(Experiment, RerunIsByteIdentical) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::kColor;
  spec.ns = {40};
  spec.degrees = {4};
  spec.trials = 5;
  const ExperimentResult a = RunExperiment(spec);
  const ExperimentResult b = RunExperiment(spec);
  EXPECT_EQ(a.TrialsCsv(spec.mode), b.TrialsCsv(spec.mode));
  EXPECT_EQ(a.SummaryCsv(spec.mode), b.SummaryCsv(spec.mode));
  EXPECT_EQ(a.Json(spec.mode), b.Json(spec.mode));
}

TEST(Experiment, AddingCellsKeepsExistingRows) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::kBound;
  spec.ns = {8};
  spec.sides = {3};
  spec.probabilities = {0.5};
  spec.trials = 20;
  const ExperimentResult small = RunExperiment(spec);
  spec.probabilities = {0.5, 0.6};
  spec.trials = 30;
  const ExperimentResult big = RunExperiment(spec);
  for (std::size_t t = 0; t < 20; ++t) {
    EXPECT_EQ(small.trial_rows[t], big.trial_rows[t]);
  }
}

TEST(Experiment, TimingColumnOptional) {
  ExperimentSpec spec;
  spec.mode = ExperimentMode::kBound;
  spec.ns = {6};
  spec.trials = 2;
  spec.timing = true;
  const ExperimentResult r = RunExperiment(spec);
  EXPECT_EQ(r.trial_columns.back(), "wall_ms");
  EXPECT_EQ(r.trial_rows[0].size(), r.trial_columns.size());
}

}  // namespace
}  // namespace balhyp
