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

// Monte Carlo harness for the statistical checks.
//
// An experiment is a grid of cells and a number of trials per cell. Each
// cell owns a fixed hypergraph (modes bis, color, concentration) sampled
// from DeriveSeed({master, cell}, graph tag, 0); trial t of cell c draws
// from DeriveSeed({master, c}, trial tag, t), written to the seed column as
// "<seed>:<stream>" (color mode folds it to Mix64(seed ^ Mix64(stream))).
// Adding cells or trials never changes existing rows.
//
// Outputs are a trial table (one row per trial, in (cell, trial) order) and
// a summary table (one row per registered inequality per cell). Both start
// with a version row "# balhyp-<table> v1 mode=<mode>". Summary means and
// standard errors use only integer sums over the trial column x:
//   mean = S1 / T,  sd = sqrt(max(0, (S2 - S1*S1/T) / (T - 1))),  se = sd / sqrt(T)
// with S1 = sum x and S2 = sum x^2 held exactly as integers, so any reducer
// applying these formulas to the trial table reproduces them bit for bit.
// Checks against a binomial mean use the model standard error instead.

#ifndef BALHYP_EXPERIMENT_H_
#define BALHYP_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "balhyp/hypergraph.h"

namespace balhyp {

enum class ExperimentMode { kBis, kColor, kBound, kConcentration };

ExperimentMode ParseExperimentMode(const std::string& name);
std::string ExperimentModeName(ExperimentMode mode);

struct ExperimentSpec {
  ExperimentMode mode = ExperimentMode::kBis;
  std::vector<int> ks = {2};
  std::vector<Index> ns = {256};
  // Average degree D (bis, concentration) or target maximum degree (color);
  // the cell hypergraph is H(k, n, degree / n^(k-1)).
  std::vector<double> degrees = {32};
  std::vector<double> epsilons = {0.2};
  // bound mode: side s and edge probability p.
  std::vector<Index> sides = {1};
  std::vector<double> probabilities = {0.5};
  // concentration mode: palette size; 0 takes q from the coloring ledger.
  std::vector<Color> colors = {0};
  std::size_t trials = 100;
  std::uint64_t master_seed = 1;
  std::size_t retries = 20;
  // Adds a wall_ms column. Timing breaks byte-identical reruns.
  bool timing = false;
};

// Throws std::invalid_argument for an empty grid axis or zero trials.
void ValidateSpec(const ExperimentSpec& spec);

struct SummaryRow {
  std::size_t cell = 0;
  std::string params;
  std::string check;
  double lhs = 0;
  double rhs = 0;
  double se = 0;
  std::string relation;  // "<=", ">=", "~" (|lhs - rhs| <= 3 se), or "info"
  bool pass = false;
};

struct ExperimentResult {
  std::vector<std::string> trial_columns;
  std::vector<std::vector<std::string>> trial_rows;
  std::vector<SummaryRow> summary;

  bool all_pass() const;
  std::string TrialsCsv(ExperimentMode mode) const;
  std::string SummaryCsv(ExperimentMode mode) const;
  std::string Json(ExperimentMode mode) const;
};

ExperimentResult RunExperiment(const ExperimentSpec& spec);

// Round-trip formatting used in every table ("%.17g").
std::string FormatDouble(double x);

}  // namespace balhyp

#endif  // BALHYP_EXPERIMENT_H_
