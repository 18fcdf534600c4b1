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

#include "balhyp/experiment.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "balhyp/coloring.h"
#include "balhyp/indep.h"
#include "balhyp/models.h"
#include "balhyp/parallel.h"
#include "balhyp/random.h"
#include "json.hpp"

namespace balhyp {

namespace {

constexpr std::uint64_t kGraphTag = 0x6772617068ULL;  // "graph"
constexpr std::uint64_t kTrialTag = 0x747269616cULL;  // "trial"

struct Cell {
  int k = 2;
  Index n = 0;
  double degree = 0;
  double epsilon = 0;
  Index side = 0;
  double probability = 0;
  Color colors = 0;
};

std::vector<Cell> EnumerateCells(const ExperimentSpec& spec) {
  std::vector<Cell> cells;
  for (int k : spec.ks) {
    for (Index n : spec.ns) {
      if (spec.mode == ExperimentMode::kBound) {
        for (Index s : spec.sides) {
          for (double p : spec.probabilities) {
            cells.push_back({k, n, 0, 0, s, p, 0});
          }
        }
        continue;
      }
      for (double d : spec.degrees) {
        for (double eps : spec.epsilons) {
          if (spec.mode == ExperimentMode::kConcentration) {
            for (Color q : spec.colors) cells.push_back({k, n, d, eps, 0, 0, q});
          } else {
            cells.push_back({k, n, d, eps, 0, 0, 0});
          }
        }
      }
    }
  }
  return cells;
}

std::string CellParams(ExperimentMode mode, const Cell& c) {
  std::string s = "k=" + std::to_string(c.k) + ";n=" + std::to_string(c.n);
  if (mode == ExperimentMode::kBound) {
    return s + ";s=" + std::to_string(c.side) + ";p=" + FormatDouble(c.probability);
  }
  s += ";degree=" + FormatDouble(c.degree) + ";eps=" + FormatDouble(c.epsilon);
  if (mode == ExperimentMode::kConcentration && c.colors > 0) {
    s += ";q=" + std::to_string(c.colors);
  }
  return s;
}

// Exact integer moments of one trial column.
struct Moments {
  std::uint64_t count = 0;
  std::uint64_t sum = 0;
  std::uint64_t sum_sq = 0;

  void Add(std::uint64_t x) {
    ++count;
    sum += x;
    sum_sq += x * x;
  }
  double mean() const { return static_cast<double>(sum) / count; }
  double se() const {
    if (count < 2) return 0;
    const double s1 = static_cast<double>(sum);
    const double var = (static_cast<double>(sum_sq) - s1 * s1 / count) / (count - 1);
    return std::sqrt(std::max(0.0, var)) / std::sqrt(static_cast<double>(count));
  }
};

SummaryRow Row(std::size_t cell, const std::string& params, std::string check,
               double lhs, double rhs, double se, std::string relation) {
  SummaryRow r{cell, params, std::move(check), lhs, rhs, se, std::move(relation), false};
  if (r.relation == "<=") {
    r.pass = r.lhs <= r.rhs + 3 * r.se;
  } else if (r.relation == ">=") {
    r.pass = r.lhs >= r.rhs - 3 * r.se;
  } else if (r.relation == "~") {
    r.pass = std::abs(r.lhs - r.rhs) <= 3 * r.se;
  } else {
    r.pass = true;  // "info": descriptive only
  }
  return r;
}

std::string JoinSizes(const std::vector<std::size_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += ';';
    s += std::to_string(xs[i]);
  }
  return s;
}

KPartiteHypergraph CellGraph(const ExperimentSpec& spec, std::size_t cell,
                             const Cell& c) {
  const double p = c.degree / std::pow(static_cast<double>(c.n), c.k - 1);
  return SampleHknp(c.k, c.n, std::min(1.0, p),
                    DeriveSeed(Seed{spec.master_seed, cell}, kGraphTag, 0));
}

Seed TrialSeed(const ExperimentSpec& spec, std::size_t cell, std::size_t trial) {
  return DeriveSeed(Seed{spec.master_seed, cell}, kTrialTag, trial);
}

std::string SeedText(Seed s) {
  return std::to_string(s.seed) + ":" + std::to_string(s.stream);
}

using Clock = std::chrono::steady_clock;

void RunBisCell(const ExperimentSpec& spec, std::size_t cell, const Cell& c,
                ExperimentResult& out) {
  const KPartiteHypergraph h = CellGraph(spec, cell, c);
  const IndParams params = ComputeIndParams(h, c.epsilon);
  const std::string ps = CellParams(spec.mode, c);
  std::vector<IndOutcome> outcomes(spec.trials);
  std::vector<double> wall(spec.trials);
  ParallelFor(spec.trials, [&](std::size_t t) {
    const auto start = Clock::now();
    outcomes[t] = RunInd(h, params.p, TrialSeed(spec, cell, t));
    wall[t] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  });
  std::vector<Moments> parts(c.k);
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const IndOutcome& o = outcomes[t];
    for (int i = 0; i < c.k; ++i) parts[i].Add(o.part_sizes[i]);
    std::vector<std::string> row = {
        std::to_string(cell),        std::to_string(t),
        SeedText(TrialSeed(spec, cell, t)),
        std::to_string(c.k),         std::to_string(c.n),
        FormatDouble(c.degree),      FormatDouble(c.epsilon),
        FormatDouble(params.p),      std::to_string(h.num_edges()),
        JoinSizes(o.part_sizes),     std::to_string(o.side())};
    if (spec.timing) row.push_back(FormatDouble(wall[t]));
    out.trial_rows.push_back(std::move(row));
  }
  const double n = c.n;
  const double model_se =
      std::sqrt(n * params.p * (1 - params.p) / static_cast<double>(spec.trials));
  for (int j = 0; j + 1 < c.k; ++j) {
    out.summary.push_back(Row(cell, ps, "lemma_3_3_part_" + std::to_string(j),
                              parts[j].mean(), n * params.p, model_se, "~"));
  }
  double expected_last = 0;
  const double pk = std::pow(params.p, c.k - 1);
  for (Index v = 0; v < c.n; ++v) {
    expected_last += std::pow(1 - pk, static_cast<double>(h.degree({c.k - 1, v})));
  }
  out.summary.push_back(Row(cell, ps, "lemma_3_4", parts[c.k - 1].mean(),
                            expected_last, parts[c.k - 1].se(), ">="));
}

void RunConcentrationCell(const ExperimentSpec& spec, std::size_t cell,
                          const Cell& c, ExperimentResult& out) {
  const KPartiteHypergraph h = CellGraph(spec, cell, c);
  const int last = c.k - 1;
  Color q = c.colors;
  if (q == 0) {
    q = ComputeColParams(c.k, c.epsilon,
                         std::max<double>(3, static_cast<double>(h.max_degree())), c.n)
            .q;
  }
  // The watched vertex: highest degree in the last part, lowest index.
  Index watched = 0;
  for (Index v = 1; v < c.n; ++v) {
    if (h.degree({last, v}) > h.degree({last, watched})) watched = v;
  }
  const std::size_t watched_degree = h.degree({last, watched});
  const std::string ps = CellParams(spec.mode, c);

  struct Trial {
    std::size_t failed = 0;
    std::vector<std::size_t> class_sizes;  // |V_i(1)| for i < k-1
    std::string lost;                      // '1' at position c-1 if c not in L(v)
    bool empty = false;
    double wall = 0;
  };
  std::vector<Trial> trials(spec.trials);
  ParallelFor(spec.trials, [&](std::size_t t) {
    const auto start = Clock::now();
    PhaseState state = ColRandomPhase(h, q, TrialSeed(spec, cell, t));
    Trial& tr = trials[t];
    tr.failed = state.failed.size();
    for (int i = 0; i < last; ++i) tr.class_sizes.push_back(state.phase_class_sizes[1][i]);
    // Lists depend only on the colors outside the last part.
    const auto list = AvailableColors(h, state.coloring, watched, q);
    tr.lost.assign(q, '1');
    for (Color col : list) tr.lost[col - 1] = '0';
    tr.empty = list.empty();
    tr.wall = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  });

  std::vector<Moments> classes(last);
  std::vector<Moments> lost(q + 1);
  Moments empty;
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const Trial& tr = trials[t];
    for (int i = 0; i < last; ++i) classes[i].Add(tr.class_sizes[i]);
    for (Color col = 1; col <= q; ++col) lost[col].Add(tr.lost[col - 1] == '1');
    empty.Add(tr.empty);
    std::vector<std::string> row = {
        std::to_string(cell),         std::to_string(t),
        SeedText(TrialSeed(spec, cell, t)),
        std::to_string(c.k),          std::to_string(c.n),
        FormatDouble(c.degree),       FormatDouble(c.epsilon),
        std::to_string(q),            std::to_string(watched),
        std::to_string(watched_degree), std::to_string(tr.failed),
        JoinSizes(tr.class_sizes),    tr.lost,
        std::to_string(tr.empty ? 1 : 0)};
    if (spec.timing) row.push_back(FormatDouble(tr.wall));
    out.trial_rows.push_back(std::move(row));
  }
  const double n = c.n;
  const double model_se =
      std::sqrt(n * (1.0 / q) * (1 - 1.0 / q) / static_cast<double>(spec.trials));
  for (int i = 0; i < last; ++i) {
    out.summary.push_back(Row(cell, ps, "lemma_4_1_part_" + std::to_string(i) + "_color_1",
                              classes[i].mean(), n / q, model_se, "~"));
  }
  const double harris = 1 - std::pow(1 - 1 / std::pow(static_cast<double>(q), c.k - 1),
                                     static_cast<double>(watched_degree));
  out.summary.push_back(
      Row(cell, ps, "claim_4_2_1", lost[1].mean(), harris, lost[1].se(), "<="));
  double product = 1;
  for (Color col = 1; col <= q; ++col) product *= lost[col].mean();
  out.summary.push_back(
      Row(cell, ps, "claim_4_2_2", empty.mean(), product, empty.se(), "<="));
}

void RunColorCell(const ExperimentSpec& spec, std::size_t cell, const Cell& c,
                  ExperimentResult& out) {
  const KPartiteHypergraph h = CellGraph(spec, cell, c);
  const std::string ps = CellParams(spec.mode, c);
  std::vector<ColoringReport> reports(spec.trials);
  std::vector<double> wall(spec.trials);
  ParallelFor(spec.trials, [&](std::size_t t) {
    const auto start = Clock::now();
    // FullColoring takes a single word; fold the stream into it.
    const Seed s = TrialSeed(spec, cell, t);
    reports[t] = FullColoring(h, c.epsilon, Mix64(s.seed ^ Mix64(s.stream)), spec.retries);
    wall[t] = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  });
  Moments colors, main_path, valid;
  std::size_t escape_worst = 0;
  for (std::size_t t = 0; t < spec.trials; ++t) {
    const ColoringReport& r = reports[t];
    const bool ok = IsProperBalancedColoring(h, r.coloring, true);
    colors.Add(r.colors_used);
    main_path.Add(r.path == "main");
    valid.Add(ok);
    if (r.path == "fallback") escape_worst = std::max(escape_worst, r.colors_used);
    std::vector<std::string> row = {
        std::to_string(cell),      std::to_string(t),
        SeedText(TrialSeed(spec, cell, t)),
        std::to_string(c.k),       std::to_string(c.n),
        FormatDouble(c.degree),    FormatDouble(c.epsilon),
        std::to_string(h.max_degree()), r.path,
        std::to_string(r.colors_used),  std::to_string(r.q),
        std::to_string(r.retries_used), std::to_string(r.residual_max_degree),
        std::to_string(ok ? 1 : 0)};
    if (spec.timing) row.push_back(FormatDouble(wall[t]));
    out.trial_rows.push_back(std::move(row));
  }
  out.summary.push_back(Row(cell, ps, "validity", valid.mean(), 1, 0, ">="));
  out.summary.push_back(Row(cell, ps, "escape_colors_max",
                            static_cast<double>(escape_worst),
                            static_cast<double>(c.k * h.max_degree() + 1), 0, "<="));
  out.summary.push_back(Row(cell, ps, "colors_mean", colors.mean(), colors.mean(),
                            colors.se(), "info"));
  out.summary.push_back(Row(cell, ps, "main_path_rate", main_path.mean(),
                            main_path.mean(), main_path.se(), "info"));
}

void RunBoundCell(const ExperimentSpec& spec, std::size_t cell, const Cell& c,
                  ExperimentResult& out) {
  const std::string ps = CellParams(spec.mode, c);
  struct Trial {
    std::size_t edges = 0;
    bool exists = false;
    double wall = 0;
  };
  std::vector<Trial> trials(spec.trials);
  ParallelFor(spec.trials, [&](std::size_t t) {
    const auto start = Clock::now();
    const KPartiteHypergraph h =
        SampleHknp(c.k, c.n, c.probability, TrialSeed(spec, cell, t));
    trials[t].edges = h.num_edges();
    trials[t].exists = ExistsBalancedIndependentSet(h, c.side);
    trials[t].wall = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  });
  Moments exists;
  for (std::size_t t = 0; t < spec.trials; ++t) {
    exists.Add(trials[t].exists);
    std::vector<std::string> row = {
        std::to_string(cell),  std::to_string(t),
        SeedText(TrialSeed(spec, cell, t)),
        std::to_string(c.k),   std::to_string(c.n),
        std::to_string(c.side), FormatDouble(c.probability),
        std::to_string(trials[t].edges), std::to_string(trials[t].exists ? 1 : 0)};
    if (spec.timing) row.push_back(FormatDouble(trials[t].wall));
    out.trial_rows.push_back(std::move(row));
  }
  out.summary.push_back(Row(cell, ps, "lemma_3_1", exists.mean(),
                            UnionBoundBis(c.k, c.n, c.side, c.probability),
                            exists.se(), "<="));
}

std::vector<std::string> Columns(const ExperimentSpec& spec) {
  std::vector<std::string> cols;
  switch (spec.mode) {
    case ExperimentMode::kBis:
      cols = {"cell", "trial", "seed", "k", "n", "degree", "epsilon", "p", "edges",
              "part_sizes", "side"};
      break;
    case ExperimentMode::kConcentration:
      cols = {"cell", "trial", "seed", "k", "n", "degree", "epsilon", "q", "vertex",
              "vertex_degree", "failed", "class_sizes_color_1", "lost_colors",
              "list_empty"};
      break;
    case ExperimentMode::kColor:
      cols = {"cell", "trial", "seed", "k", "n", "degree", "epsilon", "max_degree",
              "path", "colors_used", "q", "retries_used",
              "residual_max_degree", "valid"};
      break;
    case ExperimentMode::kBound:
      cols = {"cell", "trial", "seed", "k", "n", "side", "p", "edges", "exists"};
      break;
  }
  if (spec.timing) cols.push_back("wall_ms");
  return cols;
}

std::string JoinRow(const std::vector<std::string>& row) {
  std::string s;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) s += ',';
    s += row[i];
  }
  return s + "\n";
}

}  // namespace

ExperimentMode ParseExperimentMode(const std::string& name) {
  if (name == "bis") return ExperimentMode::kBis;
  if (name == "color") return ExperimentMode::kColor;
  if (name == "bound") return ExperimentMode::kBound;
  if (name == "concentration") return ExperimentMode::kConcentration;
  throw std::invalid_argument("unknown experiment mode '" + name + "'");
}

std::string ExperimentModeName(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::kBis:
      return "bis";
    case ExperimentMode::kColor:
      return "color";
    case ExperimentMode::kBound:
      return "bound";
    case ExperimentMode::kConcentration:
      return "concentration";
  }
  return "";
}

std::string FormatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void ValidateSpec(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (spec.ks.empty() || spec.ns.empty()) {
    throw std::invalid_argument("experiment grid is empty");
  }
  if (spec.mode == ExperimentMode::kBound) {
    if (spec.sides.empty() || spec.probabilities.empty()) {
      throw std::invalid_argument("experiment grid is empty");
    }
  } else if (spec.degrees.empty() || spec.epsilons.empty() ||
             (spec.mode == ExperimentMode::kConcentration && spec.colors.empty())) {
    throw std::invalid_argument("experiment grid is empty");
  }
}

bool ExperimentResult::all_pass() const {
  for (const SummaryRow& r : summary) {
    if (!r.pass) return false;
  }
  return true;
}

std::string ExperimentResult::TrialsCsv(ExperimentMode mode) const {
  std::string s = "# balhyp-trials v1 mode=" + ExperimentModeName(mode) + "\n";
  s += JoinRow(trial_columns);
  for (const auto& row : trial_rows) s += JoinRow(row);
  return s;
}

std::string ExperimentResult::SummaryCsv(ExperimentMode mode) const {
  std::string s = "# balhyp-summary v1 mode=" + ExperimentModeName(mode) + "\n";
  s += "cell,params,check,lhs,rhs,se,relation,pass\n";
  for (const SummaryRow& r : summary) {
    s += JoinRow({std::to_string(r.cell), r.params, r.check, FormatDouble(r.lhs),
                  FormatDouble(r.rhs), FormatDouble(r.se), r.relation,
                  r.relation == "info" ? "-" : r.pass ? "pass" : "fail"});
  }
  return s;
}

std::string ExperimentResult::Json(ExperimentMode mode) const {
  nlohmann::ordered_json j;
  j["format"] = "balhyp-experiment v1";
  j["mode"] = ExperimentModeName(mode);
  j["columns"] = trial_columns;
  j["trials"] = trial_rows;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const SummaryRow& r : summary) {
    rows.push_back({{"cell", r.cell}, {"params", r.params}, {"check", r.check},
                    {"lhs", r.lhs}, {"rhs", r.rhs}, {"se", r.se},
                    {"relation", r.relation}, {"pass", r.pass}});
  }
  j["summary"] = rows;
  return j.dump(2) + "\n";
}

ExperimentResult RunExperiment(const ExperimentSpec& spec) {
  ValidateSpec(spec);
  ExperimentResult out;
  out.trial_columns = Columns(spec);
  const std::vector<Cell> cells = EnumerateCells(spec);
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    switch (spec.mode) {
      case ExperimentMode::kBis:
        RunBisCell(spec, cell, cells[cell], out);
        break;
      case ExperimentMode::kConcentration:
        RunConcentrationCell(spec, cell, cells[cell], out);
        break;
      case ExperimentMode::kColor:
        RunColorCell(spec, cell, cells[cell], out);
        break;
      case ExperimentMode::kBound:
        RunBoundCell(spec, cell, cells[cell], out);
        break;
    }
  }
  return out;
}

}  // namespace balhyp
