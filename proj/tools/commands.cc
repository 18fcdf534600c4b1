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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "balhyp/coloring.h"
#include "balhyp/experiment.h"
#include "balhyp/hypergraph.h"
#include "balhyp/indep.h"
#include "balhyp/khg_format.h"
#include "balhyp/matching.h"
#include "balhyp/models.h"
#include "json.hpp"

namespace balhyp::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised for inputs that fail a check after parsing; maps to exit 2.
class InvalidInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void WriteJson(const std::string& path, const Json& j) {
  WriteFileAtomically(path, j.dump(2) + "\n");
}

Json ReadJson(const std::string& path) {
  try {
    return Json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

KPartiteHypergraph LoadKhg(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return ParseKhg(text);
  } catch (const KhgParseError& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

Json ColoringJson(const PartialColoring& c) {
  Json colors = Json::array();
  for (int i = 0; i < c.k(); ++i) colors.push_back(c.part(i));
  return colors;
}

Json VerdictJson(const ColoringVerdict& v, bool require_total) {
  return {{"fits", v.fits},
          {"proper", v.proper},
          {"balanced", v.balanced},
          {"total", v.total},
          {"monochromatic_edges", v.monochromatic_edges},
          {"ok", v.ok(require_total)}};
}

// class_sizes[c - 1] = |V_i(c)| per part, colors 1..palette.
Json ClassSizesJson(const PartialColoring& c) {
  const auto sizes = c.ClassSizes();
  Json rows = Json::array();
  for (std::size_t col = 1; col < sizes.size(); ++col) rows.push_back(sizes[col]);
  return rows;
}

Json WarningsJson(const std::vector<std::string>& warnings) {
  return Json(warnings);
}

void PrintWarnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const auto& w : warnings) err << "warning: " << w << "\n";
}

struct GenArgs {
  int k = 2;
  Index n = 8;
  double p = 0.5;
  std::uint64_t seed = 1;
  std::string model = "hknp";
  double eps = 0.2;
  double delta = 0;
  std::string out;
};

int CmdGen(const GenArgs& a, std::ostream& out, std::ostream& err) {
  if (a.model == "hknp") {
    const KPartiteHypergraph h = SampleHknp(a.k, a.n, a.p, Seed{a.seed, 0});
    WriteKhgFile(a.out, h);
    out << "edges " << h.num_edges() << " max_degree " << h.max_degree() << "\n";
    return kExitOk;
  }
  // Upper-bound instance: sample H(k, N, p) and trim to part size n.
  const UpperBoundParams params = ComputeUpperBoundParams(a.eps, a.k, a.delta, a.n);
  const UpperBoundInstance inst = BuildUpperBoundInstance(params, Seed{a.seed, 0});
  WriteKhgFile(a.out, inst.trimmed.graph);
  if (!inst.degree_target_met) {
    err << "warning: maximum degree " << inst.trimmed.graph.max_degree()
        << " exceeds the target " << a.delta << "\n";
  }
  out << "N " << params.sample_size << " p " << FormatDouble(params.p) << " side "
      << params.side << " edges " << inst.trimmed.graph.num_edges()
      << " max_degree " << inst.trimmed.graph.max_degree() << "\n";
  return kExitOk;
}

struct BisArgs {
  std::string in;
  double eps = 0.2;
  std::optional<double> p;  // bypasses the parameter ledger
  std::optional<std::size_t> trials;
  std::uint64_t seed = 1;
  std::string json;
};

int CmdBis(const BisArgs& a, std::ostream& out, std::ostream& err) {
  const KPartiteHypergraph h = LoadKhg(a.in);
  Json ledger;
  double p = 0;
  std::size_t default_trials = 100;
  if (a.p) {
    p = *a.p;
    if (!(p >= 0 && p <= 1)) throw InvalidInput("--p must lie in [0, 1]");
    ledger = {{"p", p}};
  } else {
    const IndParams params = ComputeIndParams(h, a.eps);
    p = params.p;
    default_trials = params.default_trials;
    if (!params.target_supported) {
      err << "warning: target " << FormatDouble(params.target)
          << " per part is not covered at D = " << FormatDouble(params.avg_degree)
          << "; reporting the best trial anyway\n";
    }
    ledger = {{"epsilon", params.epsilon},
              {"k", params.k},
              {"avg_degree", params.avg_degree},
              {"n", params.n},
              {"p", params.p},
              {"delta", params.delta},
              {"target", params.target},
              {"target_supported", params.target_supported},
              {"default_trials", params.default_trials}};
  }
  const std::size_t trials = a.trials.value_or(default_trials);
  if (trials < 1) throw InvalidInput("--trials must be at least 1");
  const TrialSummary s = BestOfTrials(h, p, trials, a.seed);
  if (!IsBalancedIndependent(h, s.best.balanced)) {
    throw std::logic_error("best set is not independent");
  }
  if (!a.json.empty()) {
    Json j;
    j["params"] = ledger;
    j["seed"] = a.seed;
    j["trials"] = trials;
    j["part_sizes"] = s.part_sizes;
    j["sides"] = s.sides;
    j["best_trial"] = s.best_trial;
    j["side"] = s.best.side();
    j["witness"] = s.best.balanced.parts();
    WriteJson(a.json, j);
  }
  out << s.best.side() << "\n";
  return kExitOk;
}

struct ColorArgs {
  std::string in;
  double eps = 0.2;
  std::uint64_t seed = 1;
  std::size_t retries = kDefaultColoringRetries;
  std::size_t restarts = kDefaultMatchingRestarts;
  std::string json;
};

int CmdColor(const ColorArgs& a, std::ostream& out, std::ostream& err) {
  const KPartiteHypergraph h = LoadKhg(a.in);
  const ColoringReport r = FullColoring(h, a.eps, a.seed, a.retries, a.restarts);
  PrintWarnings(r.warnings, err);
  if (!a.json.empty()) {
    Json attempts = Json::array();
    for (const AttemptRecord& t : r.attempts) {
      attempts.push_back({{"index", t.index},
                          {"failed", t.failed},
                          {"failed_small", t.failed_small},
                          {"classes_concentrated", t.classes_concentrated},
                          {"balance_clamped", t.balance_clamped},
                          {"good_shortfall", t.good_shortfall},
                          {"n_c", t.n_c},
                          {"residual_n", t.residual_n},
                          {"residual_max_degree", t.residual_max_degree},
                          {"accepted", t.accepted},
                          {"reason", t.reason}});
    }
    Json j;
    j["palette"] = r.coloring.palette();
    j["q"] = r.q;
    j["delta_tilde_eff"] = r.delta_tilde_eff;
    j["retries_used"] = r.retries_used;
    j["path"] = r.path;
    j["colors_used"] = r.colors_used;
    j["residual_max_degree"] = r.residual_max_degree;
    j["validator"] = VerdictJson(r.verdict, true);
    j["per_class_sizes"] = ClassSizesJson(r.coloring);
    j["attempts"] = attempts;
    j["warnings"] = WarningsJson(r.warnings);
    j["colors"] = ColoringJson(r.coloring);
    WriteJson(a.json, j);
  }
  out << r.path << " " << r.colors_used << "\n";
  return kExitOk;
}

struct FallbackArgs {
  std::string in;
  std::uint64_t seed = 1;
  std::size_t restarts = kDefaultMatchingRestarts;
  std::string out;
};

int CmdFallback(const FallbackArgs& a, std::ostream& out, std::ostream& err) {
  const KPartiteHypergraph h = LoadKhg(a.in);
  const FallbackResult r = FallbackColoring(h, Seed{a.seed, 0}, a.restarts);
  PrintWarnings(r.warnings, err);
  if (!a.out.empty()) {
    Json j;
    j["palette"] = r.coloring.palette();
    j["colors_used"] = r.colors_used;
    j["bound"] = h.k() * h.max_degree() + 1;
    j["validator"] = VerdictJson(CheckColoring(h, r.coloring), true);
    j["matching"] = r.matching.edges;
    j["warnings"] = WarningsJson(r.warnings);
    j["colors"] = ColoringJson(r.coloring);
    WriteJson(a.out, j);
  }
  out << r.colors_used << "\n";
  return kExitOk;
}

struct ExactArgs {
  std::string in;
  std::string what = "alpha";
  std::uint64_t s = 1;
  double budget = kDefaultEnumerationBudget;
  std::string json;
};

int CmdExact(const ExactArgs& a, std::ostream& out, std::ostream&) {
  const KPartiteHypergraph h = LoadKhg(a.in);
  Json j;
  j["what"] = a.what;
  if (a.what == "alpha") {
    const AlphaResult r = ExactAlphaB(h, a.budget);
    j["side"] = r.side;
    j["witness"] = r.witness.parts();
    out << r.side << "\n";
  } else if (a.what == "exists") {
    const auto set = FindBalancedIndependentSet(h, a.s, a.budget);
    j["s"] = a.s;
    j["exists"] = set.has_value();
    if (set) j["witness"] = set->parts();
    out << (set ? "yes" : "no") << "\n";
  } else {
    const auto m = ExactPerfectMatchingInComplement(h, a.budget);
    j["exists"] = m.has_value();
    if (m) j["matching"] = m->edges;
    out << (m ? "yes" : "no") << "\n";
  }
  if (!a.json.empty()) WriteJson(a.json, j);
  return kExitOk;
}

struct BoundArgs {
  int k = 2;
  std::uint64_t big_n = 1;
  std::uint64_t s = 1;
  double p = 0.5;
};

int CmdBound(const BoundArgs& a, std::ostream& out, std::ostream&) {
  if (a.k < 2) throw InvalidInput("--k must be at least 2");
  if (!(a.p >= 0 && a.p <= 1)) throw InvalidInput("--p must lie in [0, 1]");
  if (a.s > a.big_n) throw InvalidInput("--s must not exceed --N");
  out << FormatBound(UnionBoundBis(a.k, a.big_n, a.s, a.p)) << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string in;
  std::string coloring;
  std::string set;
  bool allow_partial = false;
};

int CmdVerify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  const KPartiteHypergraph h = LoadKhg(a.in);
  const DegreeProfile profile = ComputeDegreeProfile(h);
  out << "k " << h.k() << " edges " << h.num_edges() << " max_degree "
      << profile.max_degree << (h.is_balanced() ? " balanced" : " unbalanced")
      << "\n";
  bool ok = true;
  if (!a.coloring.empty()) {
    const Json j = ReadJson(a.coloring);
    if (!j.contains("colors") || !j.contains("palette")) {
      throw InvalidInput(a.coloring + ": missing colors or palette");
    }
    const auto parts = j["colors"].get<std::vector<std::vector<Color>>>();
    const Color palette = j["palette"].get<Color>();
    if (static_cast<int>(parts.size()) != h.k()) {
      throw InvalidInput(a.coloring + ": wrong number of parts");
    }
    PartialColoring c(h.part_sizes(), palette);
    for (int i = 0; i < h.k(); ++i) {
      if (parts[i].size() != h.part_size(i)) {
        throw InvalidInput(a.coloring + ": part " + std::to_string(i) +
                           " has the wrong size");
      }
      for (Index v = 0; v < parts[i].size(); ++v) {
        if (parts[i][v] > palette) {
          throw InvalidInput(a.coloring + ": color above palette");
        }
        if (parts[i][v] != kUncolored) c.set({i, v}, parts[i][v]);
      }
    }
    const ColoringVerdict v = CheckColoring(h, c);
    const bool good = v.ok(!a.allow_partial);
    out << "coloring " << (good ? "ok" : "invalid") << " colors "
        << c.num_colors_used() << " monochromatic " << v.monochromatic_edges
        << (v.balanced ? "" : " unbalanced") << (v.total ? "" : " partial") << "\n";
    ok = ok && good;
  }
  if (!a.set.empty()) {
    const Json j = ReadJson(a.set);
    if (!j.contains("witness")) throw InvalidInput(a.set + ": missing witness");
    BalancedSet set;
    try {
      set = BalancedSet(j["witness"].get<std::vector<std::vector<Index>>>());
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(a.set + ": " + e.what());
    }
    if (set.k() != h.k()) throw InvalidInput(a.set + ": wrong number of parts");
    for (int i = 0; i < set.k(); ++i) {
      for (Index v : set.part(i)) {
        if (v >= h.part_size(i)) throw InvalidInput(a.set + ": index out of range");
      }
    }
    const bool good = IsBalancedIndependent(h, set);
    out << "set " << (good ? "ok" : "invalid") << " side " << set.side() << "\n";
    ok = ok && good;
  }
  if (!ok) err << "verification failed\n";
  return ok ? kExitOk : kExitInvalid;
}

struct ExperimentArgs {
  std::string mode = "bis";
  std::vector<int> ks = {2};
  std::vector<Index> ns = {256};
  std::vector<double> degrees = {32};
  std::vector<double> eps = {0.2};
  std::vector<Index> sides = {1};
  std::vector<double> probabilities = {0.5};
  std::vector<Color> colors = {0};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::size_t retries = kDefaultColoringRetries;
  bool timing = false;
  std::string format = "csv";
  std::string out;
  std::string summary;
};

int CmdExperiment(const ExperimentArgs& a, std::ostream& out, std::ostream&) {
  ExperimentSpec spec;
  try {
    spec.mode = ParseExperimentMode(a.mode);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());
  }
  spec.ks = a.ks;
  spec.ns = a.ns;
  spec.degrees = a.degrees;
  spec.epsilons = a.eps;
  spec.sides = a.sides;
  spec.probabilities = a.probabilities;
  spec.colors = a.colors;
  spec.trials = a.trials;
  spec.master_seed = a.seed;
  spec.retries = a.retries;
  spec.timing = a.timing;
  ValidateSpec(spec);
  const ExperimentResult r = RunExperiment(spec);
  if (a.format == "json") {
    WriteFileAtomically(a.out, r.Json(spec.mode));
  } else {
    WriteFileAtomically(a.out, r.TrialsCsv(spec.mode));
    WriteFileAtomically(a.summary.empty() ? a.out + ".summary.csv" : a.summary,
                        r.SummaryCsv(spec.mode));
  }
  std::size_t passed = 0, checks = 0;
  for (const SummaryRow& row : r.summary) {
    if (row.relation == "info") {
      out << row.check << " cell " << row.cell << ": " << FormatDouble(row.lhs) << " se "
          << FormatDouble(row.se) << "\n";
      continue;
    }
    out << row.check << " cell " << row.cell << ": " << FormatDouble(row.lhs) << " "
        << row.relation << " " << FormatDouble(row.rhs) << " se "
        << FormatDouble(row.se) << " " << (row.pass ? "pass" : "fail") << "\n";
    passed += row.pass;
    ++checks;
  }
  out << passed << "/" << checks << " checks pass\n";
  return kExitOk;
}

}  // namespace

std::string FormatBound(double x) {
  if (!std::isfinite(x)) return x > 0 ? "inf" : (x < 0 ? "-inf" : "nan");
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.5e", x);
  std::string s = buf;
  const std::size_t e = s.find('e');
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  bool negative = false;
  if (exponent[0] == '+' || exponent[0] == '-') {
    negative = exponent[0] == '-';
    exponent.erase(0, 1);
  }
  const std::size_t nz = exponent.find_first_not_of('0');
  exponent = nz == std::string::npos ? "0" : exponent.substr(nz);
  return mantissa + "e" + (negative ? "-" : "") + exponent;
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Balanced independent sets and colorings of k-partite hypergraphs",
               "balhyp"};
  app.require_subcommand(1);
  std::function<int()> action;

  GenArgs gen;
  CLI::App* c_gen = app.add_subcommand("gen", "Sample a random hypergraph");
  c_gen->add_option("--k", gen.k)->check(CLI::Range(2, 64));
  c_gen->add_option("--n", gen.n, "part size (N for hknp, final n for upper)")
      ->required()->check(CLI::PositiveNumber);
  c_gen->add_option("--p", gen.p)->check(CLI::Range(0.0, 1.0));
  c_gen->add_option("--seed", gen.seed);
  c_gen->add_option("--model", gen.model)->check(CLI::IsMember({"hknp", "upper"}));
  c_gen->add_option("--eps", gen.eps, "upper model only");
  c_gen->add_option("--delta", gen.delta, "upper model: target maximum degree");
  c_gen->add_option("--out", gen.out)->required();
  c_gen->callback([&] { action = [&] { return CmdGen(gen, out, err); }; });

  BisArgs bis;
  CLI::App* c_bis = app.add_subcommand("bis", "Randomized balanced independent set");
  c_bis->add_option("--in", bis.in)->required();
  c_bis->add_option("--eps", bis.eps);
  c_bis->add_option("--p", bis.p, "inclusion probability; skips the ledger");
  c_bis->add_option("--trials", bis.trials);
  c_bis->add_option("--seed", bis.seed);
  c_bis->add_option("--json", bis.json);
  c_bis->callback([&] { action = [&] { return CmdBis(bis, out, err); }; });

  ColorArgs color;
  CLI::App* c_color = app.add_subcommand("color", "Two-stage balanced coloring");
  c_color->add_option("--in", color.in)->required();
  c_color->add_option("--eps", color.eps);
  c_color->add_option("--seed", color.seed);
  c_color->add_option("--retries", color.retries);
  c_color->add_option("--restarts", color.restarts);
  c_color->add_option("--json", color.json);
  c_color->callback([&] { action = [&] { return CmdColor(color, out, err); }; });

  FallbackArgs fb;
  CLI::App* c_fb = app.add_subcommand("fallback-color",
                                      "Coloring from a complement perfect matching");
  c_fb->add_option("--in", fb.in)->required();
  c_fb->add_option("--seed", fb.seed);
  c_fb->add_option("--restarts", fb.restarts);
  c_fb->add_option("--out", fb.out);
  c_fb->callback([&] { action = [&] { return CmdFallback(fb, out, err); }; });

  ExactArgs exact;
  CLI::App* c_exact = app.add_subcommand("exact", "Exhaustive oracles");
  c_exact->add_option("--in", exact.in)->required();
  c_exact->add_option("--what", exact.what)
      ->check(CLI::IsMember({"alpha", "pm", "exists"}));
  c_exact->add_option("--s", exact.s, "side for --what exists");
  c_exact->add_option("--budget", exact.budget);
  c_exact->add_option("--json", exact.json);
  c_exact->callback([&] { action = [&] { return CmdExact(exact, out, err); }; });

  BoundArgs bound;
  CLI::App* c_bound = app.add_subcommand("bound", "Union bound C(N,s)^k (1-p)^(s^k)");
  c_bound->add_option("--k", bound.k)->required();
  c_bound->add_option("--N", bound.big_n)->required();
  c_bound->add_option("--s", bound.s)->required();
  c_bound->add_option("--p", bound.p)->required();
  c_bound->callback([&] { action = [&] { return CmdBound(bound, out, err); }; });

  VerifyArgs verify;
  CLI::App* c_verify = app.add_subcommand("verify", "Check files against a hypergraph");
  c_verify->add_option("--in", verify.in)->required();
  c_verify->add_option("--coloring", verify.coloring);
  c_verify->add_option("--set", verify.set);
  c_verify->add_flag("--allow-partial", verify.allow_partial);
  c_verify->callback([&] { action = [&] { return CmdVerify(verify, out, err); }; });

  ExperimentArgs ex;
  CLI::App* c_ex = app.add_subcommand("experiment", "Monte Carlo checks");
  c_ex->add_option("--mode", ex.mode)
      ->check(CLI::IsMember({"bis", "color", "bound", "concentration"}));
  c_ex->add_option("--k", ex.ks)->delimiter(',');
  c_ex->add_option("--n", ex.ns)->delimiter(',');
  c_ex->add_option("--degree", ex.degrees)->delimiter(',');
  c_ex->add_option("--eps", ex.eps)->delimiter(',');
  c_ex->add_option("--s", ex.sides)->delimiter(',');
  c_ex->add_option("--p", ex.probabilities)->delimiter(',');
  c_ex->add_option("--q", ex.colors, "palette sizes, 0 = from the ledger")
      ->delimiter(',');
  c_ex->add_option("--trials", ex.trials);
  c_ex->add_option("--seed", ex.seed);
  c_ex->add_option("--retries", ex.retries);
  c_ex->add_flag("--timing", ex.timing);
  c_ex->add_option("--format", ex.format)->check(CLI::IsMember({"csv", "json"}));
  c_ex->add_option("--out", ex.out)->required();
  c_ex->add_option("--summary", ex.summary, "csv only; default <out>.summary.csv");
  c_ex->callback([&] { action = [&] { return CmdExperiment(ex, out, err); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    return action();
  } catch (const BudgetExceeded& e) {
    err << "error: budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const MatchingError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == MatchingError::Kind::kBudgetExhausted ? kExitBudget
                                                             : kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace balhyp::cli
