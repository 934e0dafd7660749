// Copyright 2026 The binlb Authors
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

// Command-line front end: binlb <verb> [options]. Exit codes: 0 Proven,
// 1 Refuted, 2 Unproven or budget exhausted, 3 I/O or schema error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "binlb/exactnum.h"
#include "binlb/harmonic.h"
#include "binlb/lp.h"
#include "binlb/model.h"
#include "binlb/packing.h"
#include "binlb/patterns.h"
#include "binlb/report.h"

#ifndef BINLB_DEFAULT_DATA_DIR
#define BINLB_DEFAULT_DATA_DIR "data"
#endif

namespace binlb {
namespace {

namespace fs = std::filesystem;

struct Options {
  std::string format = "text";
  int digits = 7;
  int64_t budget = 10000000;
  std::string tol = "1e-12";
};

// Paths that do not exist as given are looked up in $BINLB_DATA_DIR, then in
// the data directory of the source tree.
std::string Resolve(const std::string& path) {
  if (fs::exists(path)) return path;
  const char* env = std::getenv("BINLB_DATA_DIR");
  const std::string dir = env != nullptr ? env : BINLB_DEFAULT_DATA_DIR;
  const fs::path candidate = fs::path(dir) / path;
  if (fs::exists(candidate)) return candidate.string();
  throw SchemaError("file not found: " + path);
}

Rational ParseTolerance(const std::string& text) {
  static const std::regex kPower("1e-([0-9]+)");
  std::smatch m;
  if (std::regex_match(text, m, kPower)) {
    return Rational(1) / Pow(Rational(10), std::stoi(m[1].str()));
  }
  const Rational tol = ParseRational(text);
  if (tol <= 0) throw std::invalid_argument("--tol must be positive");
  return tol;
}

SearchConfig Search(const Options& o) {
  SearchConfig c;
  c.node_budget = o.budget;
  return c;
}

std::string TypeList(const std::vector<int>& types) {
  std::string out;
  for (int t : types) {
    if (!out.empty()) out += ",";
    out += std::to_string(t + 1);
  }
  return out;
}

std::vector<Json> ClassRecords(const KnapsackReport& knapsack) {
  std::vector<Json> out;
  for (const ClassResult& c : knapsack.classes) {
    Json r = Json::object();
    r["class"] = c.j + 1;
    r["types"] = TypeList(c.reduced);
    std::string heaviest;
    for (const Pattern& p : c.heaviest) {
      if (!heaviest.empty()) heaviest += " | ";
      heaviest += PatternText(p);
    }
    r["heaviest"] = heaviest;
    r["weight"] = ToString(c.weight);
    r["upper_bound"] = c.bound_proven ? ToString(c.upper_bound) : "none";
    r["capacity"] = ToString(c.capacity);
    r["verdict"] = VerdictName(c.verdict);
    r["vectors"] = c.vectors;
    r["method"] = c.method;
    if (!c.note.empty()) r["note"] = c.note;
    out.push_back(r);
  }
  return out;
}

Json CertificateRecord(int prefix, int entry, const Pattern& pattern,
                       const PatternCertificate& c) {
  Json r = Json::object();
  if (prefix > 0) r["prefix"] = prefix;
  r["entry"] = entry;
  r["pattern"] = PatternText(pattern);
  r["status"] = FeasibilityName(c.status);
  r["method"] = c.method;
  if (c.available_anchors >= 0) r["available_anchors"] = c.available_anchors;
  if (!c.message.empty()) r["message"] = c.message;
  return r;
}

Report DualReport(const std::string& command, const Instance& instance,
                  const DualCertificate& cert, const BoundResult& result,
                  const Options& o) {
  Report report(command, o.digits);
  report.SetStatus(result.status);
  report.Field("instance", instance.name);
  report.Field("certificate", cert.name);
  report.Flag("exploratory", cert.exploratory);
  report.Number(result.status == BoundStatus::kProven ? "bound" : "claimed_bound",
                result.bound);
  if (!result.reason.empty()) report.Field("reason", result.reason);
  report.Records("classes", ClassRecords(result.knapsack));
  report.Ledger("ledger", result.ledger);
  return report;
}

KnapsackConfig Knapsack(const Options& o) {
  KnapsackConfig k;
  k.search = Search(o);
  return k;
}

Report CmdVerifyDual(const std::string& inst_path, const std::string& cert_path,
                     const Options& o) {
  const Instance instance = LoadInstance(Resolve(inst_path));
  const DualCertificate cert = LoadCertificate(Resolve(cert_path), instance.NumTypes());
  const BoundResult result = VerifyDualCertificate(instance, cert, Knapsack(o));
  return DualReport("verify-dual", instance, cert, result, o);
}

Report CmdVerifyOpt(const std::string& inst_path, const std::string& scheme_path,
                    const Options& o) {
  const Instance instance = LoadInstance(Resolve(inst_path));
  const OptScheme scheme = LoadScheme(Resolve(scheme_path), instance.NumTypes());
  const SchemeReport result = VerifyOptScheme(instance, scheme, Search(o));
  Report report("verify-opt", o.digits);
  report.SetStatus(result.status);
  report.Field("instance", instance.name);
  report.Field("scheme", scheme.name);
  int64_t certified = 0;
  for (bool ok : result.prefix_ok) certified += ok ? 1 : 0;
  report.Count("prefixes", static_cast<int64_t>(scheme.prefixes.size()));
  report.Count("certified_prefixes", certified);
  if (!result.reason.empty()) report.Field("reason", result.reason);
  std::vector<Json> records;
  for (size_t j = 0; j < scheme.prefixes.size(); ++j) {
    for (size_t e = 0; e < scheme.prefixes[j].size(); ++e) {
      Json r = CertificateRecord(static_cast<int>(j + 1), static_cast<int>(e + 1),
                                 scheme.prefixes[j][e].pattern,
                                 result.certificates[j][e]);
      r["bins"] = ToString(scheme.prefixes[j][e].bins);
      records.push_back(r);
    }
  }
  report.Records("patterns", records);
  report.Ledger("coverage", result.coverage.lines);
  return report;
}

Report CmdVerifyPrimal(const std::string& inst_path, const std::string& primal_path,
                       const Options& o) {
  const Instance instance = LoadInstance(Resolve(inst_path));
  const PrimalSolution primal = LoadPrimal(Resolve(primal_path), instance.NumTypes());
  const PrimalReport result = VerifyPrimal(instance, primal, Search(o));
  Report report("verify-primal", o.digits);
  report.SetStatus(result.status);
  report.Field("instance", instance.name);
  report.Number("ratio", primal.ratio);
  report.Flag("all_tight", result.coverage.AllTight());
  if (!result.reason.empty()) report.Field("reason", result.reason);
  std::vector<Json> records;
  for (size_t e = 0; e < primal.entries.size(); ++e) {
    Json r = CertificateRecord(0, static_cast<int>(e + 1), primal.entries[e].pattern,
                               result.certificates[e]);
    r["x"] = ToString(primal.entries[e].x);
    records.push_back(r);
  }
  report.Records("patterns", records);
  report.Ledger("coverage", result.coverage.lines);
  return report;
}

std::vector<Json> NonzeroRecords(const LpProblem& lp, const LpSolution& s) {
  std::vector<Json> out;
  for (int j = 0; j < lp.NumVars(); ++j) {
    if (s.x[j] == 0) continue;
    Json r = Json::object();
    r["variable"] = lp.var_names[j];
    r["value"] = ToString(s.x[j]);
    out.push_back(r);
  }
  return out;
}

Report CmdSolveLp(const std::string& inst_path, const std::string& set_path,
                  const std::string& side, const Options& o) {
  const Instance instance = LoadInstance(Resolve(inst_path));
  const PatternSet set = LoadPatternSet(Resolve(set_path), instance.NumTypes());
  Report report("solve-lp", o.digits);
  report.Field("instance", instance.name);
  report.Field("pattern_set", set.name);
  report.Count("patterns", static_cast<int64_t>(set.patterns.size()));
  std::vector<Json> records;
  bool refuted = false;
  bool pending = false;
  for (size_t p = 0; p < set.patterns.size(); ++p) {
    const PatternCertificate c = CertifyPattern(set.patterns[p], instance, Search(o));
    records.push_back(CertificateRecord(0, static_cast<int>(p + 1), set.patterns[p], c));
    refuted = refuted || c.status == FeasibilityStatus::kInfeasible;
    pending = pending || c.status == FeasibilityStatus::kBudgetExceeded;
  }
  report.Records("pattern_certificates", records);
  if (refuted || pending) {
    report.SetStatus(refuted ? "Refuted" : "Unproven",
                     refuted ? kExitRefuted : kExitUnproven);
    report.Field("reason", "pattern set contains patterns that are not certified");
    return report;
  }
  bool optimal = true;
  Rational primal_value, dual_value;
  if (side == "primal" || side == "both") {
    const LpProblem lp = BuildPrimal(instance, set, Search(o));
    const LpSolution s = SolveExact(lp);
    report.Field("primal_status", LpStatusName(s.status));
    if (s.status == LpStatus::kOptimal) {
      primal_value = s.objective;
      report.Number("R", s.objective);
      report.Count("primal_pivots", s.pivots);
      report.Records("primal_solution", NonzeroRecords(lp, s));
      report.Ledger("primal_rows", CheckRows(lp, s.x));
    } else {
      optimal = false;
      std::string reason;
      for (int t = 0; t < instance.NumTypes(); ++t) {
        bool present = false;
        for (const Pattern& p : set.patterns) present = present || p.counts[t] > 0;
        if (!present && instance.alpha[t] > 0) {
          if (!reason.empty()) reason += "; ";
          reason += "coverage type " + std::to_string(t + 1) +
                    " cannot be met: no pattern contains type " + std::to_string(t + 1);
        }
      }
      report.Field("reason", reason.empty() ? std::string("primal LP is ") + LpStatusName(s.status) : reason);
    }
  }
  if (side == "dual" || side == "both") {
    const LpProblem lp = BuildDual(instance, set);
    const LpSolution s = SolveExact(lp);
    report.Field("dual_status", LpStatusName(s.status));
    if (s.status == LpStatus::kOptimal) {
      dual_value = s.objective;
      report.Number("dual_objective", s.objective);
      report.Count("dual_pivots", s.pivots);
      report.Records("dual_solution", NonzeroRecords(lp, s));
    } else {
      optimal = false;
    }
  }
  if (side == "both" && optimal) report.Flag("strong_duality", primal_value == dual_value);
  if (optimal && (side != "both" || primal_value == dual_value)) {
    report.SetStatus("Optimal", kExitProven);
  } else {
    report.SetStatus("Infeasible", kExitRefuted);
  }
  return report;
}

Json IntervalJson(const Interval& v, int digits) {
  Json j = Json::object();
  j["lo"] = ToString(v.lo);
  j["hi"] = ToString(v.hi);
  j["lo_decimal"] = ToDecimal(v.lo, digits);
  j["hi_decimal"] = ToDecimal(v.hi, digits);
  return j;
}

Report CmdBound(const std::string& which, int d, int h, bool all_dims,
                const Options& o) {
  const Rational tol = ParseTolerance(o.tol);
  Report report("bound " + which, o.digits);
  if (which == "harmonic") {
    report.SetStatus("Proven", kExitProven);
    if (all_dims) {
      std::vector<Json> rows;
      for (int k = 1; k <= 6; ++k) {
        const Rational b = ClosedFormBound(k);
        Json r = Json::object();
        r["d"] = k;
        r["bound"] = ToString(b);
        r["decimal"] = ToDecimal(b, o.digits);
        rows.push_back(r);
      }
      report.Records("bounds_by_dimension", rows);
      report.Field("limit", "3");
    } else {
      report.Count("d", d);
      report.Number("bound", ClosedFormBound(d));
    }
    return report;
  }
  if (which == "b1" || which == "b2") {
    const ClassOptimum opt = which == "b1" ? B1Optimize(tol) : B2Optimize(tol);
    report.SetStatus("Proven", kExitProven);
    report.Field("alpha_exact", opt.alpha_exact.ToString());
    report.Records("alpha", {IntervalJson(opt.alpha, o.digits + 5)});
    report.Records("bound_interval", {IntervalJson(opt.bound, o.digits + 5)});
    report.Number("bound_lower", opt.bound.lo);
    return report;
  }
  if (which == "harmonic-explore") {
    report.SetStatus("Exploratory", kExitUnproven);
    report.Count("d", d);
    report.Number("closed_form", ClosedFormBound(d));
    std::vector<Json> rows;
    for (int k = 1; k <= h; ++k) {
      const EqualizedPoint e = Equalize(d, k, tol);
      Json r = Json::object();
      r["h"] = k;
      r["ratio_lo"] = ToDecimal(e.ratio.lo, o.digits + 5);
      r["ratio_hi"] = ToDecimal(e.ratio.hi, o.digits + 5);
      r["worst_case"] = ToDecimal(e.worst.value, o.digits + 5);
      r["attained_by"] = e.worst.attained_by;
      rows.push_back(r);
    }
    report.Records("equalized", rows);
    report.Field("note", "numeric exploration of equalized parameters; no Proven status");
    return report;
  }
  throw std::invalid_argument("unknown bound '" + which + "'");
}

Report CmdExplore(const std::string& inst_path, const std::string& cert_path,
                  const std::string& set_path, const Options& o) {
  const Instance instance = LoadInstance(Resolve(inst_path));
  const DualCertificate cert = LoadCertificate(Resolve(cert_path), instance.NumTypes());
  const BoundResult result = VerifyDualCertificate(instance, cert, Knapsack(o));
  Report report = DualReport("explore", instance, cert, result, o);
  if (result.status == BoundStatus::kRefuted) {
    report.SetStatus(result.status);
  } else {
    report.SetStatus("Unproven", kExitUnproven);
  }
  if (!set_path.empty()) {
    const PatternSet set = LoadPatternSet(Resolve(set_path), instance.NumTypes());
    std::vector<Json> rows;
    for (const Pattern& p : set.patterns) {
      const int j = p.ClassIndex();
      Json r = Json::object();
      r["pattern"] = PatternText(p);
      r["class"] = j + 1;
      r["weight"] = ToString(PatternWeight(p, cert.lambda));
      if (j >= 0) r["capacity"] = ToString(result.knapsack.classes[j].capacity);
      r["feasibility"] = FeasibilityName(CertifyPattern(p, instance, Search(o)).status);
      rows.push_back(r);
    }
    report.Records("conjectured_patterns", rows);
  }
  report.Field("note", "exploratory data: maximality of the conjectured heaviest patterns is not proven");
  return report;
}

}  // namespace
}  // namespace binlb

int main(int argc, char** argv) {
  using namespace binlb;
  CLI::App app{"Exact verification of lower bounds for online bin packing"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--digits", o.digits, "Digits of decimal display values")
      ->check(CLI::Range(1, 60));
  app.add_option("--budget", o.budget, "Node budget per feasibility search")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", o.tol, "Interval tolerance, \"p/q\" or \"1e-N\"");

  std::string a, b, c;
  std::string side = "both";
  std::string which;
  int d = 2;
  int h = 5;
  bool all_dims = false;

  auto* dual = app.add_subcommand("verify-dual", "Verify a dual certificate");
  dual->add_option("instance", a)->required();
  dual->add_option("certificate", b)->required();
  auto* opt = app.add_subcommand("verify-opt", "Verify an OPT packing scheme");
  opt->add_option("instance", a)->required();
  opt->add_option("scheme", b)->required();
  auto* primal = app.add_subcommand("verify-primal", "Verify a primal solution");
  primal->add_option("instance", a)->required();
  primal->add_option("primal", b)->required();
  auto* lp = app.add_subcommand("solve-lp", "Solve the pattern LP exactly");
  lp->add_option("instance", a)->required();
  lp->add_option("patterns", b)->required();
  lp->add_option("--side", side, "primal, dual or both")
      ->check(CLI::IsMember({"primal", "dual", "both"}));
  auto* bound = app.add_subcommand("bound", "Evaluate parametric bounds");
  bound->add_option("which", which, "harmonic, b1, b2 or harmonic-explore")
      ->required()
      ->check(CLI::IsMember({"harmonic", "b1", "b2", "harmonic-explore"}));
  bound->add_option("--d", d, "Dimension")->check(CLI::Range(1, 64));
  bound->add_option("--intervals", h, "Largest interval count h to explore")
      ->check(CLI::Range(1, 12));
  bound->add_flag("--table6", all_dims, "Print d = 1..6 and the limit");
  auto* explore = app.add_subcommand("explore", "Run the exploratory 1.907 data");
  a = "exploratory/rect-1p907.json";
  b = "exploratory/rect-1p907-cert.json";
  c = "exploratory/rect-1p907-patterns.json";
  explore->add_option("instance", a);
  explore->add_option("certificate", b);
  explore->add_option("patterns", c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitIoError;
  }

  try {
    const OutputFormat format = ParseFormat(o.format);
    Report report("", o.digits);
    if (dual->parsed()) {
      report = CmdVerifyDual(a, b, o);
    } else if (opt->parsed()) {
      report = CmdVerifyOpt(a, b, o);
    } else if (primal->parsed()) {
      report = CmdVerifyPrimal(a, b, o);
    } else if (lp->parsed()) {
      report = CmdSolveLp(a, b, side, o);
    } else if (bound->parsed()) {
      report = CmdBound(which, d, h, all_dims, o);
    } else {
      report = CmdExplore(a, b, c, o);
    }
    std::cout << report.Render(format);
    return report.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIoError;
  }
}
