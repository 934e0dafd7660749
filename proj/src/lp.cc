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

#include "binlb/lp.h"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace binlb {
namespace {

class Tableau {
 public:
  Tableau(std::vector<std::vector<Rational>> a, std::vector<int> basis)
      : a_(std::move(a)), basis_(std::move(basis)) {}

  // Minimizes cost over the allowed columns starting from the current basis.
  LpStatus Optimize(const std::vector<Rational>& cost,
                    const std::vector<bool>& allowed, int64_t* pivots) {
    const int cols = static_cast<int>(cost.size());
    while (true) {
      int enter = -1;
      for (int j = 0; j < cols && enter < 0; ++j) {
        if (!allowed[j] || IsBasic(j)) continue;
        Rational d = cost[j];
        for (size_t i = 0; i < a_.size(); ++i) d -= cost[basis_[i]] * a_[i][j];
        if (d < 0) enter = j;
      }
      if (enter < 0) return LpStatus::kOptimal;
      int leave = -1;
      Rational best_ratio;
      for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i][enter] <= 0) continue;
        const Rational ratio = a_[i].back() / a_[i][enter];
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return LpStatus::kUnbounded;
      Pivot(leave, enter);
      ++*pivots;
    }
  }

  void Pivot(int r, int c) {
    const Rational p = a_[r][c];
    for (Rational& v : a_[r]) v /= p;
    for (size_t i = 0; i < a_.size(); ++i) {
      if (static_cast<int>(i) == r || a_[i][c] == 0) continue;
      const Rational f = a_[i][c];
      for (size_t j = 0; j < a_[i].size(); ++j) {
        if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
      }
    }
    basis_[r] = c;
  }

  Rational Value(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (size_t i = 0; i < a_.size(); ++i) v += cost[basis_[i]] * a_[i].back();
    return v;
  }

  // Pivots basic columns at or beyond `first` out of the basis, dropping rows
  // that are linear combinations of the others.
  void DriveOut(int first) {
    for (size_t i = 0; i < a_.size();) {
      if (basis_[i] < first) {
        ++i;
        continue;
      }
      int col = -1;
      for (int j = 0; j < first && col < 0; ++j) {
        if (a_[i][j] != 0 && !IsBasic(j)) col = j;
      }
      if (col >= 0) {
        Pivot(static_cast<int>(i), col);
        ++i;
      } else {
        a_.erase(a_.begin() + i);
        basis_.erase(basis_.begin() + i);
      }
    }
  }

  std::vector<Rational> Solution(int n) const {
    std::vector<Rational> x(n, Rational(0));
    for (size_t i = 0; i < a_.size(); ++i) {
      if (basis_[i] < n) x[basis_[i]] = a_[i].back();
    }
    return x;
  }

 private:
  bool IsBasic(int j) const {
    for (int b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  std::vector<std::vector<Rational>> a_;
  std::vector<int> basis_;
};

std::string PatternLabel(const Pattern& p) {
  if (!p.name.empty()) return p.name;
  std::string out = "(";
  for (size_t i = 0; i < p.counts.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(p.counts[i]);
  }
  return out + ")";
}

LedgerLine Line(std::string label, Rational lhs, const char* sense,
                Rational rhs, bool holds) {
  LedgerLine l;
  l.label = std::move(label);
  l.lhs = std::move(lhs);
  l.sense = sense;
  l.rhs = std::move(rhs);
  l.holds = holds;
  l.tight = l.lhs == l.rhs;
  return l;
}

AnchorGrid GridOf(const Instance& instance) {
  AnchorGrid grid;
  grid.resolution = instance.anchor_grid;
  grid.dimension = instance.dimension;
  return grid;
}

bool StartsWith(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

void Append(std::string* reason, const std::string& text) {
  if (!reason->empty()) *reason += "; ";
  *reason += text;
}

}  // namespace

const char* RowSenseName(RowSense s) {
  switch (s) {
    case RowSense::kLessEq:
      return "<=";
    case RowSense::kGreaterEq:
      return ">=";
    case RowSense::kEqual:
      return "=";
  }
  return "?";
}

const char* LpStatusName(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

const char* BoundStatusName(BoundStatus s) {
  switch (s) {
    case BoundStatus::kProven:
      return "Proven";
    case BoundStatus::kRefuted:
      return "Refuted";
    case BoundStatus::kUnproven:
      return "Unproven";
  }
  return "?";
}

void LpProblem::Validate() const {
  const size_t n = objective.size();
  if (senses.size() != rows.size() || rhs.size() != rows.size()) {
    throw std::invalid_argument("row, sense and right-hand side counts differ");
  }
  for (const auto& row : rows) {
    if (row.size() != n) throw std::invalid_argument("row length differs from variable count");
  }
  if (!var_names.empty() && var_names.size() != n) {
    throw std::invalid_argument("variable name count differs");
  }
  if (!row_names.empty() && row_names.size() != rows.size()) {
    throw std::invalid_argument("row name count differs");
  }
}

LpSolution SolveExact(const LpProblem& lp) {
  lp.Validate();
  const int n = lp.NumVars();
  const int m = lp.NumRows();
  int slacks = 0;
  int artificials = 0;
  std::vector<int> sign(m, 1);
  std::vector<RowSense> sense(lp.senses);
  for (int i = 0; i < m; ++i) {
    if (lp.rhs[i] < 0) {
      sign[i] = -1;
      if (sense[i] == RowSense::kLessEq) {
        sense[i] = RowSense::kGreaterEq;
      } else if (sense[i] == RowSense::kGreaterEq) {
        sense[i] = RowSense::kLessEq;
      }
    }
    if (sense[i] != RowSense::kEqual) ++slacks;
    if (sense[i] != RowSense::kLessEq) ++artificials;
  }
  const int first_art = n + slacks;
  const int cols = first_art + artificials;
  std::vector<std::vector<Rational>> a(m, std::vector<Rational>(cols + 1, Rational(0)));
  std::vector<int> basis(m, -1);
  int s = n;
  int art = first_art;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = lp.rows[i][j] * sign[i];
    a[i][cols] = lp.rhs[i] * sign[i];
    if (sense[i] == RowSense::kLessEq) {
      a[i][s] = 1;
      basis[i] = s++;
    } else {
      if (sense[i] == RowSense::kGreaterEq) a[i][s++] = -1;
      a[i][art] = 1;
      basis[i] = art++;
    }
  }
  Tableau tab(std::move(a), std::move(basis));
  LpSolution sol;
  if (artificials > 0) {
    std::vector<Rational> cost(cols, Rational(0));
    for (int j = first_art; j < cols; ++j) cost[j] = 1;
    tab.Optimize(cost, std::vector<bool>(cols, true), &sol.pivots);
    if (tab.Value(cost) > 0) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    tab.DriveOut(first_art);
  }
  std::vector<Rational> cost(cols, Rational(0));
  for (int j = 0; j < n; ++j) cost[j] = lp.maximize ? -lp.objective[j] : lp.objective[j];
  std::vector<bool> allowed(cols, true);
  for (int j = first_art; j < cols; ++j) allowed[j] = false;
  sol.status = tab.Optimize(cost, allowed, &sol.pivots);
  if (sol.status != LpStatus::kOptimal) return sol;
  sol.x = tab.Solution(n);
  sol.objective = 0;
  for (int j = 0; j < n; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

std::vector<LedgerLine> CheckRows(const LpProblem& lp,
                                  const std::vector<Rational>& x) {
  lp.Validate();
  std::vector<LedgerLine> out;
  for (int i = 0; i < lp.NumRows(); ++i) {
    Rational lhs = 0;
    for (int j = 0; j < lp.NumVars(); ++j) {
      if (lp.rows[i][j] != 0) lhs += lp.rows[i][j] * x[j];
    }
    bool holds = false;
    switch (lp.senses[i]) {
      case RowSense::kLessEq:
        holds = lhs <= lp.rhs[i];
        break;
      case RowSense::kGreaterEq:
        holds = lhs >= lp.rhs[i];
        break;
      case RowSense::kEqual:
        holds = lhs == lp.rhs[i];
        break;
    }
    const std::string label =
        lp.row_names.empty() ? "row " + std::to_string(i + 1) : lp.row_names[i];
    out.push_back(Line(label, lhs, RowSenseName(lp.senses[i]), lp.rhs[i], holds));
  }
  return out;
}

PatternCertificate CertifyPattern(const Pattern& pattern,
                                  const Instance& instance,
                                  const SearchConfig& config) {
  PatternCertificate cert;
  if (static_cast<int>(pattern.counts.size()) != instance.NumTypes()) {
    throw std::invalid_argument("pattern length differs from the type count");
  }
  int used = 0;
  int only = -1;
  for (int t = 0; t < instance.NumTypes(); ++t) {
    if (pattern.counts[t] > 0) {
      ++used;
      only = t;
    }
  }
  if (used == 0) {
    cert.status = FeasibilityStatus::kFeasible;
    cert.method = "empty";
    return cert;
  }
  if (used == 1) {
    const int64_t cap = SingleTypeCapacity(instance, only);
    cert.method = "capacity";
    cert.status = pattern.counts[only] <= cap ? FeasibilityStatus::kFeasible
                                              : FeasibilityStatus::kInfeasible;
    if (!cert.ok()) {
      cert.message = std::to_string(pattern.counts[only]) + " items of type " +
                     std::to_string(only + 1) + " exceed the capacity " +
                     std::to_string(cap);
    }
    return cert;
  }
  if (instance.geometry == Geometry::kHypercube && instance.anchor_grid > 0) {
    const AnchorGrid grid = GridOf(instance);
    cert.method = "grid layout";
    const FeasibilityResult f =
        GridLayout(pattern, instance, grid, config.node_budget);
    cert.status = f.status;
    cert.message = f.diagnostic;
    if (f.status != FeasibilityStatus::kFeasible) return cert;
    cert.available_anchors = CountAvailableAnchors(f.placement, instance, grid);
    const int64_t sand =
        instance.sand_type >= 0 ? pattern.counts[instance.sand_type] : 0;
    if (sand > cert.available_anchors) {
      cert.status = FeasibilityStatus::kInfeasible;
      cert.message = "sand count " + std::to_string(sand) + " exceeds the " +
                     std::to_string(cert.available_anchors) +
                     " available anchors";
    }
    cert.placement = f.placement;
    return cert;
  }
  cert.method = "exhaustive search";
  const FeasibilityResult f = ExhaustiveFeasible(pattern, instance, config);
  cert.status = f.status;
  cert.message = f.diagnostic;
  cert.placement = f.placement;
  return cert;
}

LpProblem BuildPrimal(const Instance& instance, const PatternSet& set,
                      const SearchConfig& config) {
  if (set.patterns.empty()) throw std::invalid_argument("empty pattern set");
  const int k = instance.NumTypes();
  const int P = static_cast<int>(set.patterns.size());
  for (int p = 0; p < P; ++p) {
    const PatternCertificate c = CertifyPattern(set.patterns[p], instance, config);
    if (!c.ok()) {
      throw std::invalid_argument("pattern " + PatternLabel(set.patterns[p]) +
                                  " is not certified: " + FeasibilityName(c.status) +
                                  (c.message.empty() ? "" : " (" + c.message + ")"));
    }
  }
  LpProblem lp;
  lp.maximize = false;
  lp.objective.assign(P + 1, Rational(0));
  lp.objective[P] = 1;
  for (int p = 0; p < P; ++p) lp.var_names.push_back("x" + std::string(set.patterns[p].name.empty() ? "(" + std::to_string(p + 1) + ")" : "(" + set.patterns[p].name + ")"));
  lp.var_names.push_back("R");
  for (int i = 0; i < k; ++i) {
    std::vector<Rational> row(P + 1, Rational(0));
    for (int p = 0; p < P; ++p) row[p] = Rational(static_cast<long>(set.patterns[p].counts[i]));
    lp.rows.push_back(row);
    lp.senses.push_back(RowSense::kGreaterEq);
    lp.rhs.push_back(instance.alpha[i]);
    lp.row_names.push_back("coverage type " + std::to_string(i + 1));
  }
  for (int j = 0; j < k; ++j) {
    std::vector<Rational> row(P + 1, Rational(0));
    for (int p = 0; p < P; ++p) {
      const int c = set.patterns[p].ClassIndex();
      if (c >= 0 && c <= j) row[p] = 1;
    }
    row[P] = -instance.opt_ratios[j];
    lp.rows.push_back(row);
    lp.senses.push_back(RowSense::kLessEq);
    lp.rhs.push_back(0);
    lp.row_names.push_back("prefix " + std::to_string(j + 1));
  }
  return lp;
}

LpProblem BuildDual(const Instance& instance, const PatternSet& set) {
  if (set.patterns.empty()) throw std::invalid_argument("empty pattern set");
  const int k = instance.NumTypes();
  LpProblem lp;
  lp.maximize = true;
  lp.objective.assign(2 * k, Rational(0));
  for (int j = 0; j < k; ++j) {
    lp.objective[j] = instance.alpha[j];
    lp.var_names.push_back("lambda" + std::to_string(j + 1));
  }
  for (int j = 0; j < k; ++j) lp.var_names.push_back("nu" + std::to_string(j + 1));
  for (size_t p = 0; p < set.patterns.size(); ++p) {
    const Pattern& pat = set.patterns[p];
    const int c = pat.ClassIndex();
    std::vector<Rational> row(2 * k, Rational(0));
    for (int i = 0; i < k; ++i) row[i] = Rational(static_cast<long>(pat.counts[i]));
    for (int i = std::max(c, 0); i < k && c >= 0; ++i) row[k + i] = -1;
    lp.rows.push_back(row);
    lp.senses.push_back(RowSense::kLessEq);
    lp.rhs.push_back(0);
    lp.row_names.push_back("pattern " + PatternLabel(pat));
  }
  std::vector<Rational> norm(2 * k, Rational(0));
  for (int j = 0; j < k; ++j) norm[k + j] = instance.opt_ratios[j];
  lp.rows.push_back(norm);
  lp.senses.push_back(RowSense::kLessEq);
  lp.rhs.push_back(1);
  lp.row_names.push_back("normalization");
  return lp;
}

BoundResult VerifyDualCertificate(const Instance& instance,
                                  const DualCertificate& cert,
                                  const KnapsackReport& knapsack) {
  BoundResult out;
  out.knapsack = knapsack;
  const int k = instance.NumTypes();
  std::string refuted;
  for (int j = 0; j < k; ++j) {
    const bool ok = cert.lambda[j] >= 0;
    out.ledger.push_back(Line("lambda" + std::to_string(j + 1) + " >= 0",
                              cert.lambda[j], ">=", 0, ok));
    if (!ok) Append(&refuted, "lambda" + std::to_string(j + 1) + " is negative");
  }
  for (int j = 0; j < k; ++j) {
    const bool ok = cert.mu[j] <= 0;
    out.ledger.push_back(Line("mu" + std::to_string(j + 1) + " <= 0", cert.mu[j],
                              "<=", 0, ok));
    if (!ok) Append(&refuted, "mu" + std::to_string(j + 1) + " is positive");
  }
  Rational norm = 0;
  for (int j = 0; j < k; ++j) norm -= cert.mu[j] * instance.opt_ratios[j];
  const bool norm_ok = norm <= 1;
  out.ledger.push_back(Line("normalization", norm, "<=", 1, norm_ok));
  if (!norm_ok) Append(&refuted, "normalization row exceeds 1");
  for (const DominanceCheck& d : knapsack.rules) {
    const DominanceRule& r = d.rule;
    Rational copies = Rational(static_cast<long>(r.m1 * r.m2));
    if (instance.geometry == Geometry::kHypercube) {
      copies = 1;
      for (int a = 0; a < instance.dimension; ++a) copies *= Rational(static_cast<long>(r.m1));
    }
    std::string label = "rule (" + std::to_string(r.m1) + "x" + std::to_string(r.m2) +
                        ") s" + std::to_string(r.dominator + 1) + " > s" +
                        std::to_string(r.dominated + 1);
    if (!d.size_ok) label += " [size condition fails]";
    out.ledger.push_back(Line(label, copies * cert.lambda[r.dominator], ">=",
                              cert.lambda[r.dominated], d.ok()));
  }
  bool unproven = false;
  std::string pending;
  for (const ClassResult& c : knapsack.classes) {
    const Rational lhs = c.bound_proven ? c.upper_bound : c.weight;
    out.ledger.push_back(Line("class " + std::to_string(c.j + 1) + " [" +
                                  VerdictName(c.verdict) + "]",
                              lhs, "<=", c.capacity, c.Holds()));
    if (c.verdict == Verdict::kViolated) {
      Append(&refuted, "class " + std::to_string(c.j + 1) + ": pattern " +
                           PatternLabel(c.heaviest.front()) + " has weight " +
                           ToString(c.weight) + " above the capacity " +
                           ToString(c.capacity));
    } else if (!c.Holds()) {
      unproven = true;
      Append(&pending, "class " + std::to_string(c.j + 1) + ": " + c.note);
    }
  }
  out.bound = 0;
  for (int j = 0; j < k; ++j) out.bound += instance.alpha[j] * cert.lambda[j];
  if (!refuted.empty()) {
    out.status = BoundStatus::kRefuted;
    out.reason = refuted;
  } else if (unproven) {
    out.status = BoundStatus::kUnproven;
    out.reason = pending;
  } else {
    out.status = BoundStatus::kProven;
  }
  if (cert.exploratory && out.status == BoundStatus::kProven) {
    out.status = BoundStatus::kUnproven;
    out.reason = "exploratory certificate";
  }
  return out;
}

BoundResult VerifyDualCertificate(const Instance& instance,
                                  const DualCertificate& cert,
                                  const KnapsackConfig& config) {
  return VerifyDualCertificate(instance, cert,
                               BuildKnapsackReport(instance, cert, config));
}

SchemeReport VerifyOptScheme(const Instance& instance, const OptScheme& scheme,
                             const SearchConfig& config) {
  SchemeReport out;
  std::map<std::vector<int64_t>, PatternCertificate> cache;
  std::string refuted;
  std::string pending;
  out.coverage = CoverageCheck(scheme, instance);
  for (size_t j = 0; j < scheme.prefixes.size(); ++j) {
    std::vector<PatternCertificate> certs;
    bool ok = true;
    const std::string tag = "prefix " + std::to_string(j + 1);
    for (const SchemeEntry& e : scheme.prefixes[j]) {
      auto it = cache.find(e.pattern.counts);
      if (it == cache.end()) {
        it = cache.emplace(e.pattern.counts, CertifyPattern(e.pattern, instance, config)).first;
      }
      const PatternCertificate& c = it->second;
      if (c.status == FeasibilityStatus::kInfeasible) {
        Append(&refuted, tag + ": pattern " + PatternLabel(e.pattern) +
                             " infeasible (" + c.message + ")");
      } else if (c.status == FeasibilityStatus::kBudgetExceeded) {
        Append(&pending, tag + ": pattern " + PatternLabel(e.pattern) +
                             " not certified (" + c.message + ")");
      }
      ok = ok && c.ok();
      PatternCertificate stored = c;
      stored.placement.items.clear();
      certs.push_back(std::move(stored));
    }
    for (const LedgerLine& l : out.coverage.lines) {
      if (!StartsWith(l.label, tag + " ") || l.holds) continue;
      ok = false;
      std::string what = l.label.substr(tag.size() + 1);
      if (StartsWith(what, "coverage")) {
        what = "coverage shortfall" + what.substr(8);
      } else if (what == "bins") {
        what = "bin total " + ToString(l.lhs) + " differs from the OPT ratio " +
               ToString(l.rhs);
      }
      Append(&refuted, tag + ": " + what);
    }
    out.certificates.push_back(std::move(certs));
    out.prefix_ok.push_back(ok);
  }
  for (const LedgerLine& l : out.coverage.lines) {
    if (l.label == "prefix count" && !l.holds) Append(&refuted, "prefix count differs from the type count");
  }
  if (!refuted.empty()) {
    out.status = BoundStatus::kRefuted;
    out.reason = refuted;
  } else if (!pending.empty()) {
    out.status = BoundStatus::kUnproven;
    out.reason = pending;
  } else {
    out.status = BoundStatus::kProven;
  }
  return out;
}

PrimalReport VerifyPrimal(const Instance& instance,
                          const PrimalSolution& solution,
                          const SearchConfig& config) {
  PrimalReport out;
  std::string refuted;
  std::string pending;
  for (const PrimalEntry& e : solution.entries) {
    PatternCertificate c = CertifyPattern(e.pattern, instance, config);
    c.placement.items.clear();
    if (c.status == FeasibilityStatus::kInfeasible) {
      Append(&refuted, "pattern " + PatternLabel(e.pattern) + " infeasible");
    } else if (c.status == FeasibilityStatus::kBudgetExceeded) {
      Append(&pending, "pattern " + PatternLabel(e.pattern) + " not certified");
    }
    if (e.x < 0) Append(&refuted, "x" + PatternLabel(e.pattern) + " is negative");
    out.certificates.push_back(std::move(c));
  }
  out.coverage = CoverageCheck(solution, instance);
  for (const LedgerLine& l : out.coverage.lines) {
    if (!l.holds) Append(&refuted, l.label + " violated");
  }
  if (!refuted.empty()) {
    out.status = BoundStatus::kRefuted;
    out.reason = refuted;
  } else if (!pending.empty()) {
    out.status = BoundStatus::kUnproven;
    out.reason = pending;
  } else {
    out.status = BoundStatus::kProven;
  }
  return out;
}

}  // namespace binlb
