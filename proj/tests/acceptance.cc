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

// Acceptance checks: one PASS or FAIL line per criterion, exit status 1 when
// any criterion fails.

#include <chrono>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "binlb/exactnum.h"
#include "binlb/harmonic.h"
#include "binlb/lp.h"
#include "binlb/model.h"
#include "binlb/packing.h"
#include "binlb/patterns.h"

namespace binlb {
namespace {

const std::string kData = BINLB_TEST_DATA;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Rational Q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string Dec(const Rational& r, int digits = 9) {
  return ToDecimal(r, digits);
}

Instance Squares() { return LoadInstance(kData + "/squares-1p68.json"); }
Instance Rect() { return LoadInstance(kData + "/rect-1p859.json"); }

Outcome SquaresDual() {
  const Instance in = Squares();
  const BoundResult r = VerifyDualCertificate(
      in, LoadCertificate(kData + "/squares-cert.json", in.NumTypes()));
  const Rational want(569767590, 338989303);
  Outcome o;
  o.pass = r.status == BoundStatus::kProven && r.bound == want &&
           r.bound > Q(1680783, 1000000);
  o.detail = std::string(BoundStatusName(r.status)) + ", " +
             (r.status == BoundStatus::kProven ? "bound " + ToString(r.bound)
                                               : r.reason);
  if (!o.pass) {
    const BoundResult fixed = VerifyDualCertificate(
        in, LoadCertificate(kData + "/squares-cert-repaired.json", in.NumTypes()));
    o.detail += "; repaired certificate " +
                std::string(BoundStatusName(fixed.status)) + " with bound " +
                ToString(fixed.bound);
  }
  return o;
}

Outcome SquaresLedger() {
  const Instance in = Squares();
  const DualCertificate cert =
      LoadCertificate(kData + "/squares-cert.json", in.NumTypes());
  const KnapsackReport k = BuildKnapsackReport(in, cert, KnapsackConfig{});
  const std::vector<long> table = {176400, 175537, 172225, 168100, 160000,
                                   144400, 129600, 102400, 57600,  25600};
  Outcome o;
  o.pass = k.classes.size() == table.size();
  if (!o.pass) return {false, "wrong class count"};
  const Rational x = k.classes[0].capacity / 176400;
  std::vector<std::string> bad;
  for (size_t j = 0; j < table.size(); ++j) {
    const ClassResult& c = k.classes[j];
    const bool exact = c.verdict == Verdict::kExact || c.verdict == Verdict::kPrunedExact;
    const bool ok = exact && c.weight == c.capacity && c.capacity == x * table[j];
    if (!ok) {
      bad.push_back("j=" + std::to_string(j + 1) + " weight " + ToString(c.weight / x) +
                    "x vs capacity " + ToString(c.capacity / x) + "x [" +
                    VerdictName(c.verdict) + "]");
    }
  }
  o.pass = bad.empty();
  o.detail = o.pass ? "10 classes tight with exact verdicts" : "";
  for (size_t i = 0; i < bad.size(); ++i) o.detail += (i ? "; " : "") + bad[i];
  return o;
}

Outcome SquaresScheme() {
  const Instance in = Squares();
  const SchemeReport lit = VerifyOptScheme(
      in, LoadScheme(kData + "/squares-scheme-literal.json", in.NumTypes()));
  Pattern row10;
  row10.counts = {839, 10, 8, 4, 39, 8, 4, 7, 5, 1};
  const PatternCertificate anchor = CertifyPattern(row10, in, SearchConfig{});
  int ok = 0;
  std::string failed;
  for (size_t j = 0; j < lit.prefix_ok.size(); ++j) {
    if (lit.prefix_ok[j]) {
      ++ok;
    } else {
      failed += (failed.empty() ? "" : ",") + std::to_string(j + 1);
    }
  }
  const bool identity = anchor.ok() && anchor.available_anchors == 839;
  Outcome o;
  o.pass = lit.status == BoundStatus::kProven && identity;
  o.detail = std::to_string(ok) + "/10 prefixes certified";
  if (!failed.empty()) o.detail += " (failed " + failed + ": " + lit.reason + ")";
  o.detail += "; row 10 leaves " + std::to_string(anchor.available_anchors) +
              " available anchors";
  if (!o.pass) {
    const SchemeReport fixed = VerifyOptScheme(
        in, LoadScheme(kData + "/squares-scheme.json", in.NumTypes()));
    o.detail += "; corrected scheme " + std::string(BoundStatusName(fixed.status));
  }
  return o;
}

Outcome RectPrimal() {
  const Instance in = Rect();
  const PatternSet set = LoadPatternSet(kData + "/rect-patterns.json", in.NumTypes());
  const LpProblem lp = BuildPrimal(in, set);
  const LpSolution s = SolveExact(lp);
  bool tight = s.status == LpStatus::kOptimal;
  if (tight) {
    for (const LedgerLine& l : CheckRows(lp, s.x)) tight = tight && l.tight;
  }
  const PrimalReport pr =
      VerifyPrimal(in, LoadPrimal(kData + "/rect-primal.json", in.NumTypes()));
  Outcome o;
  o.pass = s.status == LpStatus::kOptimal && s.objective == Q(768, 413) && tight &&
           pr.status == BoundStatus::kProven && pr.coverage.AllTight();
  o.detail = "R = " + ToString(s.objective) + ", LP rows " +
             (tight ? "all tight" : "not all tight") + ", primal solution " +
             BoundStatusName(pr.status);
  return o;
}

Outcome RectDual() {
  const Instance in = Rect();
  const DualCertificate cert = LoadCertificate(kData + "/rect-cert.json", in.NumTypes());
  const BoundResult r = VerifyDualCertificate(in, cert);
  const PatternSet set = LoadPatternSet(kData + "/rect-patterns.json", in.NumTypes());
  const LpSolution p = SolveExact(BuildPrimal(in, set));
  const LpSolution d = SolveExact(BuildDual(in, set));
  const std::vector<long> table = {1152, 864, 816, 576, 504, 432, 288, 216, 144};
  bool classes = r.knapsack.classes.size() == table.size();
  for (size_t j = 0; classes && j < table.size(); ++j) {
    const ClassResult& c = r.knapsack.classes[j];
    classes = c.weight == Q(table[j], 413) && c.capacity == c.weight &&
              (c.verdict == Verdict::kExact || c.verdict == Verdict::kPrunedExact);
  }
  const bool duality = p.status == LpStatus::kOptimal &&
                       d.status == LpStatus::kOptimal && p.objective == d.objective;
  Outcome o;
  o.pass = r.status == BoundStatus::kProven && r.bound == Q(768, 413) && duality &&
           classes;
  o.detail = std::string(BoundStatusName(r.status)) + " bound " + ToString(r.bound) +
             ", primal " + ToString(p.objective) + " = dual " + ToString(d.objective) +
             ", class weights " + (classes ? "match" : "differ");
  return o;
}

// Collects feasible placements of random patterns drawn from `types`.
std::vector<Placement> RandomPlacements(const Instance& in, const std::vector<int>& types,
                                        int wanted, int max_items, std::mt19937* rng) {
  std::vector<Placement> out;
  SearchConfig config;
  config.node_budget = 200000;
  for (int attempt = 0; attempt < 50 * wanted && static_cast<int>(out.size()) < wanted;
       ++attempt) {
    Pattern p;
    p.counts.assign(in.NumTypes(), 0);
    const int items = 1 + static_cast<int>((*rng)() % max_items);
    for (int n = 0; n < items; ++n) ++p.counts[types[(*rng)() % types.size()]];
    const FeasibilityResult r = ExhaustiveFeasible(p, in, config);
    if (r.status == FeasibilityStatus::kFeasible) out.push_back(r.placement);
  }
  return out;
}

Outcome Dominance() {
  int rules = 0;
  int rules_ok = 0;
  int placements = 0;
  int substitutions = 0;
  int unsound = 0;
  std::mt19937 rng(20261018);
  struct Suite {
    Instance instance;
    std::string cert;
    std::vector<int> types;
    int max_items;
  };
  const std::vector<Suite> suites = {
      {Rect(), "/rect-cert.json", {0, 1, 2, 3, 4, 5, 6, 7, 8}, 6},
      {Squares(), "/squares-cert.json", {3, 4, 5, 6, 7, 8, 9}, 4}};
  for (const Suite& s : suites) {
    const DualCertificate cert = LoadCertificate(kData + s.cert, s.instance.NumTypes());
    for (const DominanceRule& rule : cert.rules) {
      ++rules;
      if (CheckDominance(rule, s.instance, cert.lambda)) ++rules_ok;
    }
    for (const Placement& pl : RandomPlacements(s.instance, s.types, 50, s.max_items, &rng)) {
      ++placements;
      for (int n = 0; n < static_cast<int>(pl.items.size()); ++n) {
        for (const DominanceRule& rule : cert.rules) {
          if (rule.dominated != pl.items[n].type) continue;
          ++substitutions;
          if (!VerifyPlacement(SubstituteDominated(pl, n, rule, s.instance), s.instance).ok) {
            ++unsound;
          }
        }
      }
    }
  }
  Outcome o;
  o.pass = rules == 17 && rules_ok == 17 && placements >= 100 && unsound == 0;
  o.detail = std::to_string(rules_ok) + "/" + std::to_string(rules) + " rules hold, " +
             std::to_string(substitutions) + " substitutions on " +
             std::to_string(placements) + " placements, " + std::to_string(unsound) +
             " unsound";
  return o;
}

Outcome ClosedForm() {
  const std::vector<Rational> table = {Q(158333, 100000), Q(202083, 100000),
                                       Q(234085, 100000), Q(256322, 100000),
                                       Q(271262, 100000), Q(281129, 100000)};
  bool ok = ClosedFormBound(2) == Q(97, 48) && ClosedFormBound(30) > Q(2999, 1000);
  std::string values;
  for (int d = 1; d <= 6; ++d) {
    const Rational v = ClosedFormBound(d);
    ok = ok && table[d - 1] <= v && v < table[d - 1] + Q(1, 100000);
    values += (d > 1 ? " " : "") + Dec(v, 6);
  }
  return {ok, "d=1..6: " + values + "; d=30: " + Dec(ClosedFormBound(30), 6)};
}

Outcome Monotonicity() {
  int points = 0;
  int failures = 0;
  for (int d = 1; d <= 10; ++d) {
    for (int a = 0; a < 10; ++a) {
      const Rational y = Q(1, 3) + Q(a, 66);
      const Rational y_next = y + Q(1, 132);
      for (int b = 0; b < 10; ++b) {
        const Rational m = 1 + Q(b, 3);
        const Rational m_up = m + Q(1, 7);
        ++points;
        const bool ok = Ineq1(d, m, y) < Ineq1(d, m_up, y) &&
                        Ineq2(d, m, y, y_next) > Ineq2(d, m_up, y, y_next) &&
                        Ineq1(d, m, y) > Ineq1(d, m, y_next) &&
                        Ineq2(d, m, y, y_next) < Ineq2(d, m, y, y_next + Q(1, 132)) &&
                        Ineq3(d, y) > Ineq3(d, y_next);
        if (!ok) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(points) + " grid points, " +
                             std::to_string(failures) + " counterexamples"};
}

// v <= (a - sqrt(b)) / c, decided exactly.
bool AtMostSurd(const QuadraticSurd& s, const Rational& v) {
  const Rational t = Rational(s.a) - Rational(s.c) * v;
  return t >= 0 && t * t >= Rational(s.b);
}

Outcome ClassOptima() {
  const Rational tol(1, 1000000000);
  const ClassOptimum b1 = B1Optimize(tol);
  const ClassOptimum b2 = B2Optimize(tol);
  auto contains = [&](const ClassOptimum& o) {
    return o.alpha.Width() <= tol && AtMostSurd(o.alpha_exact, o.alpha.lo) &&
           !AtMostSurd(o.alpha_exact, o.alpha.hi);
  };
  const bool c1 = contains(b1) && b1.alpha_exact.ToString() == "(197 - sqrt(36541))/27";
  const bool c2 = contains(b2) && b2.alpha_exact.ToString() == "(529 - sqrt(274441))/54";
  Outcome o;
  o.pass = c1 && c2 && b1.bound.lo > Q(20043, 10000) && b2.bound.lo > Q(20954, 10000);
  o.detail = "B1 alpha " + Dec(b1.alpha.lo, 12) + " bound " + Dec(b1.bound.lo, 8) +
             ", B2 alpha " + Dec(b2.alpha.lo, 12) + " bound " + Dec(b2.bound.lo, 8);
  return o;
}

Outcome OracleEquivalence() {
  int checks = 0;
  int disagree = 0;
  int unknown = 0;
  for (int g = 2; g <= 30; ++g) {
    AnchorGrid grid;
    grid.resolution = g;
    grid.dimension = 2;
    for (int k = 1; k < g; ++k) {
      Instance in;
      in.geometry = Geometry::kHypercube;
      in.dimension = 2;
      ItemType t;
      t.id = 1;
      t.width = grid.Unit() * Rational(k);
      t.height = t.width;
      in.types = {t};
      in.alpha = {Rational(1)};
      in.opt_ratios = {Rational(1)};
      SearchConfig config;
      config.item_cap = 1000;
      config.node_budget = 2000000;
      const int64_t cap = GridCapacity(k, grid);
      for (int64_t count : {cap, cap + 1}) {
        Pattern p;
        p.counts = {count};
        const FeasibilityResult r = ExhaustiveFeasible(p, in, config);
        ++checks;
        if (r.status == FeasibilityStatus::kBudgetExceeded) {
          ++unknown;
        } else if ((r.status == FeasibilityStatus::kFeasible) != (count == cap)) {
          ++disagree;
        }
      }
    }
  }
  return {disagree == 0 && unknown == 0,
          std::to_string(checks) + " single-type checks, " + std::to_string(disagree) +
              " disagreements, " + std::to_string(unknown) + " undecided"};
}

Outcome FiniteK() {
  HarmonicParams p;
  p.d = 2;
  p.y = {Q(1, 3)};
  p.m = {Q(2)};
  const Rational limit = Ineq3(2, Q(1, 3));
  std::vector<Rational> gaps;
  for (long k : {1000L, 10000L, 100000L}) {
    gaps.push_back(limit - HarmonicInstanceCost(3, Q(k), p, 1));
  }
  const bool monotone = gaps[0] > gaps[1] && gaps[1] > gaps[2] && gaps[2] >= 0;
  Outcome o;
  o.pass = monotone && gaps[0] < Q(1, 100) && gaps[2] < Q(1, 10000);
  o.detail = "gaps to 13/6 at K=1e3,1e4,1e5: " + Dec(gaps[0], 8) + " " + Dec(gaps[1], 8) +
             " " + Dec(gaps[2], 8);
  return o;
}

}  // namespace
}  // namespace binlb

int main() {
  using binlb::Outcome;
  const std::vector<std::function<Outcome()>> criteria = {
      binlb::SquaresDual,   binlb::SquaresLedger,    binlb::SquaresScheme,
      binlb::RectPrimal,    binlb::RectDual,         binlb::Dominance,
      binlb::ClosedForm,    binlb::Monotonicity,     binlb::ClassOptima,
      binlb::OracleEquivalence, binlb::FiniteK};
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << seconds;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << ": "
              << o.detail << " (" << time.str() << " s)" << std::endl;
    if (!o.pass) ++failed;
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria pass"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
