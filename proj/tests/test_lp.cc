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

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "binlb/model.h"
#include "doctest.h"

namespace binlb {
namespace {

const std::string kData = BINLB_TEST_DATA;

Rational Q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

LpProblem Make(bool maximize, std::vector<Rational> objective) {
  LpProblem lp;
  lp.maximize = maximize;
  lp.objective = std::move(objective);
  return lp;
}

void AddRow(LpProblem* lp, std::vector<Rational> row, RowSense sense,
            Rational rhs) {
  lp->rows.push_back(std::move(row));
  lp->senses.push_back(sense);
  lp->rhs.push_back(std::move(rhs));
}

bool AllRowsHold(const LpProblem& lp, const std::vector<Rational>& x) {
  for (const LedgerLine& l : CheckRows(lp, x)) {
    if (!l.holds) return false;
  }
  return true;
}

TEST_CASE("textbook maximization") {
  LpProblem lp = Make(true, {Q(3), Q(5)});
  AddRow(&lp, {Q(1), Q(0)}, RowSense::kLessEq, Q(4));
  AddRow(&lp, {Q(0), Q(2)}, RowSense::kLessEq, Q(12));
  AddRow(&lp, {Q(3), Q(2)}, RowSense::kLessEq, Q(18));
  const LpSolution s = SolveExact(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == 36);
  CHECK(s.x[0] == 2);
  CHECK(s.x[1] == 6);
  CHECK(AllRowsHold(lp, s.x));
}

TEST_CASE("infeasible and unbounded programs") {
  LpProblem bad = Make(false, {Q(1)});
  AddRow(&bad, {Q(1)}, RowSense::kGreaterEq, Q(2));
  AddRow(&bad, {Q(1)}, RowSense::kLessEq, Q(1));
  CHECK(SolveExact(bad).status == LpStatus::kInfeasible);

  LpProblem open = Make(true, {Q(1), Q(0)});
  AddRow(&open, {Q(1), Q(-1)}, RowSense::kLessEq, Q(1));
  CHECK(SolveExact(open).status == LpStatus::kUnbounded);
}

TEST_CASE("redundant equality rows") {
  LpProblem lp = Make(false, {Q(1), Q(2)});
  AddRow(&lp, {Q(1), Q(1)}, RowSense::kEqual, Q(2));
  AddRow(&lp, {Q(2), Q(2)}, RowSense::kEqual, Q(4));
  const LpSolution s = SolveExact(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == 2);
  CHECK(s.x[0] == 2);
}

TEST_CASE("Bland's rule terminates on the classic cycling example") {
  LpProblem lp = Make(false, {Q(-3, 4), Q(20), Q(-1, 2), Q(6)});
  AddRow(&lp, {Q(1, 4), Q(-8), Q(-1), Q(9)}, RowSense::kLessEq, Q(0));
  AddRow(&lp, {Q(1, 2), Q(-12), Q(-1, 2), Q(3)}, RowSense::kLessEq, Q(0));
  AddRow(&lp, {Q(0), Q(0), Q(1), Q(0)}, RowSense::kLessEq, Q(1));
  const LpSolution s = SolveExact(lp);
  REQUIRE(s.status == LpStatus::kOptimal);
  CHECK(s.objective == Q(-5, 4));
  CHECK(AllRowsHold(lp, s.x));
}

TEST_CASE("dimension mismatches are rejected") {
  LpProblem lp = Make(false, {Q(1), Q(1)});
  AddRow(&lp, {Q(1)}, RowSense::kLessEq, Q(1));
  CHECK_THROWS_AS(lp.Validate(), std::invalid_argument);
}

struct Rect {
  Instance instance = LoadInstance(kData + "/rect-1p859.json");
  PatternSet set = LoadPatternSet(kData + "/rect-patterns.json", 9);
};

TEST_CASE("rect primal and dual agree") {
  const Rect r;
  const LpProblem primal = BuildPrimal(r.instance, r.set);
  const LpProblem dual = BuildDual(r.instance, r.set);
  const LpSolution p = SolveExact(primal);
  const LpSolution d = SolveExact(dual);
  REQUIRE(p.status == LpStatus::kOptimal);
  REQUIRE(d.status == LpStatus::kOptimal);
  CHECK(p.objective == Q(768, 413));
  CHECK(d.objective == Q(768, 413));
  CHECK(AllRowsHold(primal, p.x));
  CHECK(AllRowsHold(dual, d.x));
  CHECK(primal.row_names.front() == "coverage type 1");
  CHECK(dual.row_names.back() == "normalization");
}

TEST_CASE("weak duality on random pattern subsets") {
  const Rect r;
  std::mt19937 rng(7);
  int compared = 0;
  for (int trial = 0; trial < 30; ++trial) {
    PatternSet sub;
    for (const Pattern& p : r.set.patterns) {
      if (rng() % 3 != 0) sub.patterns.push_back(p);
    }
    if (sub.patterns.empty()) continue;
    const LpSolution p = SolveExact(BuildPrimal(r.instance, sub));
    const LpSolution d = SolveExact(BuildDual(r.instance, sub));
    if (p.status != LpStatus::kOptimal) {
      CHECK(d.status == LpStatus::kUnbounded);
      continue;
    }
    REQUIRE(d.status == LpStatus::kOptimal);
    CHECK(d.objective <= p.objective);
    CHECK(d.objective == p.objective);
    CHECK(p.objective >= Q(768, 413));
    ++compared;
  }
  CHECK(compared > 0);
}

TEST_CASE("rect certificate, primal and scheme are proven") {
  const Rect r;
  const DualCertificate cert = LoadCertificate(kData + "/rect-cert.json", 9);
  const BoundResult b = VerifyDualCertificate(r.instance, cert);
  CHECK(b.status == BoundStatus::kProven);
  CHECK(b.bound == Q(768, 413));

  const PrimalReport pr =
      VerifyPrimal(r.instance, LoadPrimal(kData + "/rect-primal.json", 9));
  CHECK(pr.status == BoundStatus::kProven);
  CHECK(pr.coverage.AllTight());

  const SchemeReport sr =
      VerifyOptScheme(r.instance, LoadScheme(kData + "/rect-scheme.json", 9));
  CHECK(sr.status == BoundStatus::kProven);
  for (bool ok : sr.prefix_ok) CHECK(ok);
}

TEST_CASE("corrupted certificates are refuted") {
  const Rect r;
  const DualCertificate good = LoadCertificate(kData + "/rect-cert.json", 9);

  DualCertificate neg = good;
  neg.lambda[0] = -neg.lambda[0];
  const BoundResult a = VerifyDualCertificate(r.instance, neg);
  CHECK(a.status == BoundStatus::kRefuted);
  CHECK(a.reason.find("lambda1") != std::string::npos);

  DualCertificate pos = good;
  pos.mu[2] = -pos.mu[2];
  CHECK(VerifyDualCertificate(r.instance, pos).status == BoundStatus::kRefuted);

  DualCertificate heavy = good;
  heavy.lambda[8] = heavy.lambda[8] * 2;
  const BoundResult h = VerifyDualCertificate(r.instance, heavy);
  CHECK(h.status == BoundStatus::kRefuted);

  DualCertificate loose = good;
  for (Rational& m : loose.mu) m *= 2;
  CHECK(VerifyDualCertificate(r.instance, loose).status == BoundStatus::kRefuted);

  DualCertificate explore = good;
  explore.exploratory = true;
  CHECK(VerifyDualCertificate(r.instance, explore).status != BoundStatus::kProven);
}

TEST_CASE("the literal squares scheme is refuted and the corrected one proven") {
  const Instance in = LoadInstance(kData + "/squares-1p68.json");
  const SchemeReport lit =
      VerifyOptScheme(in, LoadScheme(kData + "/squares-scheme-literal.json", 10));
  CHECK(lit.status == BoundStatus::kRefuted);
  CHECK(lit.reason.rfind("prefix 5:", 0) == 0);
  const SchemeReport fixed =
      VerifyOptScheme(in, LoadScheme(kData + "/squares-scheme.json", 10));
  CHECK(fixed.status == BoundStatus::kProven);
}

TEST_CASE("scheme coverage shortfalls are refuted") {
  const Rect r;
  OptScheme scheme = LoadScheme(kData + "/rect-scheme.json", 9);
  for (SchemeEntry& e : scheme.prefixes[4]) e.bins /= 2;
  const SchemeReport s = VerifyOptScheme(r.instance, scheme);
  CHECK(s.status == BoundStatus::kRefuted);
  CHECK_FALSE(s.prefix_ok[4]);
}

TEST_CASE("pattern certification methods") {
  const Instance sq = LoadInstance(kData + "/squares-1p68.json");
  Pattern single;
  single.counts = {0, 0, 0, 0, 0, 0, 0, 0, 9, 0};
  CHECK(CertifyPattern(single, sq, {}).method == "capacity");
  Pattern row;
  row.counts = {839, 10, 8, 4, 39, 8, 4, 7, 5, 1};
  const PatternCertificate ok = CertifyPattern(row, sq, {});
  CHECK(ok.ok());
  CHECK(ok.method == "grid layout");
  CHECK(ok.available_anchors == 839);
  row.counts[0] = 840;
  const PatternCertificate over = CertifyPattern(row, sq, {});
  CHECK(over.status == FeasibilityStatus::kInfeasible);
  CHECK(over.message.find("sand count 840") != std::string::npos);
}

}  // namespace
}  // namespace binlb
