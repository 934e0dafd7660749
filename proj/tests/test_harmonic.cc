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

#include "binlb/harmonic.h"

#include <stdexcept>
#include <vector>

#include "doctest.h"

namespace binlb {
namespace {

Rational Q(long n, long d = 1) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

TEST_CASE("inequality examples") {
  CHECK(Ineq1(2, Q(2), Q(1, 3)) == Q(43, 24));
  CHECK(Ineq1(1, Q(1), Q(1, 4)) == Q(2) - Q(1, 2) - Q(1, 4));
  const Rational direct = Q(2) + Q(1, 2) + Q(3, 8) - Q(9, 25) - Q(1, 3);
  const Rational reordered = (Q(1, 2) - Q(1, 3)) + (Q(3, 8) - Q(9, 25)) + 2;
  CHECK(Ineq2(2, Q(2), Q(1, 3), Q(2, 5)) == Q(1309, 600));
  CHECK(direct == reordered);
  CHECK(direct == Q(1309, 600));
  CHECK(Ineq3(2, Q(1, 3)) == Q(13, 6));
  CHECK(Ineq3(1, Q(1, 2)) == Q(3, 2));
}

TEST_CASE("inequality domains") {
  CHECK_THROWS_AS(Ineq1(2, Q(1, 2), Q(1, 3)), std::domain_error);
  CHECK_THROWS_AS(Ineq1(2, Q(2), Q(3, 5)), std::domain_error);
  CHECK_THROWS_AS(Ineq2(2, Q(2), Q(2, 5), Q(1, 3)), std::domain_error);
  CHECK_THROWS_AS(Ineq3(2, Q(1, 4)), std::domain_error);
  CHECK_THROWS_AS(Ineq1(0, Q(2), Q(1, 3)), std::domain_error);
}

TEST_CASE("monotonicity on rational grids") {
  for (int d = 1; d <= 4; ++d) {
    for (int a = 0; a < 10; ++a) {
      const Rational y = Q(1, 3) + Q(a, 60);
      const Rational y_next = y + Q(1, 60);
      for (int b = 0; b < 9; ++b) {
        const Rational m = 1 + Q(b, 2);
        const Rational m_up = m + Q(1, 2);
        CHECK(Ineq1(d, m, y) < Ineq1(d, m_up, y));
        CHECK(Ineq2(d, m, y, y_next) > Ineq2(d, m_up, y, y_next));
        CHECK(Ineq1(d, m, y) > Ineq1(d, m, y_next));
        if (y_next + Q(1, 60) <= Q(1, 2)) {
          CHECK(Ineq2(d, m, y, y_next) < Ineq2(d, m, y, y_next + Q(1, 60)));
        }
      }
      CHECK(Ineq3(d, y) > Ineq3(d, y_next));
    }
  }
}

TEST_CASE("closed form values") {
  CHECK(ClosedFormBound(1) == Q(19, 12));
  CHECK(ClosedFormBound(2) == Q(97, 48));
  CHECK(ClosedFormBound(3) == Q(4045, 1728));
  CHECK(ClosedFormBound(5) == Q(674989, 248832));
  for (int d = 1; d < 30; ++d) CHECK(ClosedFormBound(d) < ClosedFormBound(d + 1));
  CHECK(ClosedFormBound(30) > Q(2999, 1000));
  CHECK(ClosedFormBound(30) < 3);
}

TEST_CASE("y recursion") {
  const Rational tol = DefaultTolerance();
  const Interval one = YRecursion(1, Q(19, 12), Q(1, 3), tol);
  CHECK(one.lo == one.hi);
  CHECK(one.lo == Q(1, 3));
  const Interval two = YRecursion(2, Q(97, 48), Q(1, 3), tol);
  CHECK(two.Contains(Q(1, 3)));
  CHECK(two.Width() <= tol);
  CHECK_THROWS_AS(YRecursion(2, Q(3), Q(1, 3), tol), std::domain_error);
}

TEST_CASE("worst case is the largest right-hand side") {
  HarmonicParams p;
  p.d = 2;
  p.y = {Q(2, 5)};
  p.m = {Q(2)};
  p.Validate();
  const WorstCase w = HarmonicWorstCase(p);
  CHECK(w.value == Q(1309, 600));
  CHECK(w.attained_by == "ineq2 j=1");
  CHECK(w.ineq3 == Q(101, 50));
  CHECK(w.value >= Q(97, 48));
  HarmonicParams bad = p;
  bad.y = {Q(1, 4)};
  CHECK_THROWS_AS(bad.Validate(), std::domain_error);
}

TEST_CASE("equalized points approach the closed form") {
  const Rational tol = DefaultTolerance();
  for (int d = 1; d <= 6; ++d) {
    const EqualizedPoint e = Equalize(d, 1, tol);
    CHECK(e.ratio.Width() <= tol);
    CHECK(e.ratio.lo >= ClosedFormBound(d) - tol);
    const WorstCase& w = e.worst;
    CHECK(w.ineq1[0] - w.ineq3 < Q(1, 1000000000));
    CHECK(w.ineq3 - w.ineq1[0] < Q(1, 1000000000));
    CHECK(w.ineq2[0] - w.ineq3 < Q(1, 1000000000));
    CHECK(w.ineq3 - w.ineq2[0] < Q(1, 1000000000));
  }
  CHECK(Equalize(1, 1, tol).ratio.Contains(Q(29, 18)));
  const Rational gap1 = Equalize(1, 1, tol).ratio.lo - Q(19, 12);
  const Rational gap8 = Equalize(1, 8, tol).ratio.lo - Q(19, 12);
  CHECK(gap8 > 0);
  CHECK(gap8 < gap1 / 4);
  Rational previous = Equalize(2, 1, tol).ratio.lo;
  for (int h = 2; h <= 4; ++h) {
    const EqualizedPoint e = Equalize(2, h, tol);
    CHECK(e.ratio.hi <= previous);
    CHECK(e.ratio.lo >= Q(97, 48));
    previous = e.ratio.hi;
  }
}

TEST_CASE("B1 and B2 optima") {
  const Rational tol(1, 1000000000);
  const ClassOptimum b1 = B1Optimize(tol);
  CHECK(b1.alpha_exact.ToString() == "(197 - sqrt(36541))/27");
  CHECK(b1.alpha.Width() <= tol);
  CHECK(b1.bound.lo > Q(20043, 10000));
  const ClassOptimum b2 = B2Optimize(tol);
  CHECK(b2.alpha_exact.ToString() == "(529 - sqrt(274441))/54");
  CHECK(b2.alpha.Width() <= tol);
  CHECK(b2.bound.lo > Q(20954, 10000));

  CHECK(B1Bounds(Q(0)).first == Q(213, 108));
  CHECK(B1Bounds(Q(0)).second == Q(26, 12));
  CHECK(B2Bounds(Q(1)).second == Q(17, 12));
  CHECK_THROWS_AS(B1Bounds(Q(2)), std::domain_error);

  const Rational step(1, 1000);
  for (const auto& [opt, bounds] :
       {std::pair{b1, &B1Bounds}, std::pair{b2, &B2Bounds}}) {
    const ClassBounds lo = bounds(opt.alpha.lo);
    const ClassBounds hi = bounds(opt.alpha.hi);
    CHECK(lo.first - lo.second < tol);
    CHECK(hi.second - hi.first < tol);
    CHECK(bounds(opt.alpha.lo - step).Max() > opt.bound.hi);
    CHECK(bounds(opt.alpha.hi + step).Max() > opt.bound.hi);
  }
}

TEST_CASE("finite instance costs converge to the inequalities") {
  HarmonicParams p;
  p.d = 2;
  p.y = {Q(1, 3)};
  p.m = {Q(2)};
  const Rational limit = Ineq3(2, Q(1, 3));
  CHECK(HarmonicInstanceLimit(3, p, 1) == limit);
  Rational previous = 0;
  for (long k : {1000L, 10000L, 100000L}) {
    const Rational cost = HarmonicInstanceCost(3, Q(k), p, 1);
    CHECK(cost <= limit);
    CHECK(cost > previous);
    CHECK(limit - cost < Q(1, k / 5));
    previous = cost;
  }
  CHECK_THROWS_AS(HarmonicInstanceCost(4, Q(1000), p, 1), std::domain_error);
}

}  // namespace
}  // namespace binlb
