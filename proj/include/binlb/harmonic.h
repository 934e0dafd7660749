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

// Lower-bound formulas for Harmonic-type hypercube algorithms and for the two
// square-packing classes B1 and B2. Rational quantities are exact; d-th roots
// and square roots are enclosed by dyadic intervals.

#ifndef BINLB_HARMONIC_H_
#define BINLB_HARMONIC_H_

#include <optional>
#include <string>
#include <vector>

#include "binlb/exactnum.h"

namespace binlb {

// Default enclosure width for irrational results.
Rational DefaultTolerance();

// Parameters of a Harmonic-type algorithm: y holds y_1..y_h and m holds
// m_1..m_h. y_0 = 1/3 and y_{h+1} = 1/2 are implicit.
struct HarmonicParams {
  int d = 2;
  std::vector<Rational> y;
  std::vector<Rational> m;
  std::optional<Rational> lambda;

  int h() const { return static_cast<int>(y.size()); }
  // y_i for 0 <= i <= h + 1.
  Rational Y(int i) const;
  // Throws std::domain_error naming the violated invariant.
  void Validate() const;
};

// Right-hand sides of the three families of ratio inequalities. Each throws
// std::domain_error outside its domain.
Rational Ineq1(int d, const Rational& m, const Rational& y);
Rational Ineq2(int d, const Rational& m, const Rational& y,
               const Rational& y_next);
Rational Ineq3(int d, const Rational& y_h);

// 3 - 2(2^d - 1)/3^d - (2^d + 1)/4^d.
Rational ClosedFormBound(int d);

// Enclosure of y_j obtained from R and y_{j-1} by equalizing the first two
// inequality families. Exact for d = 1. Throws std::domain_error when the
// radicand is not positive.
Interval YRecursion(int d, const Rational& R, const Rational& y_prev,
                    const Rational& tol);

struct WorstCase {
  Rational value;
  std::string attained_by;     // "ineq1 j=..", "ineq2 j=.." or "ineq3".
  std::vector<Rational> ineq1;  // Indexed by j - 1.
  std::vector<Rational> ineq2;
  Rational ineq3;
};

// Maximum of all 2h + 1 right-hand sides for the given parameters.
WorstCase HarmonicWorstCase(const HarmonicParams& params);

struct EqualizedPoint {
  Interval ratio;          // Encloses the common value of all inequalities.
  HarmonicParams params;   // Rational parameters near the equalized point.
  WorstCase worst;         // Evaluated at `params`.
};

// Solves the 2h + 1 equalities by bisection on the common value.
EqualizedPoint Equalize(int d, int h, const Rational& tol);

// (a - sqrt(b)) / c.
struct QuadraticSurd {
  long a = 0;
  long b = 0;
  long c = 1;

  std::string ToString() const;
  Interval Enclose(const Rational& tol) const;
};

struct ClassBounds {
  Rational first;   // Class-specific bound.
  Rational second;  // (26 - 9 alpha) / 12.
  Rational Max() const { return first > second ? first : second; }
};

struct ClassOptimum {
  QuadraticSurd alpha_exact;
  Interval alpha;
  Interval bound;  // Common value of both bounds at alpha.
};

// Throws std::domain_error unless 0 <= alpha <= 1.
ClassBounds B1Bounds(const Rational& alpha);
ClassBounds B2Bounds(const Rational& alpha);
ClassOptimum B1Optimize(const Rational& tol);
ClassOptimum B2Optimize(const Rational& tol);

// Bins per N used by any Harmonic-type algorithm on instance `j` of the
// given family (1: instances 1..h, 2: instances h+1..2h, 3: instance 2h+1,
// where j is ignored) for the finite parameter K. Throws std::domain_error
// when the divisibility conditions fail.
Rational HarmonicInstanceCost(int family, const Rational& K,
                              const HarmonicParams& params, int j);

// Limit of HarmonicInstanceCost as K grows: the matching inequality.
Rational HarmonicInstanceLimit(int family, const HarmonicParams& params, int j);

}  // namespace binlb

#endif  // BINLB_HARMONIC_H_
