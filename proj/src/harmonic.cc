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
#include <string>

#include "binlb/packing.h"

namespace binlb {
namespace {

Rational TwoPow(int d) { return Pow(Rational(2), d); }

void RequireDimension(int d) {
  if (d < 1) throw std::domain_error("dimension must be at least 1");
}

void RequireSize(const Rational& y, const char* what) {
  if (y <= 0 || y > Rational(1, 2)) {
    throw std::domain_error(std::string(what) + " = " + ToString(y) +
                            " is outside (0, 1/2]");
  }
}

void RequireM(const Rational& m) {
  if (m < 1) throw std::domain_error("m = " + ToString(m) + " is below 1");
}

// Radicand of the y recursion.
Rational Radicand(int d, const Rational& R, const Rational& y_prev) {
  const Rational two_d = TwoPow(d);
  const Rational yd = Pow(y_prev, d);
  return (-two_d * R + two_d * yd - two_d * two_d * yd - 1 + 3 * two_d -
          1 / two_d) /
         (two_d - 1);
}

// +1 when the ratio R is below the equalized value, -1 when above, 0 when the
// enclosures cannot decide. Fills the y enclosures when the sign is decided.
int EqualizeSign(int d, int h, const Rational& R, const Rational& root_tol,
                 std::vector<Interval>* ys) {
  ys->clear();
  Interval y{Rational(1, 3), Rational(1, 3)};
  const Rational half(1, 2);
  for (int j = 1; j <= h; ++j) {
    const Rational rad_min = Radicand(d, R, y.hi);
    const Rational rad_max = Radicand(d, R, y.lo);
    if (rad_max <= 0) return -1;
    if (rad_min <= 0) return 0;
    const Interval lo_root = NthRoot(rad_min, d, root_tol);
    const Interval hi_root = NthRoot(rad_max, d, root_tol);
    y = {1 - hi_root.hi, 1 - lo_root.lo};
    if (y.lo >= half) return -1;
    if (y.hi >= half) return 0;
    ys->push_back(y);
  }
  const Rational f_lo = Ineq3(d, y.hi) - R;
  const Rational f_hi = Ineq3(d, y.lo) - R;
  if (f_lo > 0) return 1;
  if (f_hi < 0) return -1;
  return 0;
}

}  // namespace

Rational DefaultTolerance() { return Rational(1, 1000000000000L); }

Rational HarmonicParams::Y(int i) const {
  if (i == 0) return Rational(1, 3);
  if (i == h() + 1) return Rational(1, 2);
  if (i < 0 || i > h() + 1) throw std::out_of_range("y index out of range");
  return y[i - 1];
}

void HarmonicParams::Validate() const {
  RequireDimension(d);
  if (y.empty()) throw std::domain_error("h must be at least 1");
  if (m.size() != y.size()) throw std::domain_error("y and m differ in length");
  for (int i = 1; i <= h() + 1; ++i) {
    if (Y(i) <= Y(i - 1)) {
      throw std::domain_error("y_" + std::to_string(i) + " = " +
                              ToString(Y(i)) + " does not exceed y_" +
                              std::to_string(i - 1));
    }
  }
  for (const Rational& mj : m) RequireM(mj);
  if (lambda && (*lambda <= 0 || *lambda > Rational(1, 3))) {
    throw std::domain_error("lambda must lie in (0, 1/3]");
  }
}

Rational Ineq1(int d, const Rational& m, const Rational& y) {
  RequireDimension(d);
  RequireM(m);
  RequireSize(y, "y");
  const Rational two_d = TwoPow(d);
  return 2 + (1 - 1 / m) * (1 - 1 / two_d) - 1 / two_d - (two_d - 1) * Pow(y, d);
}

Rational Ineq2(int d, const Rational& m, const Rational& y,
               const Rational& y_next) {
  RequireDimension(d);
  RequireM(m);
  RequireSize(y, "y");
  RequireSize(y_next, "y_next");
  if (y_next <= y) throw std::domain_error("y_next must exceed y");
  const Rational two_d = TwoPow(d);
  return 2 + 1 / m + (1 - 1 / m) * (1 - 1 / two_d) - Pow(1 - y_next, d) -
         (two_d - 1) * Pow(y, d);
}

Rational Ineq3(int d, const Rational& y_h) {
  RequireDimension(d);
  if (y_h < Rational(1, 3) || y_h > Rational(1, 2)) {
    throw std::domain_error("y_h = " + ToString(y_h) + " is outside [1/3, 1/2]");
  }
  const Rational two_d = TwoPow(d);
  return 3 - 2 / two_d - (two_d - 1) * Pow(y_h, d);
}

Rational ClosedFormBound(int d) {
  RequireDimension(d);
  const Rational two_d = TwoPow(d);
  return 3 - 2 * (two_d - 1) / Pow(Rational(3), d) -
         (two_d + 1) / Pow(Rational(4), d);
}

Interval YRecursion(int d, const Rational& R, const Rational& y_prev,
                    const Rational& tol) {
  RequireDimension(d);
  const Rational rad = Radicand(d, R, y_prev);
  if (rad <= 0) {
    throw std::domain_error("radicand " + ToString(rad) + " is not positive");
  }
  const Interval root = NthRoot(rad, d, tol);
  return {1 - root.hi, 1 - root.lo};
}

WorstCase HarmonicWorstCase(const HarmonicParams& params) {
  params.Validate();
  const int d = params.d;
  const int h = params.h();
  WorstCase out;
  out.ineq3 = Ineq3(d, params.Y(h));
  out.value = out.ineq3;
  out.attained_by = "ineq3";
  for (int j = 1; j <= h; ++j) {
    const Rational& m = params.m[j - 1];
    out.ineq1.push_back(Ineq1(d, m, params.Y(h - j)));
    out.ineq2.push_back(Ineq2(d, m, params.Y(h - j), params.Y(h - j + 1)));
    if (out.ineq1.back() > out.value) {
      out.value = out.ineq1.back();
      out.attained_by = "ineq1 j=" + std::to_string(j);
    }
    if (out.ineq2.back() > out.value) {
      out.value = out.ineq2.back();
      out.attained_by = "ineq2 j=" + std::to_string(j);
    }
  }
  return out;
}

EqualizedPoint Equalize(int d, int h, const Rational& tol) {
  RequireDimension(d);
  if (h < 1) throw std::domain_error("h must be at least 1");
  Rational root_tol = tol / 1000;
  for (int j = 0; j < h; ++j) root_tol /= 10;
  Rational lo = ClosedFormBound(d);
  Rational hi = 3;
  std::vector<Interval> ys;
  while (hi - lo > tol) {
    const Rational mid = (lo + hi) / 2;
    const int sign = EqualizeSign(d, h, mid, root_tol, &ys);
    if (sign > 0) {
      lo = mid;
    } else if (sign < 0) {
      hi = mid;
    } else {
      break;
    }
  }
  EqualizedPoint out;
  out.ratio = {lo, hi};
  const Rational R = out.ratio.Mid();
  if (EqualizeSign(d, h, R, root_tol, &ys) == -1 || ys.size() != static_cast<size_t>(h)) {
    EqualizeSign(d, h, lo, root_tol, &ys);
  }
  out.params.d = d;
  for (const Interval& y : ys) out.params.y.push_back(y.Mid());
  const Rational two_d = TwoPow(d);
  for (int j = 1; j <= h; ++j) {
    out.params.m.push_back(
        1 / (Pow(1 - out.params.Y(h - j + 1), d) - 1 / two_d));
  }
  out.worst = HarmonicWorstCase(out.params);
  return out;
}

std::string QuadraticSurd::ToString() const {
  return "(" + std::to_string(a) + " - sqrt(" + std::to_string(b) + "))/" +
         std::to_string(c);
}

Interval QuadraticSurd::Enclose(const Rational& tol) const {
  const Interval s = NthRoot(Rational(b), 2, tol * c);
  return {(a - s.hi) / c, (a - s.lo) / c};
}

ClassBounds B1Bounds(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw std::domain_error("alpha must lie in [0, 1]");
  return {(213 - 2 * alpha) / (9 * (12 - alpha)), (26 - 9 * alpha) / 12};
}

ClassBounds B2Bounds(const Rational& alpha) {
  if (alpha < 0 || alpha > 1) throw std::domain_error("alpha must lie in [0, 1]");
  return {(85 + 79 * alpha) / (9 * (5 - alpha)), (26 - 9 * alpha) / 12};
}

namespace {

// The second bound decreases in alpha and the first increases, so the common
// value at the crossing lies between the second bound at the interval ends.
ClassOptimum Optimize(const QuadraticSurd& surd, const Rational& tol) {
  ClassOptimum out;
  out.alpha_exact = surd;
  Rational width = tol;
  while (true) {
    out.alpha = surd.Enclose(width);
    out.bound = {(26 - 9 * out.alpha.hi) / 12, (26 - 9 * out.alpha.lo) / 12};
    if (out.alpha.Width() <= tol && out.bound.Width() <= tol) return out;
    width /= 16;
  }
}

}  // namespace

ClassOptimum B1Optimize(const Rational& tol) {
  return Optimize({197, 36541, 27}, tol);
}

ClassOptimum B2Optimize(const Rational& tol) {
  return Optimize({529, 274441, 54}, tol);
}

Rational HarmonicInstanceCost(int family, const Rational& K,
                              const HarmonicParams& params, int j) {
  const int d = params.d;
  const int h = params.h();
  RequireDimension(d);
  if (h < 1 || params.m.size() != params.y.size()) {
    throw std::domain_error("parameters need h >= 1 and one m per y");
  }
  if (family != 3 && (j < 1 || j > h)) {
    throw std::domain_error("instance index j must lie in 1..h");
  }
  const Rational two_d = TwoPow(d);
  Rational y, y_next, total_side;
  if (family == 1 || family == 3) {
    y = family == 1 ? params.Y(h - j) : params.Y(h);
    total_side = (2 * K - y) / y;
  } else if (family == 2) {
    y = params.Y(h - j);
    y_next = params.Y(h - j + 1);
    const Rational z = y * (1 - y_next);
    total_side = (K - z) / z;
  } else {
    throw std::domain_error("family must be 1, 2 or 3");
  }
  RequireSize(y, "y");
  const Rational M(HarmonicAnchorCount(family, d, K, y, y_next));
  const Rational t_bins = M / Pow(total_side, d);
  if (family == 3) return 2 - 1 / two_d + t_bins;
  const Rational& m = params.m[j - 1];
  RequireM(m);
  const Rational v_bins = 1 / m + (1 - 1 / m) * (1 - 1 / two_d);
  const Rational u_bins = family == 1 ? 1 - 1 / m : Rational(1);
  return v_bins + u_bins + t_bins;
}

Rational HarmonicInstanceLimit(int family, const HarmonicParams& params,
                               int j) {
  const int h = params.h();
  switch (family) {
    case 1:
      return Ineq1(params.d, params.m.at(j - 1), params.Y(h - j));
    case 2:
      return Ineq2(params.d, params.m.at(j - 1), params.Y(h - j),
                   params.Y(h - j + 1));
    case 3:
      return Ineq3(params.d, params.Y(h));
  }
  throw std::domain_error("family must be 1, 2 or 3");
}

}  // namespace binlb
