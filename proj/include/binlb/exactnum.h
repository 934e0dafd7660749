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

// Exact rational arithmetic and first-order infinitesimal sizes.
//
// A PerturbedSize is base + e_coeff * e + d_coeff * d where e and d are
// independent positive infinitesimals. Comparisons are lexicographic: the
// base decides first, then the infinitesimal part. When the e and d
// differences have opposite signs the order is not determined and the
// comparison reports kAmbiguous.

#ifndef BINLB_EXACTNUM_H_
#define BINLB_EXACTNUM_H_

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace binlb {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "p/q", "-p/q" (surrounding spaces allowed). Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational ParseRational(const std::string& text);

// Canonical "p/q" form, or "p" when the denominator is one.
std::string ToString(const Rational& r);

// Exact quotient; throws std::domain_error when b is zero.
Rational Divide(const Rational& a, const Rational& b);

// floor(a / b) for b > 0; throws std::domain_error otherwise.
Integer FloorDiv(const Rational& a, const Rational& b);

// Round-to-nearest decimal rendering with `digits` fractional digits. Halves
// round away from zero. Display only.
std::string ToDecimal(const Rational& r, int digits);

// Exact rational value of a finite double.
Rational FromDouble(double value);

// Integer power for small non-negative exponents.
Rational Pow(const Rational& base, int exponent);

enum class Ordering { kLess, kEqual, kGreater, kAmbiguous };

const char* OrderingName(Ordering o);

class PerturbedSize {
 public:
  PerturbedSize() = default;
  explicit PerturbedSize(Rational base, Rational eps = 0, Rational del = 0);

  const Rational& base() const { return base_; }
  const Rational& eps() const { return eps_; }
  const Rational& del() const { return del_; }

  bool IsZero() const { return base_ == 0 && eps_ == 0 && del_ == 0; }

  PerturbedSize operator+(const PerturbedSize& o) const;
  PerturbedSize operator-(const PerturbedSize& o) const;
  PerturbedSize operator-() const;
  PerturbedSize operator*(const Rational& k) const;
  PerturbedSize& operator+=(const PerturbedSize& o);
  bool operator==(const PerturbedSize& o) const;
  bool operator!=(const PerturbedSize& o) const { return !(*this == o); }

  // "p/q + (a/b)e + (c/d)d"; zero infinitesimal terms are omitted.
  std::string ToString() const;

 private:
  Rational base_;
  Rational eps_;
  Rational del_;
};

PerturbedSize operator*(const Rational& k, const PerturbedSize& s);
std::ostream& operator<<(std::ostream& os, const PerturbedSize& s);

// Accepts the ToString() form plus "-" signs between terms, for example
// "1/4 - (300)d", "1/6 + (-2)e", "1/420 - e".
PerturbedSize ParsePerturbedSize(const std::string& text);

Ordering LexCompare(const PerturbedSize& a, const PerturbedSize& b);

// Comparison helpers that throw AmbiguousComparison on kAmbiguous.
class AmbiguousComparison : public std::runtime_error {
 public:
  AmbiguousComparison(const PerturbedSize& a, const PerturbedSize& b);
};
bool LessEq(const PerturbedSize& a, const PerturbedSize& b);
bool Less(const PerturbedSize& a, const PerturbedSize& b);

// Largest n >= 0 with n * s <= limit (s strictly positive).
int64_t FloorCapacity(const PerturbedSize& s,
                      const PerturbedSize& limit = PerturbedSize(1));

// Closed rational interval [lo, hi].
struct Interval {
  Rational lo;
  Rational hi;

  Rational Width() const { return hi - lo; }
  bool Contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational Mid() const { return (lo + hi) / 2; }
};

// Enclosure of a^(1/n) for a >= 0, width <= tol.
Interval NthRoot(const Rational& a, int n, const Rational& tol);

// Exact a^(1/n) if it is rational, otherwise false.
bool ExactNthRoot(const Rational& a, int n, Rational* root);

}  // namespace binlb

#endif  // BINLB_EXACTNUM_H_
