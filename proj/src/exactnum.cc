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

#include "binlb/exactnum.h"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace binlb {
namespace {

std::string Trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool IsIntegerToken(const std::string& s) {
  size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

int Sign(const Rational& r) { return sgn(r); }

}  // namespace

Rational ParseRational(const std::string& text) {
  const std::string t = Trim(text);
  const size_t slash = t.find('/');
  std::string num = slash == std::string::npos ? t : Trim(t.substr(0, slash));
  std::string den = slash == std::string::npos ? "1" : Trim(t.substr(slash + 1));
  if (!num.empty() && num[0] == '+') num = num.substr(1);
  if (!IsIntegerToken(num) || !IsIntegerToken(den) || den[0] == '-' ||
      den[0] == '+') {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  Integer n(num, 10);
  Integer d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string ToString(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational Divide(const Rational& a, const Rational& b) {
  if (b == 0) throw std::domain_error("division by zero");
  return a / b;
}

Integer FloorDiv(const Rational& a, const Rational& b) {
  if (b <= 0) throw std::domain_error("FloorDiv requires a positive divisor");
  const Rational q = a / b;
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::string ToDecimal(const Rational& r, int digits) {
  if (digits < 0) digits = 0;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  const Rational scaled = abs(r) * scale;
  // Round half away from zero: floor(2*v + 1) / 2 on the magnitude.
  Integer twice_num = 2 * scaled.get_num() + scaled.get_den();
  Integer twice_den = 2 * scaled.get_den();
  Integer rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
  std::string s = rounded.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) {
      s = std::string(digits + 1 - s.size(), '0') + s;
    }
    s.insert(s.size() - digits, ".");
  }
  if (r < 0 && rounded != 0) s = "-" + s;
  return s;
}

Rational FromDouble(double value) { return Rational(value); }

Rational Pow(const Rational& base, int exponent) {
  if (exponent < 0) return Divide(1, Pow(base, -exponent));
  Rational out = 1;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

const char* OrderingName(Ordering o) {
  switch (o) {
    case Ordering::kLess:
      return "Less";
    case Ordering::kEqual:
      return "Equal";
    case Ordering::kGreater:
      return "Greater";
    case Ordering::kAmbiguous:
      return "Ambiguous";
  }
  return "?";
}

PerturbedSize::PerturbedSize(Rational base, Rational eps, Rational del)
    : base_(std::move(base)), eps_(std::move(eps)), del_(std::move(del)) {}

PerturbedSize PerturbedSize::operator+(const PerturbedSize& o) const {
  return PerturbedSize(base_ + o.base_, eps_ + o.eps_, del_ + o.del_);
}

PerturbedSize PerturbedSize::operator-(const PerturbedSize& o) const {
  return PerturbedSize(base_ - o.base_, eps_ - o.eps_, del_ - o.del_);
}

PerturbedSize PerturbedSize::operator-() const {
  return PerturbedSize(-base_, -eps_, -del_);
}

PerturbedSize PerturbedSize::operator*(const Rational& k) const {
  return PerturbedSize(base_ * k, eps_ * k, del_ * k);
}

PerturbedSize& PerturbedSize::operator+=(const PerturbedSize& o) {
  base_ += o.base_;
  eps_ += o.eps_;
  del_ += o.del_;
  return *this;
}

bool PerturbedSize::operator==(const PerturbedSize& o) const {
  return base_ == o.base_ && eps_ == o.eps_ && del_ == o.del_;
}

std::string PerturbedSize::ToString() const {
  std::string out = binlb::ToString(base_);
  auto term = [&out](const Rational& c, const char* sym) {
    if (c == 0) return;
    out += c < 0 ? " - (" : " + (";
    out += binlb::ToString(abs(c));
    out += ")";
    out += sym;
  };
  term(eps_, "e");
  term(del_, "d");
  return out;
}

PerturbedSize operator*(const Rational& k, const PerturbedSize& s) {
  return s * k;
}

std::ostream& operator<<(std::ostream& os, const PerturbedSize& s) {
  return os << s.ToString();
}

PerturbedSize ParsePerturbedSize(const std::string& text) {
  const std::string t = Trim(text);
  if (t.empty()) throw std::invalid_argument("empty perturbed size");
  Rational parts[3];  // base, e, d
  size_t i = 0;
  bool first = true;
  while (i < t.size()) {
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    if (i >= t.size()) break;
    int sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      sign = t[i] == '-' ? -1 : 1;
      ++i;
      while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) {
        ++i;
      }
    } else if (!first) {
      throw std::invalid_argument("expected '+' or '-' in '" + text + "'");
    }
    Rational coeff = 1;
    bool have_coeff = false;
    if (i < t.size() && t[i] == '(') {
      const size_t close = t.find(')', i);
      if (close == std::string::npos) {
        throw std::invalid_argument("unbalanced parenthesis in '" + text + "'");
      }
      coeff = ParseRational(t.substr(i + 1, close - i - 1));
      have_coeff = true;
      i = close + 1;
    } else {
      size_t j = i;
      while (j < t.size() &&
             (std::isdigit(static_cast<unsigned char>(t[j])) || t[j] == '/')) {
        ++j;
      }
      if (j > i) {
        coeff = ParseRational(t.substr(i, j - i));
        have_coeff = true;
        i = j;
      }
    }
    while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i]))) ++i;
    int slot = 0;
    if (i < t.size() && (t[i] == 'e' || t[i] == 'd')) {
      slot = t[i] == 'e' ? 1 : 2;
      ++i;
    } else if (!have_coeff) {
      throw std::invalid_argument("malformed term in '" + text + "'");
    }
    parts[slot] += sign * coeff;
    first = false;
  }
  return PerturbedSize(parts[0], parts[1], parts[2]);
}

Ordering LexCompare(const PerturbedSize& a, const PerturbedSize& b) {
  const int base = Sign(a.base() - b.base());
  if (base < 0) return Ordering::kLess;
  if (base > 0) return Ordering::kGreater;
  const int e = Sign(a.eps() - b.eps());
  const int d = Sign(a.del() - b.del());
  if (e == 0 && d == 0) return Ordering::kEqual;
  if (e != 0 && d != 0 && e != d) return Ordering::kAmbiguous;
  return (e + d) < 0 ? Ordering::kLess : Ordering::kGreater;
}

AmbiguousComparison::AmbiguousComparison(const PerturbedSize& a,
                                         const PerturbedSize& b)
    : std::runtime_error("ambiguous comparison between " + a.ToString() +
                         " and " + b.ToString()) {}

bool LessEq(const PerturbedSize& a, const PerturbedSize& b) {
  const Ordering o = LexCompare(a, b);
  if (o == Ordering::kAmbiguous) throw AmbiguousComparison(a, b);
  return o != Ordering::kGreater;
}

bool Less(const PerturbedSize& a, const PerturbedSize& b) {
  const Ordering o = LexCompare(a, b);
  if (o == Ordering::kAmbiguous) throw AmbiguousComparison(a, b);
  return o == Ordering::kLess;
}

int64_t FloorCapacity(const PerturbedSize& s, const PerturbedSize& limit) {
  if (!Less(PerturbedSize(0), s)) {
    throw std::domain_error("FloorCapacity requires a positive size");
  }
  // Start from the base quotient and correct by at most one step each way.
  int64_t n = 0;
  if (s.base() > 0) {
    n = FloorDiv(limit.base(), s.base()).get_si();
    if (n < 0) n = 0;
  } else {
    throw std::domain_error("FloorCapacity of an infinitesimal size");
  }
  while (n > 0 && !LessEq(s * Rational(n), limit)) --n;
  while (LessEq(s * Rational(n + 1), limit)) ++n;
  return n;
}

bool ExactNthRoot(const Rational& a, int n, Rational* root) {
  if (a < 0 || n < 1) return false;
  Integer rn, rd;
  if (mpz_root(rn.get_mpz_t(), a.get_num_mpz_t(), n) == 0) return false;
  if (mpz_root(rd.get_mpz_t(), a.get_den_mpz_t(), n) == 0) return false;
  *root = Rational(rn, rd);
  root->canonicalize();
  return true;
}

Interval NthRoot(const Rational& a, int n, const Rational& tol) {
  if (a < 0) throw std::domain_error("NthRoot of a negative number");
  if (n < 1) throw std::domain_error("NthRoot requires n >= 1");
  Rational exact;
  if (ExactNthRoot(a, n, &exact)) return {exact, exact};
  Rational lo = 0;
  Rational hi = a > 1 ? a : Rational(1);
  // Seed the bracket with a double estimate to save bisection steps.
  const double guess = std::pow(a.get_d(), 1.0 / n);
  if (std::isfinite(guess) && guess > 0) {
    const Rational g(guess);
    const Rational pad = g / 1000000 + tol;
    const Rational glo = g - pad > 0 ? g - pad : Rational(0);
    const Rational ghi = g + pad;
    if (Pow(glo, n) <= a && Pow(ghi, n) >= a) {
      lo = glo;
      hi = ghi;
    }
  }
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (Pow(mid, n) <= a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace binlb
