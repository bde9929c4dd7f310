#pragma once

// Exact arithmetic in a real quadratic field: values a + b*sqrt(c) with
// a, b rational and c a squarefree integer >= 2, or plain rationals (encoded
// as c = 0, b = 0).  Signs, comparisons and floors are exact.
//
// Operations never mix distinct radicals: combining sqrt(2) with sqrt(3)
// throws std::domain_error.  Rationals combine with everything.

#include "puiseux/rational.hpp"

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace puiseux {

class RealCut {
 public:
  RealCut() = default;                                  // zero
  RealCut(long long n) : a_(n) {}                       // integers embed implicitly
  RealCut(Rational r) : a_(std::move(r)) {}             // so do rationals

  // a + b*sqrt(c) for any c >= 0.  Square factors of c are folded into b, so
  // the stored radicand is squarefree; c = 1, c = 0 and b = 0 collapse to a
  // plain rational.  Throws std::domain_error on c < 0.  The square-part
  // extraction is trial division, intended for modest radicands.
  static RealCut quad(Rational a, Rational b, Int c);

  // Accepts "p/q" or "[a(+|-)][b*]sqrt(c)", e.g. "1+sqrt(2)", "-3/2*sqrt(5)",
  // "sqrt(8)".  Whitespace is ignored.  Throws std::invalid_argument.
  static RealCut parse(std::string_view s);

  bool is_rational() const { return c_.is_zero(); }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Int& c() const { return c_; }
  const Rational& rational() const;  // throws std::domain_error if irrational

  int sign() const;
  bool is_zero() const { return c_.is_zero() && a_.is_zero(); }
  Int floor() const;
  Int ceil() const;

  std::string str() const;  // e.g. "3/2-1/2*sqrt(5)"; parse(str()) round-trips

  RealCut operator-() const;
  RealCut& operator+=(const RealCut& o);
  RealCut& operator-=(const RealCut& o);
  RealCut& operator*=(const RealCut& o);
  RealCut& operator/=(const RealCut& o);  // throws std::domain_error on zero divisor

  friend RealCut operator+(RealCut x, const RealCut& y) { return x += y; }
  friend RealCut operator-(RealCut x, const RealCut& y) { return x -= y; }
  friend RealCut operator*(RealCut x, const RealCut& y) { return x *= y; }
  friend RealCut operator/(RealCut x, const RealCut& y) { return x /= y; }

  // Canonical form makes member-wise equality value-correct even across
  // distinct radicals (a + b*sqrt(c) with squarefree c determines a, b, c).
  friend bool operator==(const RealCut& x, const RealCut& y) = default;

  // Throws std::domain_error when both sides are irrational with distinct
  // radicals; the operations in this library never need that comparison.
  friend std::strong_ordering operator<=>(const RealCut& x, const RealCut& y) {
    return (x - y).sign() <=> 0;
  }

 private:
  Rational a_;
  Rational b_;
  Int c_ = 0;  // 0 encodes "rational"; otherwise squarefree >= 2 and b_ != 0
};

// floor(t * x), exactly.
Int floor_mul(const Rational& t, const RealCut& x);

// ceil(t * x), exactly.
inline Int ceil_mul(const Rational& t, const RealCut& x) {
  return -floor_mul(-t, x);
}

std::ostream& operator<<(std::ostream& os, const RealCut& x);

}  // namespace puiseux
