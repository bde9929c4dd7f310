#pragma once

// Exact arbitrary-precision rational arithmetic.
// Canonical form everywhere: den > 0, gcd(num, den) = 1, zero stored as 0/1.
// No floating point is used anywhere in this library.

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace puiseux {

// Expression templates are switched off so that every integer expression has
// type Int; the sizes handled here make the performance difference moot.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

// ---- integer set helpers ----

// gcd of all entries; always nonnegative.  Throws std::invalid_argument on an
// empty list.
Int gcd_set(const std::vector<Int>& xs);

// lcm of all entries; entries must be nonzero.  Throws std::invalid_argument
// on an empty list.
Int lcm_set(const std::vector<Int>& xs);

// ---- Rational ----

class Rational {
 public:
  Rational() = default;
  Rational(long long n) : num_(n) {}       // integers embed implicitly
  Rational(Int n) : num_(std::move(n)) {}  // so do big integers
  Rational(Int num, Int den);              // throws std::domain_error on den == 0

  // Accepts "p" and "p/q" with an optional leading sign on p; throws
  // std::invalid_argument on anything else, std::domain_error on q == 0.
  static Rational parse(std::string_view s);

  const Int& num() const { return num_; }
  const Int& den() const { return den_; }

  int sign() const { return num_.sign(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const { return den_ == 1; }

  Int floor() const;
  Int ceil() const;
  Rational abs() const { return num_ < 0 ? Rational(-num_, den_) : *this; }
  Rational inv() const;  // throws std::domain_error on zero

  std::string str() const;  // "p" or "p/q"; parse(str()) round-trips

  Rational operator-() const { return num_.is_zero() ? *this : Rational(-num_, den_); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws std::domain_error on zero divisor

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  // Canonical form makes member-wise equality value-correct.
  friend bool operator==(const Rational& a, const Rational& b) = default;

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa <=> sb;
    if (a.den_ == b.den_) {
      if (a.num_ < b.num_) return std::strong_ordering::less;
      if (b.num_ < a.num_) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    const Int lhs = a.num_ * b.den_;
    const Int rhs = b.num_ * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (rhs < lhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void normalize();

  Int num_ = 0;
  Int den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace puiseux
