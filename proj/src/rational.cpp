#include "puiseux/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace puiseux {

// ---- integer set helpers ----

Int gcd_set(const std::vector<Int>& xs) {
  if (xs.empty()) throw std::invalid_argument("gcd_set: empty list");
  Int g = 0;
  for (const Int& x : xs) g = boost::multiprecision::gcd(g, x);
  return g;
}

Int lcm_set(const std::vector<Int>& xs) {
  if (xs.empty()) throw std::invalid_argument("lcm_set: empty list");
  Int l = 1;
  for (const Int& x : xs) l = boost::multiprecision::lcm(l, x);
  return l;
}

// ---- Rational ----

Rational::Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  const Int g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  num_ = num_ * o.den_ - o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

Rational Rational::inv() const {
  if (is_zero()) throw std::domain_error("division by zero");
  return Rational(den_, num_);
}

Int Rational::floor() const {
  Int q = num_ / den_;  // truncates toward zero
  if (num_ < 0 && q * den_ != num_) --q;
  return q;
}

Int Rational::ceil() const {
  Int q = num_ / den_;
  if (num_ > 0 && q * den_ != num_) ++q;
  return q;
}

Rational Rational::parse(std::string_view s) {
  const auto fail = [&]() -> Rational {
    throw std::invalid_argument("bad rational: '" + std::string(s) + "'");
  };
  size_t i = 0;
  const auto scan_int = [&](bool allow_sign) -> Int {
    const size_t start = i;
    if (allow_sign && i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    const size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) fail();
    std::string t(s.substr(start, i - start));
    if (t[0] == '+') t.erase(0, 1);  // cpp_int rejects an explicit plus
    return Int(t);
  };
  const Int num = scan_int(true);
  Int den = 1;
  if (i < s.size() && s[i] == '/') {
    ++i;
    den = scan_int(false);
  }
  if (i != s.size()) fail();
  return Rational(num, den);
}

std::string Rational::str() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace puiseux
