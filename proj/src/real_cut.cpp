#include "puiseux/real_cut.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace puiseux {

namespace {

// Radicals combine iff at most one side is irrational or both agree.
const Int& merge_radicals(const Int& x, const Int& y) {
  if (x.is_zero()) return y;
  if (y.is_zero() || x == y) return x;
  throw std::domain_error("cannot combine distinct radicals");
}

}  // namespace

// ---- construction ----

RealCut RealCut::quad(Rational a, Rational b, Int c) {
  if (c < 0) throw std::domain_error("negative radicand");
  if (c.is_zero() || b.is_zero()) return RealCut(std::move(a));
  Int k = 1;
  for (Int d = 2; d * d <= c; ++d) {  // pull square factors out of c
    const Int dd = d * d;
    while ((c % dd).is_zero()) {
      c /= dd;
      k *= d;
    }
  }
  if (c == 1) return RealCut(a + b * Rational(k));
  RealCut x;
  x.a_ = std::move(a);
  x.b_ = b * Rational(k);
  x.c_ = std::move(c);
  return x;
}

const Rational& RealCut::rational() const {
  if (!is_rational()) throw std::domain_error("irrational cut used as rational");
  return a_;
}

// ---- sign, floor ----

int RealCut::sign() const {
  if (c_.is_zero() || b_.is_zero()) return a_.sign();
  if (a_.is_zero()) return b_.sign();
  if (a_.sign() == b_.sign()) return a_.sign();
  // Mixed signs: the sign hinges on a^2 versus b^2 c; equality would force
  // sqrt(c) rational, impossible for squarefree c >= 2.
  const Rational d = a_ * a_ - b_ * b_ * Rational(c_);
  if (d.is_zero()) throw std::logic_error("non-squarefree radicand in RealCut");
  return a_.sign() > 0 ? d.sign() : -d.sign();
}

Int RealCut::floor() const {
  if (is_rational()) return a_.floor();
  // |b| sqrt(c) = sqrt(b.num^2 c) / b.den lies in [r/q, (r+1)/q) for the
  // integer square root r, so x sits within 1/q of a rational anchor.
  const Int& q = b_.den();
  const Int r = boost::multiprecision::sqrt(Int(b_.num() * b_.num() * c_));
  const Rational lo = b_.sign() > 0 ? a_ + Rational(r, q) : a_ - Rational(r + 1, q);
  Int n = lo.floor();
  while (RealCut(Rational(n + 1)) <= *this) ++n;  // at most one step
  while (RealCut(Rational(n)) > *this) --n;       // defensive; never taken
  return n;
}

Int RealCut::ceil() const {
  if (is_rational()) return a_.ceil();
  return floor() + 1;  // irrational, so never an integer
}

// ---- field operations ----

RealCut RealCut::operator-() const {
  RealCut r = *this;
  r.a_ = -r.a_;
  r.b_ = -r.b_;
  return r;
}

RealCut& RealCut::operator+=(const RealCut& o) {
  c_ = merge_radicals(c_, o.c_);
  a_ += o.a_;
  b_ += o.b_;
  if (b_.is_zero()) c_ = 0;
  return *this;
}

RealCut& RealCut::operator-=(const RealCut& o) {
  c_ = merge_radicals(c_, o.c_);
  a_ -= o.a_;
  b_ -= o.b_;
  if (b_.is_zero()) c_ = 0;
  return *this;
}

RealCut& RealCut::operator*=(const RealCut& o) {
  const Int c = merge_radicals(c_, o.c_);
  const Rational ra = a_ * o.a_ + b_ * o.b_ * Rational(c);
  const Rational rb = a_ * o.b_ + b_ * o.a_;
  a_ = ra;
  b_ = rb;
  c_ = b_.is_zero() ? Int(0) : c;
  return *this;
}

RealCut& RealCut::operator/=(const RealCut& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (o.is_rational()) {
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  // Multiply by the conjugate; the norm a^2 - b^2 c is a nonzero rational.
  const Rational d = o.a_ * o.a_ - o.b_ * o.b_ * Rational(o.c_);
  RealCut conj;
  conj.a_ = o.a_ / d;
  conj.b_ = -(o.b_ / d);
  conj.c_ = o.c_;
  return *this *= conj;
}

// ---- text form ----

RealCut RealCut::parse(std::string_view sv) {
  std::string s;
  for (const char ch : sv)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  const auto fail = [&]() -> RealCut {
    throw std::invalid_argument("bad cut: '" + std::string(sv) + "'");
  };
  const size_t pos = s.find("sqrt(");
  if (pos == std::string::npos) return RealCut(Rational::parse(s));
  if (s.empty() || s.back() != ')') return fail();
  const std::string inner = s.substr(pos + 5, s.size() - pos - 6);
  if (inner.empty()) return fail();
  Int c;
  try {
    c = Int(inner);
  } catch (const std::exception&) {
    return fail();
  }
  std::string prefix = s.substr(0, pos);
  Rational a = 0, b = 1;
  if (!prefix.empty()) {
    if (prefix.back() == '*') {
      prefix.pop_back();
      // "[a(+|-)]b*": any sign past index 0 separates a from b.
      size_t split = std::string::npos;
      for (size_t i = prefix.size(); i-- > 1;)
        if (prefix[i] == '+' || prefix[i] == '-') {
          split = i;
          break;
        }
      if (split == std::string::npos) {
        b = Rational::parse(prefix);
      } else {
        a = Rational::parse(prefix.substr(0, split));
        b = Rational::parse(prefix.substr(split));  // keeps the sign
      }
    } else {
      // "[a](+|-)sqrt(c)" with unit coefficient.
      const char sg = prefix.back();
      if (sg != '+' && sg != '-') return fail();
      b = sg == '-' ? -1 : 1;
      const std::string as = prefix.substr(0, prefix.size() - 1);
      if (!as.empty()) a = Rational::parse(as);
    }
  }
  return quad(std::move(a), std::move(b), std::move(c));
}

std::string RealCut::str() const {
  if (is_rational()) return a_.str();
  const std::string root = "sqrt(" + c_.str() + ")";
  const Rational babs = b_.abs();
  const std::string bpart = babs == Rational(1) ? root : babs.str() + "*" + root;
  if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + bpart;
  return a_.str() + (b_.sign() < 0 ? "-" : "+") + bpart;
}

Int floor_mul(const Rational& t, const RealCut& x) { return (RealCut(t) * x).floor(); }

std::ostream& operator<<(std::ostream& os, const RealCut& x) { return os << x.str(); }

}  // namespace puiseux
