#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "puiseux/rational.hpp"
#include "puiseux/real_cut.hpp"

#include <doctest.h>

#include <random>
#include <stdexcept>

using namespace puiseux;

// ---- Rational ----

TEST_CASE("rational canonical form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(1, -2) == Rational(-1, 2));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(0, 7).den() == 1);
  CHECK(Rational(0, 7).is_zero());
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
  CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
  CHECK(Rational(3, 4) / Rational(9, 2) == Rational(1, 6));
  CHECK(Rational(2, 3).inv() == Rational(3, 2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(-5, 7).abs() == Rational(5, 7));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
  CHECK_THROWS_AS(Rational(0).inv(), std::domain_error);
}

TEST_CASE("rational floor and ceil") {
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(6).floor() == 6);
  CHECK(Rational(6).ceil() == 6);
  CHECK(Rational(0).floor() == 0);
}

TEST_CASE("rational ordering") {
  CHECK(Rational(7, 5) < Rational(3, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(22, 7) > Rational(3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(1, 3) != Rational(1, 4));
}

TEST_CASE("rational parse and print") {
  CHECK(Rational::parse("22/7") == Rational(22, 7));
  CHECK(Rational::parse("-3/6") == Rational(-1, 2));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("+5") == Rational(5));
  CHECK(Rational(22, 7).str() == "22/7");
  CHECK(Rational(-1, 2).str() == "-1/2");
  CHECK(Rational(5).str() == "5");
  for (const char* bad : {"", "1/", "/2", "1//2", "a", "1/-2", "3.5", "1 / 2", "-", "2x"})
    CHECK_THROWS_AS(Rational::parse(bad), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1/0"), std::domain_error);
}

TEST_CASE("gcd and lcm over sets") {
  CHECK(gcd_set({Int(12), Int(18), Int(30)}) == 6);
  CHECK(gcd_set({Int(4), Int(6), Int(10)}) == 2);
  CHECK(lcm_set({Int(4), Int(6), Int(10)}) == 60);
  CHECK(lcm_set({Int(2), Int(3)}) == 6);
  CHECK(gcd_set({Int(7)}) == 7);
  CHECK(lcm_set({Int(1)}) == 1);
  CHECK_THROWS_AS(gcd_set({}), std::invalid_argument);
  CHECK_THROWS_AS(lcm_set({}), std::invalid_argument);
}

TEST_CASE("rational properties on random samples") {
  std::mt19937 rng(990331u);
  std::uniform_int_distribution<int> num(-60, 60);
  std::uniform_int_distribution<int> den(1, 30);
  const auto rnd = [&] { return Rational(num(rng), den(rng)); };
  for (int i = 0; i < 500; ++i) {
    const Rational a = rnd(), b = rnd(), c = rnd();
    CHECK(a.den() > 0);
    CHECK(boost::multiprecision::gcd(a.num(), a.den()) == 1);
    CHECK(a + b - b == a);
    if (!b.is_zero()) CHECK(a * b / b == a);
    CHECK(Rational(a.floor()) <= a);
    CHECK(a < Rational(a.floor() + 1));
    CHECK(Rational(a.ceil()) >= a);
    if (a < b && b < c) CHECK(a < c);
    CHECK(static_cast<int>(a < b) + static_cast<int>(a == b) + static_cast<int>(b < a) == 1);
    CHECK(Rational::parse(a.str()) == a);
  }
}

// ---- RealCut ----

TEST_CASE("cut normalization") {
  CHECK(RealCut::quad(0, 1, 8) == RealCut::quad(0, 2, 2));
  CHECK(RealCut::quad(0, 1, 12) == RealCut::quad(0, 2, 3));
  CHECK(RealCut::quad(0, 1, 4).is_rational());
  CHECK(RealCut::quad(0, 1, 4).rational() == Rational(2));
  CHECK(RealCut::quad(1, 1, 1) == RealCut(Rational(2)));
  CHECK(RealCut::quad(3, 0, 7) == RealCut(Rational(3)));
  CHECK(RealCut::quad(0, 1, 0) == RealCut());
  CHECK_THROWS_AS(RealCut::quad(0, 1, -2), std::domain_error);
  CHECK_THROWS_AS(RealCut::quad(0, 1, 2).rational(), std::domain_error);
}

TEST_CASE("cut signs and comparisons are exact") {
  const RealCut rt2 = RealCut::quad(0, 1, 2);
  CHECK(RealCut(Rational(7, 5)) < rt2);
  CHECK(rt2 < RealCut(Rational(3, 2)));
  CHECK(RealCut(Rational(141421356, 100000000)) < rt2);
  CHECK(rt2 < RealCut(Rational(141421357, 100000000)));
  CHECK(RealCut::quad(3, -2, 2).sign() == 1);   // 3 - 2*sqrt(2)
  CHECK(RealCut::quad(2, -3, 2).sign() == -1);  // 2 - 3*sqrt(2)
  CHECK(RealCut::quad(-3, 2, 2).sign() == -1);  // 2*sqrt(2) - 3
  CHECK(RealCut::quad(-2, 2, 2).sign() == 1);   // 2*sqrt(2) - 2
  CHECK(RealCut().sign() == 0);
  CHECK(RealCut::quad(0, 1, 2) != RealCut::quad(0, 1, 3));
  CHECK_THROWS_AS((void)(RealCut::quad(0, 1, 2) < RealCut::quad(0, 1, 3)), std::domain_error);
}

TEST_CASE("cut field arithmetic") {
  const RealCut x = RealCut::quad(1, 1, 2);  // 1 + sqrt(2)
  CHECK(x * x == RealCut::quad(3, 2, 2));
  CHECK(x * RealCut::quad(1, -1, 2) == RealCut(Rational(-1)));  // conjugates collapse
  CHECK(RealCut(Rational(1)) / x == RealCut::quad(-1, 1, 2));
  CHECK(x - x == RealCut());
  CHECK(x + x == RealCut::quad(2, 2, 2));
  CHECK(x + RealCut(Rational(1, 2)) == RealCut::quad(Rational(3, 2), 1, 2));
  CHECK(x / x == RealCut(Rational(1)));
  CHECK(x * RealCut(Rational(2, 3)) == RealCut::quad(Rational(2, 3), Rational(2, 3), 2));
  CHECK_THROWS_AS(x + RealCut::quad(0, 1, 3), std::domain_error);
  CHECK_THROWS_AS(x / RealCut(), std::domain_error);
}

TEST_CASE("cut floors") {
  const RealCut rt2 = RealCut::quad(0, 1, 2);
  CHECK(rt2.floor() == 1);
  CHECK(rt2.ceil() == 2);
  CHECK(RealCut::quad(1, 1, 2).floor() == 2);
  CHECK(RealCut::quad(0, 10, 2).floor() == 14);  // 14.14...
  CHECK(RealCut::quad(-1, 1, 2).floor() == 0);   // 0.41...
  CHECK(RealCut::quad(0, -1, 2).floor() == -2);  // -1.41...
  CHECK(RealCut(Rational(-7, 2)).floor() == -4);
  CHECK(RealCut(Rational(3)).ceil() == 3);
  CHECK(floor_mul(Rational(5), RealCut::quad(-1, 1, 2)) == 2);  // 5*(sqrt(2)-1) = 2.07...
  CHECK(floor_mul(Rational(1, 2), RealCut::quad(0, 1, 2)) == 0);
}

TEST_CASE("cut parse and print") {
  CHECK(RealCut::parse("1+sqrt(2)") == RealCut::quad(1, 1, 2));
  CHECK(RealCut::parse("3/2-1/2*sqrt(5)") == RealCut::quad(Rational(3, 2), Rational(-1, 2), 5));
  CHECK(RealCut::parse("sqrt(8)") == RealCut::quad(0, 2, 2));
  CHECK(RealCut::parse("-sqrt(2)") == RealCut::quad(0, -1, 2));
  CHECK(RealCut::parse("7/5") == RealCut(Rational(7, 5)));
  CHECK(RealCut::parse("1 + sqrt(2)") == RealCut::quad(1, 1, 2));
  CHECK(RealCut::parse("-3/2*sqrt(5)") == RealCut::quad(0, Rational(-3, 2), 5));
  CHECK(RealCut::quad(1, 1, 2).str() == "1+sqrt(2)");
  CHECK(RealCut::quad(0, -1, 2).str() == "-sqrt(2)");
  CHECK(RealCut::quad(0, 2, 3).str() == "2*sqrt(3)");
  CHECK(RealCut::quad(Rational(3, 2), Rational(-1, 2), 5).str() == "3/2-1/2*sqrt(5)");
  CHECK(RealCut(Rational(7, 5)).str() == "7/5");
  for (const char* bad : {"", "sqrt()", "sqrt(2", "2sqrt(2)", "sqrt(2)+1", "1+2*sqrt(x)"})
    CHECK_THROWS_AS(RealCut::parse(bad), std::invalid_argument);
  CHECK_THROWS_AS(RealCut::parse("sqrt(-4)"), std::domain_error);
}

TEST_CASE("cut properties on random samples") {
  std::mt19937 rng(550117u);
  std::uniform_int_distribution<int> num(-40, 40);
  std::uniform_int_distribution<int> den(1, 12);
  const int radicands[] = {2, 3, 5, 7, 10};
  std::uniform_int_distribution<int> ci(0, 4);
  const auto rnd = [&] { return Rational(num(rng), den(rng)); };
  for (int i = 0; i < 400; ++i) {
    const Int c = radicands[ci(rng)];
    const RealCut x = RealCut::quad(rnd(), rnd(), c);
    const RealCut y = RealCut::quad(rnd(), rnd(), c);
    const Int n = x.floor();
    CHECK(RealCut(Rational(n)) <= x);
    CHECK(x < RealCut(Rational(n + 1)));
    CHECK(RealCut::parse(x.str()) == x);
    CHECK(x + y - y == x);
    if (!y.is_zero()) CHECK(x * y / y == x);
    CHECK((x * y).sign() == x.sign() * y.sign());
  }
}
