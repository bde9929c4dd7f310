#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "puiseux/factorize.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

using namespace puiseux;

namespace {

Rational Q(long long n, long long d = 1) { return Rational(n, d); }

Monoid fg(std::vector<Rational> gens) {
  return Monoid(FinitelyGenerated{std::move(gens)});
}

Monoid lattice(SequenceRule alphas, SequenceRule bs) {
  return Monoid(LatticeUnion{std::move(alphas), std::move(bs)});
}

const RealCut kSilver = RealCut::quad(Q(1), Q(1), 2);  // 1 + sqrt(2)

std::vector<Int> ints(std::initializer_list<long long> xs) {
  std::vector<Int> out;
  for (long long x : xs) out.push_back(Int(x));
  return out;
}

Factorization zf(std::initializer_list<std::pair<Rational, long long>> ts) {
  Factorization z;
  for (const auto& [a, c] : ts) z.terms[a] = Int(c);
  return z;
}

bool has_len(const CertifiedSet<Int>& ls, long long n) {
  return std::binary_search(ls.items.begin(), ls.items.end(), Int(n));
}

// a random rational strictly inside (lo, hi); both endpoints are irrational
// in every use, so open/closed does not matter
std::optional<Rational> rational_in(const RealCut& lo, const RealCut& hi,
                                    std::mt19937& rng) {
  std::uniform_int_distribution<long long> dd(2, 48);
  for (int tries = 0; tries < 64; ++tries) {
    long long d = dd(rng);
    Int n_lo = floor_mul(Q(d), lo) + 1;
    Int n_hi = floor_mul(Q(d), hi);
    if (n_lo > n_hi) continue;
    std::uniform_int_distribution<long long> dn(n_lo.convert_to<long long>(),
                                                n_hi.convert_to<long long>());
    return Rational(dn(rng), d);
  }
  return std::nullopt;
}

// Independent re-derivation of "some decomposition of x has length ell":
// scan k + m = ell and test the defining interval conditions directly.
bool admits_length(const RealCut& alpha, const Rational& x, const Int& ell) {
  RealCut xc{x};
  for (Int k = 0; k <= ell; ++k) {
    Rational rest = x - Rational(ell - k);
    if (rest.sign() < 0) continue;
    if (k == 0) {
      if (rest.is_zero()) return true;
      continue;
    }
    RealCut rc{rest};
    if (k == 1) {
      if (!rest.is_integer() && rc > alpha && rc <= alpha + RealCut(1))
        return true;
      continue;
    }
    RealCut kk{Rational(k)};
    if (kk * alpha < rc && rc < kk * (alpha + RealCut(1))) return true;
  }
  return false;
}

}  // namespace

// ---- factorization values, lengths, ordering ----

TEST_CASE("factorization length, value and ordering") {
  Factorization z = zf({{Q(2), 3}, {Q(3), 2}});
  CHECK(z.length() == 5);
  CHECK(z.value() == Q(12));
  CHECK(Factorization{}.length() == 0);
  CHECK(Factorization{}.value() == Q(0));

  CHECK(factorization_less(zf({{Q(3), 2}}), zf({{Q(2), 3}})));   // shorter first
  CHECK_FALSE(factorization_less(zf({{Q(2), 3}}), zf({{Q(3), 2}})));
  CHECK(factorization_less(zf({{Q(2), 1}, {Q(3), 1}}), zf({{Q(2), 2}})));
  CHECK_FALSE(factorization_less(zf({{Q(2), 2}}), zf({{Q(2), 2}})));
}

// ---- Z(x) on small numerical monoids ----

TEST_CASE("factorizations over <2,3>") {
  Monoid m = fg({Q(2), Q(3)});

  auto z6 = factorizations(m, Q(6));
  CHECK(z6.exact());
  REQUIRE(z6.items.size() == 2);
  CHECK(z6.items[0] == zf({{Q(3), 2}}));
  CHECK(z6.items[1] == zf({{Q(2), 3}}));

  auto z2 = factorizations(m, Q(2));
  CHECK(z2.exact());
  REQUIRE(z2.items.size() == 1);
  CHECK(z2.items[0] == zf({{Q(2), 1}}));

  auto z12 = factorizations(m, Q(12));
  CHECK(z12.exact());
  REQUIRE(z12.items.size() == 3);
  CHECK(z12.items[0] == zf({{Q(3), 4}}));
  CHECK(z12.items[1] == zf({{Q(2), 3}, {Q(3), 2}}));
  CHECK(z12.items[2] == zf({{Q(2), 6}}));

  auto z0 = factorizations(m, Q(0));
  CHECK(z0.exact());
  REQUIRE(z0.items.size() == 1);
  CHECK(z0.items[0].terms.empty());
}

TEST_CASE("factorizations match an exhaustive coefficient search") {
  Monoid m = fg({Q(4), Q(6), Q(7)});
  for (long long x : {12, 14, 18, 24, 25, 33, 40}) {
    auto z = factorizations(m, Q(x));
    CHECK(z.exact());
    std::set<std::vector<long long>> got;
    for (const Factorization& f : z.items) {
      std::vector<long long> v(3, 0);
      for (const auto& [a, c] : f.terms)
        v[a == Q(4) ? 0 : a == Q(6) ? 1 : 2] = c.convert_to<long long>();
      got.insert(v);
    }
    std::set<std::vector<long long>> want;
    for (long long a = 0; 4 * a <= x; ++a)
      for (long long b = 0; 4 * a + 6 * b <= x; ++b)
        for (long long c = 0; 4 * a + 6 * b + 7 * c <= x; ++c)
          if (4 * a + 6 * b + 7 * c == x) want.insert({a, b, c});
    CHECK(got == want);
  }
}

// ---- Z(x) for geometric powers ----

TEST_CASE("geometric powers factor 15/4 uniquely") {
  Monoid m{MonoidSpec{GeometricPowers{Q(3, 2)}}};
  auto z = factorizations(m, Q(15, 4));
  CHECK(z.exact());
  REQUIRE(z.items.size() == 1);
  CHECK(z.items[0] == zf({{Q(3, 2), 1}, {Q(9, 4), 1}}));
}

TEST_CASE("geometric powers are not free at integer values") {
  // the trade 2*(3/2) = 3*1 makes Z(3) a two-element set
  Monoid m{MonoidSpec{GeometricPowers{Q(3, 2)}}};
  auto z3 = factorizations(m, Q(3));
  CHECK(z3.exact());
  REQUIRE(z3.items.size() == 2);
  CHECK(z3.items[0] == zf({{Q(3, 2), 2}}));
  CHECK(z3.items[1] == zf({{Q(1), 3}}));
  CHECK(catenary(m, Q(3)).value == 3);

  auto z = factorizations(m, Q(21, 4));
  CHECK(z.exact());
  REQUIRE(z.items.size() == 2);
  CHECK(z.items[0] == zf({{Q(3, 2), 2}, {Q(9, 4), 1}}));
  CHECK(z.items[1] == zf({{Q(1), 3}, {Q(9, 4), 1}}));
}

// ---- length sets ----

TEST_CASE("length sets of numerical monoids") {
  CHECK(lengths(fg({Q(2), Q(3)}), Q(6)).items == ints({2, 3}));
  CHECK(lengths(fg({Q(2), Q(3)}), Q(6)).exact());
  CHECK(lengths(fg({Q(2), Q(3)}), Q(0)).items == ints({0}));
  CHECK(lengths(fg({Q(6), Q(9), Q(20)}), Q(60)).items == ints({3, 7, 8, 9, 10}));
}

TEST_CASE("length sets on the two-rule lattice family") {
  Monoid m = lattice(SequenceRule::thm312(), SequenceRule::pow2());
  auto l2 = lengths(m, Q(2));
  CHECK(l2.exact());
  CHECK(l2.items == ints({4}));
  auto l4 = lengths(m, Q(4));
  CHECK(l4.exact());
  CHECK(l4.items == ints({3, 8}));
  auto l6 = lengths(m, Q(6));
  CHECK(l6.exact());
  CHECK(has_len(l6, 2));  // 23/8 + 25/8
}

TEST_CASE("threshold solver reproduces frozen length sets") {
  Monoid m{MonoidSpec{IrrationalThreshold{kSilver}}};
  CHECK(lengths(m, Q(10)).items == ints({3, 4, 5, 6, 7, 10}));
  CHECK(lengths(m, Q(10)).exact());
  CHECK(lengths(m, Q(121, 25)).items == ints({2, 3}));
  CHECK(lengths(m, Q(49, 10)).items == ints({2, 3}));
  CHECK(lengths(m, Q(3)).items == ints({3}));
  CHECK(lengths(m, Q(1)).items == ints({1}));
  CHECK(lengths(m, Q(0)).items == ints({0}));
}

TEST_CASE("threshold lengths admit defining decompositions and witnesses") {
  Monoid m{MonoidSpec{IrrationalThreshold{kSilver}}};
  for (const Rational& x :
       {Q(10), Q(121, 25), Q(49, 10), Q(7), Q(26, 3), Q(15, 2)}) {
    auto ls = lengths(m, x);
    Int cap = x.floor() + 1;  // every atom is > 1 except the unit step
    for (const Int& ell : ls.items) CHECK(admits_length(kSilver, x, ell));
    for (Int ell = 0; ell <= cap; ++ell)
      CHECK(admits_length(kSilver, x, ell) == has_len(ls, ell.convert_to<long long>()));
  }

  // explicit witnesses for x = 10: 3*(10/3) and 5 + 2*(5/2)
  CHECK(m.is_atom(Q(10, 3)));
  CHECK(Q(10, 3) * Q(3) == Q(10));
  CHECK(m.is_atom(Q(5, 2)));
  CHECK(Q(5) + Q(5, 2) * Q(2) == Q(10));
  // and for x = 121/25: 2*(121/50), the length-2 decomposition
  CHECK(m.is_atom(Q(121, 50)));
  CHECK(Q(121, 50) * Q(2) == Q(121, 25));
}

TEST_CASE("threshold solver agrees with random valid constructions") {
  Monoid m{MonoidSpec{IrrationalThreshold{kSilver}}};
  std::mt19937 rng(20260815u);
  std::uniform_int_distribution<int> dk(0, 6);
  std::uniform_int_distribution<long long> dm(0, 8);
  int done = 0;
  for (int iter = 0; iter < 10000; ++iter) {
    int k = dk(rng);
    long long mm = dm(rng);
    Rational x;
    if (k == 0) {
      x = Q(mm);
    } else if (k == 1) {
      auto q = rational_in(kSilver, kSilver + RealCut(1), rng);
      if (!q || q->is_integer()) continue;
      x = Q(mm) + *q;
    } else {
      RealCut kk{Rational(Int(k))};
      auto s = rational_in(kk * kSilver, kk * (kSilver + RealCut(1)), rng);
      if (!s) continue;
      x = Q(mm) + *s;
    }
    REQUIRE(m.member(x));
    CHECK(has_len(lengths(m, x), k + mm));
    ++done;
  }
  CHECK(done > 9000);
}

// ---- distance ----

TEST_CASE("distance strips the greatest common part") {
  Factorization a = zf({{Q(2), 3}});
  Factorization b = zf({{Q(3), 2}});
  CHECK(distance(a, b) == 3);
  CHECK(distance(b, a) == 3);
  CHECK(distance(a, a) == 0);
  CHECK(distance(Factorization{}, Factorization{}) == 0);

  Factorization c = zf({{Q(2), 2}, {Q(3), 1}});
  Factorization d = zf({{Q(2), 1}, {Q(3), 2}});
  CHECK(distance(c, d) == 1);  // common part {2:1, 3:1}, residuals {2:1}, {3:1}
  CHECK(distance(c, d) == distance(d, c));
  CHECK(distance(c, Factorization{}) == 3);
}

// ---- catenary degrees ----

TEST_CASE("catenary degrees over <2,3>") {
  Monoid m = fg({Q(2), Q(3)});
  auto c6 = catenary(m, Q(6));
  CHECK(c6.exact());
  CHECK(c6.value == 3);
  CHECK(catenary(m, Q(2)).value == 0);
  CHECK(catenary(m, Q(12)).value == 3);  // the direct 4-6 edge of weight 6 is avoided
  CHECK(monotone_catenary(m, Q(12)).value == 3);
  CHECK(monotone_catenary(m, Q(12)).exact());
  CHECK(catenary(m, Q(0)).value == 0);
}

TEST_CASE("monotone catenary is bounded by the distance diameter") {
  Monoid m = fg({Q(4), Q(6), Q(7)});
  for (long long x : {14, 24, 25, 28, 33, 40}) {
    auto zs = factorizations(m, Q(x));
    Int diam = 0;
    for (std::size_t i = 0; i < zs.items.size(); ++i)
      for (std::size_t j = i + 1; j < zs.items.size(); ++j)
        diam = std::max(diam, distance(zs.items[i], zs.items[j]));
    auto c = catenary(m, Q(x));
    auto cm = monotone_catenary(m, Q(x));
    CHECK(c.value <= cm.value);
    CHECK(cm.value <= diam);
  }
}

// ---- consistency across operations ----

TEST_CASE("factorizations and lengths agree and respect value bounds") {
  std::vector<std::pair<Monoid, std::vector<Rational>>> cases;
  cases.emplace_back(fg({Q(2), Q(3)}),
                     std::vector<Rational>{Q(2), Q(5), Q(6), Q(12), Q(17)});
  cases.emplace_back(fg({Q(4), Q(6), Q(7)}),
                     std::vector<Rational>{Q(12), Q(18), Q(25), Q(33)});
  cases.emplace_back(fg({Q(1, 2), Q(1, 3)}),
                     std::vector<Rational>{Q(1), Q(5, 6), Q(7, 2), Q(10, 3)});
  cases.emplace_back(Monoid{MonoidSpec{GeometricPowers{Q(3, 2)}}},
                     std::vector<Rational>{Q(15, 4), Q(3), Q(27, 8), Q(9, 2)});
  cases.emplace_back(lattice(SequenceRule::thm312(), SequenceRule::pow2()),
                     std::vector<Rational>{Q(2), Q(4), Q(9, 2), Q(25, 8)});
  cases.emplace_back(Monoid{MonoidSpec{PrimeReciprocal{Int(7)}}},
                     std::vector<Rational>{Q(1), Q(3, 2), Q(41, 42)});

  for (const auto& [m, xs] : cases) {
    for (const Rational& x : xs) {
      auto zs = factorizations(m, x);
      auto ls = lengths(m, x);
      CHECK(zs.exact());
      CHECK(ls.exact());
      CHECK(std::is_sorted(zs.items.begin(), zs.items.end(), factorization_less));
      CHECK(std::is_sorted(ls.items.begin(), ls.items.end()));

      std::set<Int> proj;
      for (const Factorization& z : zs.items) {
        CHECK(z.value() == x);
        proj.insert(z.length());
        for (const auto& [a, c] : z.terms) {
          CHECK(m.is_atom(a));
          CHECK(c > 0);
        }
      }
      CHECK(ls.items == std::vector<Int>(proj.begin(), proj.end()));

      // length window from the extreme atoms below x
      AtomList pool = m.atoms_below(RealCut{x}, Int(64));
      REQUIRE(!pool.atoms.empty());
      Rational mu = pool.atoms.front();
      Rational mx = pool.atoms.back();
      CHECK(ls.items.front() >= (x / mx).ceil());
      CHECK(ls.items.back() <= (x / mu).floor());

      // pairwise distance properties
      for (std::size_t i = 0; i < zs.items.size(); ++i)
        for (std::size_t j = 0; j < zs.items.size(); ++j) {
          Int dij = distance(zs.items[i], zs.items[j]);
          CHECK(dij == distance(zs.items[j], zs.items[i]));
          CHECK((dij == 0) == (i == j));
          Int li = zs.items[i].length(), lj = zs.items[j].length();
          CHECK((li > lj ? li - lj : lj - li) <= dij);
        }

      auto c = catenary(m, x);
      auto cm = monotone_catenary(m, x);
      CHECK(c.exact());
      CHECK(c.value <= cm.value);
      if (zs.items.size() > 1) CHECK(cm.value <= ls.items.back());
    }
  }
}

// ---- certification ----

TEST_CASE("a value cap that hides an atom makes results inexact") {
  Monoid m = fg({Q(2), Q(3)});
  SearchBudget b;
  b.value_cap = RealCut(Q(5, 2));
  auto z = factorizations(m, Q(12), b);
  CHECK_FALSE(z.exact());
  REQUIRE(z.items.size() == 1);  // only the atom 2 is visible
  CHECK(z.items[0] == zf({{Q(2), 6}}));

  // a cap above the atom supremum loses nothing
  b.value_cap = RealCut(5);
  auto z5 = factorizations(m, Q(12), b);
  CHECK(z5.exact());
  CHECK(z5.items.size() == 3);
}

TEST_CASE("a tiny node budget truncates honestly") {
  Monoid m = fg({Q(2), Q(3)});
  SearchBudget b;
  b.node_cap = 20;
  auto z = factorizations(m, Q(600), b);
  CHECK_FALSE(z.exact());
  for (const Factorization& f : z.items) CHECK(f.value() == Q(600));
  auto full = factorizations(m, Q(600));
  CHECK(full.exact());
  CHECK(full.items.size() == 101);  // 600 = 2a + 3b, b = 0, 2, ..., 200
  CHECK(z.items.size() < full.items.size());
}

TEST_CASE("a length cap truncates the reported lengths") {
  Monoid m = fg({Q(2), Q(3)});
  SearchBudget b;
  b.length_cap = 4;
  auto ls = lengths(m, Q(12), b);
  CHECK_FALSE(ls.exact());
  CHECK(ls.items == ints({4}));  // 5 and 6 are cut off
}

TEST_CASE("dense threshold lengths are always lower bounds") {
  Monoid m{MonoidSpec{DenseThreshold{RealCut(Q(3, 2)), true}}};
  SearchBudget b;
  b.denom_cap = 8;
  auto ls = lengths(m, Q(7, 2), b);
  CHECK_FALSE(ls.exact());
  CHECK(ls.items == ints({2}));  // 7/4 + 7/4; three atoms already overshoot
}

TEST_CASE("prime reciprocal lengths of 1 are the primes in reach") {
  Monoid unbounded{MonoidSpec{PrimeReciprocal{std::nullopt}}};
  auto lu = lengths(unbounded, Q(1));
  CHECK_FALSE(lu.exact());  // one atom per prime, far beyond any denom cap
  CHECK(lu.items == ints({2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43,
                          47, 53, 59, 61}));

  Monoid bounded{MonoidSpec{PrimeReciprocal{Int(61)}}};
  auto lb = lengths(bounded, Q(1));
  CHECK(lb.exact());  // the atom list is finite and fully enumerated
  CHECK(lb.items == lu.items);
}

// ---- error handling ----

TEST_CASE("non-members and unmaterializable sets are rejected") {
  Monoid m = fg({Q(2), Q(3)});
  CHECK_THROWS_AS((void)factorizations(m, Q(1)), std::invalid_argument);
  CHECK_THROWS_AS((void)lengths(m, Q(1)), std::invalid_argument);
  CHECK_THROWS_AS((void)catenary(m, Q(1)), std::invalid_argument);

  Monoid it{MonoidSpec{IrrationalThreshold{kSilver}}};
  CHECK_THROWS_AS((void)factorizations(it, Q(10)), std::invalid_argument);
  CHECK_THROWS_AS((void)catenary(it, Q(10)), std::invalid_argument);
  CHECK_THROWS_AS((void)monotone_catenary(it, Q(10)), std::invalid_argument);
  CHECK_THROWS_AS((void)lengths(it, Q(1, 2)), std::invalid_argument);

  Monoid p39 = lattice(SequenceRule::prop39(ints({0, 1, 2, 7, 74})),
                       SequenceRule::pow2());
  CHECK_THROWS_AS((void)factorizations(p39, Q(262881, 32)), std::domain_error);
}
