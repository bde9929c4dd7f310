#pragma once
// Factorization sets Z(x), length sets L(x), the factorization distance, and
// (monotone) catenary degrees.  Every returned set carries an explicit
// exactness certificate; truncation is visible, never silent.

#include "puiseux/monoid.hpp"

#include <map>
#include <vector>

namespace puiseux {

// A formal sum of atoms with positive multiplicities.
struct Factorization {
  std::map<Rational, Int> terms;  // atom -> multiplicity (> 0)

  Int length() const;      // sum of multiplicities
  Rational value() const;  // sum of atom * multiplicity

  friend bool operator==(const Factorization& a, const Factorization& b) = default;
};

// Orders by length, then lexicographically on the (atom, multiplicity)
// sequence; fixes the tie order everywhere results are emitted.
bool factorization_less(const Factorization& a, const Factorization& b);

// Enumeration limits.  Results that might extend past a cap are flagged.
struct SearchBudget {
  RealCut value_cap = RealCut(200);
  Int denom_cap = 64;
  Int length_cap = 400;
  long long node_cap = 10000000;
};

enum class Certificate { Exact, LowerTruncated };

template <typename T>
struct CertifiedSet {
  std::vector<T> items;  // sorted ascending, duplicate-free
  Certificate certificate = Certificate::Exact;

  bool exact() const { return certificate == Certificate::Exact; }
};

struct CertifiedValue {
  Int value = 0;
  Certificate certificate = Certificate::Exact;

  bool exact() const { return certificate == Certificate::Exact; }
};

// Z(x).  Exact iff the atom list below x is complete within the budget and
// x / (least atom) bounds the length within length_cap.  Throws
// std::invalid_argument when x is not a member, and for the irrational
// threshold family, where Z(x) is typically infinite (use lengths instead).
CertifiedSet<Factorization> factorizations(const Monoid& m, const Rational& x,
                                           const SearchBudget& budget = {});

// L(x).  Computed by a closed-form solver for the irrational threshold
// family (always Exact there); projected from a length DP elsewhere.
CertifiedSet<Int> lengths(const Monoid& m, const Rational& x,
                          const SearchBudget& budget = {});

// d(z, z'): strip the common part, return the larger residual length.
Int distance(const Factorization& z1, const Factorization& z2);

// c(x): the least N such that any two factorizations of x are joined by a
// chain with steps of distance <= N (bottleneck over a minimax spanning
// tree of Z(x)).  0 when |Z(x)| <= 1.
CertifiedValue catenary(const Monoid& m, const Rational& x,
                        const SearchBudget& budget = {});

// c_mon(x): as c(x), but chains must have monotone lengths.
CertifiedValue monotone_catenary(const Monoid& m, const Rational& x,
                                 const SearchBudget& budget = {});

}  // namespace puiseux
