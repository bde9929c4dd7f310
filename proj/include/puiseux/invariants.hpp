#pragma once
// Arithmetic invariants built on the factorization layer: delta sets,
// elasticity, the divisibility bounds omega / tau / tame degree / M(u),
// unions of length sets U_k, the Lambda invariant, and almost-arithmetic-
// progression fitting for length sets.  Every bound that depends on a
// truncated search says so; exact values are only claimed when the
// underlying enumeration is certified complete.

#include "puiseux/factorize.hpp"
#include "puiseux/monoid.hpp"

#include <optional>
#include <vector>

namespace puiseux {

// ---- delta sets ----

// Successive-gap set of a finite length set: sorted distinct differences of
// consecutive elements.  Duplicates and order in the input are irrelevant.
std::vector<Int> delta_of_set(const std::vector<Int>& lengths);

// Union of delta(L(x)) over every scanned element with an exact length set.
// Always LowerTruncated: the scan covers x <= value_cap with denominator <=
// denom_cap, a window, never the whole monoid.
struct DeltaReport {
  std::vector<Int> observed;          // sorted, duplicate-free
  std::optional<Int> min_delta;       // least observed gap
  std::optional<Rational> min_witness;  // least element realizing it
  Certificate certificate = Certificate::LowerTruncated;
};

DeltaReport delta_observed(const Monoid& m, const SearchBudget& budget = {});

// ---- elasticity ----

// rho(H) = sup A / inf A for strongly primary monoids; accepted means both
// the supremum and the infimum of the atom set are attained.  Monoids whose
// strong primarity is not certified get Kind::Unknown.
struct ElasticityReport {
  enum class Kind { Finite, Infinite, Unknown };
  Kind kind = Kind::Unknown;
  RealCut value;  // Finite only
  Verdict accepted = Verdict::Unknown;
};

ElasticityReport elasticity(const Monoid& m);

// ---- divisibility bounds: omega, tau, tame degree, M ----

enum class TameKind { Omega, Tau, TameDegree, BigM };

// One invariant value at one element.  Exact values come from a certified
// complete enumeration; LowerBound values are witnessed by an explicit
// configuration (a factorization for Omega / Tau / TameDegree, a long
// factorization of a blocking element for BigM).
struct TameReport {
  Rational u;
  TameKind kind = TameKind::Omega;
  enum class Value { Exact, LowerBound, Infinite } value_kind = Value::LowerBound;
  Int value = 0;
  std::optional<Int> upper_bound;       // independent cap, when one is certified
  std::optional<Factorization> witness;  // configuration attaining `value`
};

// M(u): least n such that every x in the monoid with max L(x) >= n is
// divisible by u.  Exact for finitely generated monoids (blockers live below
// u + sigma); a witnessed lower bound plus, when hosting levels give one, a
// certified upper bound for lattice unions.  Throws std::invalid_argument
// when u is not a nonzero member or strong primarity is not certified.
TameReport M_of(const Monoid& m, const Rational& u, const SearchBudget& budget = {});

// omega(u): largest size of a minimal configuration z (a factorization whose
// value is divisible by u while no proper subsum is).  Exact for finitely
// generated monoids; otherwise a witnessed lower bound over the budget
// window.  Throws std::invalid_argument when u is not an atom.
TameReport omega(const Monoid& m, const Rational& u, const SearchBudget& budget = {});

// tau(u): largest min L(value(z) - u) over minimal configurations z, zero
// for z = (u) itself.  Same enumeration and exactness rules as omega; only
// exact length sets contribute, so truncation can only lower the bound.
TameReport tau(const Monoid& m, const Rational& u, const SearchBudget& budget = {});

// t(H, u): largest max(|z|, 1 + min L(value(z) - u)) over minimal
// configurations z other than (u); zero when (u) is the only one (u prime).
// Same enumeration and exactness rules as omega.
TameReport tame_degree(const Monoid& m, const Rational& u,
                       const SearchBudget& budget = {});

// ---- unions of length sets ----

// U_k: all lengths co-occurring with k, i.e. union of L(x) over k in L(x).
// lambda_k / rho_k are set when a complete scan or a closed form certifies
// them; an unbounded rho_k is certified separately via rho_infinite.  The
// observed sample always lists true co-occurring lengths.
struct UnionReport {
  Int k = 0;
  std::vector<Int> observed;  // sorted, duplicate-free; contains k when nonempty
  std::optional<Int> lambda_k;
  std::optional<Int> rho_k;
  bool rho_infinite = false;  // certified sup U_k = infinity
  Certificate certificate = Certificate::LowerTruncated;
};

UnionReport union_k(const Monoid& m, const Int& k, const SearchBudget& budget = {});

// ---- Lambda ----

// Lambda(H) = sup over nonzero members of min L(a).  Infinite (certified)
// for strongly primary monoids with nonempty conductor; otherwise the best
// witnessed lower bound inside the budget window.
struct LambdaReport {
  enum class Kind { Finite, InfiniteCertified, LowerBound };
  Kind kind = Kind::LowerBound;
  Int bound = 0;                      // LowerBound / Finite payload
  std::optional<Rational> witness;    // member realizing the bound
};

LambdaReport Lambda(const Monoid& m, const SearchBudget& budget = {});

// ---- almost arithmetic progressions ----

// Least M >= 0 such that every sampled length set L satisfies
//   (min L + d N0) intersect [min L + M, max L - M]  subset of  L
// with L itself inside min L + d N0.  Throws std::invalid_argument when a
// sample is not a member, its length set is not exact, or some length falls
// outside min L + d N0 (the right inclusion fails).
Int aap_fit(const Monoid& m, const std::vector<Rational>& sample, const Int& d,
            const SearchBudget& budget = {});

}  // namespace puiseux
