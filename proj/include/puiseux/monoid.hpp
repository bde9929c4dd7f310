#pragma once
// Puiseux monoid engines: membership, divisibility, atom enumeration,
// closure, conductor, and classification for six parametric families.
// All arithmetic is exact; every answer is either certain or an error.

#include "puiseux/rational.hpp"
#include "puiseux/real_cut.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace puiseux {

// ---- sequence rules ----

// Generates the level data (alpha_i, b_i) of a lattice-union monoid.
// Explicit carries literal values; Thm312 derives alpha_i = i - 1/b_i;
// Prop39 carries a seed k_0..k_m with k_0 = 0, k_i > (3/2)k_{i-1}^2 and
// forces b_i = 2^i; PowersOfTwo generates b_i = 2^i (or alpha_i = 2^i
// when used on the alpha side).
struct SequenceRule {
  enum class Kind { Explicit, Thm312, Prop39, PowersOfTwo };
  Kind kind = Kind::Explicit;
  std::vector<RealCut> cuts;  // Explicit alpha values
  std::vector<Int> ints;      // Explicit b values or Prop39 seed

  static SequenceRule explicit_cuts(std::vector<RealCut> values);
  static SequenceRule explicit_ints(std::vector<Int> values);
  static SequenceRule thm312();
  static SequenceRule prop39(std::vector<Int> seed);
  static SequenceRule pow2();
};

// ---- family specs ----

struct FinitelyGenerated {
  std::vector<Rational> generators;  // non-empty, positive, pairwise distinct
};

// Union over levels i of {0} + (lattice (1/b_i)Z cut at alpha_i).
// Requires b_i | b_{i+1}; the union is then closed under addition.
struct LatticeUnion {
  SequenceRule alphas;
  SequenceRule bs;
};

// N_0 together with every rational strictly above an irrational alpha >= 1.
struct IrrationalThreshold {
  RealCut alpha;
};

// {0} together with every rational >= sigma (or > sigma when strict).
struct DenseThreshold {
  RealCut sigma;  // >= 0
  bool strict = true;
};

// Generated by the reciprocals of all primes (<= prime_bound when present).
struct PrimeReciprocal {
  std::optional<Int> prime_bound;  // >= 2 when present
};

// Generated by the powers of a non-integer rational ratio > 1.
struct GeometricPowers {
  Rational ratio;
};

using MonoidSpec = std::variant<FinitelyGenerated, LatticeUnion, IrrationalThreshold,
                                DenseThreshold, PrimeReciprocal, GeometricPowers>;

// ---- reports ----

enum class Verdict { Yes, No, Unknown };
const char* to_string(Verdict v);

// Structural classification; fields stay Unknown when no exact
// characterization decides them.
struct ClassifyReport {
  Verdict valuation = Verdict::Unknown;
  Verdict seminormal = Verdict::Unknown;
  Verdict bf = Verdict::Unknown;
  Verdict strongly_primary = Verdict::Unknown;
  Verdict conductor_nonempty = Verdict::Unknown;
  Verdict inf_positive = Verdict::Unknown;
};

// Divisor-closed, lcm-closed description of the element denominators.
struct DenominatorRule {
  enum class Kind { FiniteSet, DivisorsOf, PowersOf, AllSquarefree, All };
  Kind kind = Kind::FiniteSet;
  std::vector<Int> set;  // FiniteSet payload, sorted ascending
  Int base = 0;          // DivisorsOf / PowersOf payload

  bool contains(const Int& d) const;
  std::string str() const;
};

// The non-negative part of the quotient group: scale_n * <1/d : d admitted>.
struct ClosureDescription {
  Int scale_n = 1;               // gcd of element numerators
  DenominatorRule denominators;  // hull of element denominators
  std::string quotient_group;    // printable description of q(H)
};

// sigma = sup(closure \ H); Threshold means the conductor is H cut at sigma,
// Whole means H equals its closure, Empty means sigma is infinite.
struct ConductorDescription {
  enum class Status { Empty, Threshold, Whole, Unknown };
  Status status = Status::Unknown;
  RealCut sigma;          // Threshold only
  bool attained = false;  // Threshold only: sigma itself lies in closure \ H
};

struct AtomList {
  std::vector<Rational> atoms;  // sorted ascending
  RealCut complete_below;       // echo of the query bound
  bool complete = false;        // true only if atoms == all atoms <= bound
  std::string note;             // analytic description for dense families
};

// ---- monoid facade ----

// Immutable after construction; all queries are safe to run concurrently.
class Monoid {
 public:
  explicit Monoid(MonoidSpec spec);  // validates, throws std::invalid_argument

  const MonoidSpec& spec() const;
  const char* family_name() const;

  bool member(const Rational& x) const;
  // True when y - x lies in the monoid; both arguments must be members.
  bool divides(const Rational& x, const Rational& y) const;
  bool is_atom(const Rational& u) const;
  // Atoms u with u <= bound and denominator <= denom_bound.
  AtomList atoms_below(const RealCut& bound, const Int& denom_bound) const;
  ClosureDescription closure() const;
  bool closure_member(const Rational& x) const;
  ConductorDescription conductor() const;
  ClassifyReport classify() const;

  // Infimum of the positive elements and whether it is attained; this equals
  // the infimum of the atom set whenever the monoid has atoms.
  RealCut positive_infimum(bool* attained = nullptr) const;
  // Supremum of the atom set with its attainment flag; nullopt when the
  // atoms are unbounded.
  std::optional<std::pair<RealCut, bool>> atom_supremum() const;

  // Concrete level data (alpha_i, b_i) of a lattice union: every listed level
  // with alpha_i <= bound plus tail levels with b_i <= denom_bound.  Throws
  // std::invalid_argument for other families and std::domain_error when the
  // bound reaches a certified extension horizon.
  std::vector<std::pair<RealCut, Int>> levels_below(const RealCut& bound,
                                                    const Int& denom_bound) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace puiseux
