#pragma once
// Named parametric monoid instances and claim checkers binding each
// construction to its proved quantitative consequences.  A claim check is a
// bounded exact verification: Pass means every probed consequence held, Fail
// carries a concrete counterexample, Inconclusive means the budget ran out
// before a verdict.

#include "puiseux/invariants.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace puiseux {

// ---- instance parameter records ----

struct Ex37Params {
  SequenceRule alphas;
  SequenceRule bs;
};
struct Thm312Params {
  SequenceRule bs;  // alpha_i = i - 1/b_i derived per level
};
struct Prop39Params {
  std::vector<Int> seed;  // k_0 = 0 < k_1 < ..., k_i > (3/2) k_{i-1}^2
};
struct Ex44Params {
  RealCut alpha;  // irrational, >= 1
};
struct Ex36aParams {};  // <1/p : p prime>
struct Ex36bParams {
  std::vector<std::pair<Int, Int>> fractions;  // (p_i, q_i), primes, q_i > p_i^2
};
struct Ex36cParams {
  Rational ratio;  // non-integer rational > 1
};
struct Ex38aParams {};  // {0} u Q_{>1}
struct Ex38bParams {};  // <1/p : p prime> u Q_{>=1}
struct Ex313Params {};  // <{1} u {1 + 1/p : p prime}>

using Provenance =
    std::variant<Ex37Params, Thm312Params, Prop39Params, Ex44Params, Ex36aParams,
                 Ex36bParams, Ex36cParams, Ex38aParams, Ex38bParams, Ex313Params>;

// A named instance: the engine-facing spec plus the parameters that built it.
// For ex36b, ex38b, and ex313 the spec field holds a bounded computational core of an
// infinite construction; analytic_notes() states the facts about the full
// monoid that the core cannot witness.
struct FamilyInstance {
  MonoidSpec spec;
  Provenance provenance;

  static FamilyInstance ex37(SequenceRule alphas, SequenceRule bs);
  static FamilyInstance thm312(SequenceRule bs = SequenceRule::pow2());
  static FamilyInstance prop39(std::vector<Int> seed = default_prop39_seed());
  static FamilyInstance ex44(RealCut alpha);
  static FamilyInstance ex36a();
  static FamilyInstance ex36b(
      std::vector<std::pair<Int, Int>> fractions = default_ex36b_fractions());
  static FamilyInstance ex36c(Rational ratio);
  static FamilyInstance ex38a();
  static FamilyInstance ex38b();
  static FamilyInstance ex313();

  static std::vector<Int> default_prop39_seed();  // {0, 1, 2, 7, 74}
  static std::vector<std::pair<Int, Int>> default_ex36b_fractions();

  Monoid monoid() const;     // engine over `spec`
  std::string name() const;  // provenance tag: "ex37", "thm312", ...
  std::string analytic_notes() const;

  // Level data (alpha_i, b_i) of a lattice instance at the construction's own
  // index: prop39 counts levels from 0 (the integer level), thm312 and ex37
  // from 1.  Throws std::invalid_argument for non-lattice instances or an
  // index outside the construction.
  std::pair<RealCut, Int> level(long i) const;
};

// ---- claim checking ----

struct ClaimCheckResult {
  enum class Verdict { Pass, Fail, Inconclusive };

  std::string claim_id;  // stable key, e.g. "rho-formula/ex44/n=017"
  std::string params;    // human-readable parameters of the check
  Verdict verdict = Verdict::Inconclusive;
  std::string detail;  // argument summary, counterexample, or budget note
  std::optional<Rational> witness_value;   // offending element on Fail
  std::optional<Factorization> witness;    // illustrating factorization
};

const char* to_string(ClaimCheckResult::Verdict v);

// Atoms hosted by level i stay inside [alpha_i, 2 alpha_i + 1): enumerates the
// level's lattice points across the window and a band above it, testing
// atomhood exactly.  Lattice instances only.
ClaimCheckResult verify_atom_window(const FamilyInstance& fam, long i);

// Every sum of n nonzero elements is divisible by the sampled atom u, where
// n = ceil(1 + (3 alpha_i + 1) / inf) for u's hosting level i: exhaustive over
// small-denominator sums near the minimum plus fixed-seed randomized probes.
ClaimCheckResult verify_M_bound(const FamilyInstance& fam,
                                const std::vector<Rational>& atom_sample,
                                const SearchBudget& budget = {});

// min L(2(k_n + 1/2^n) - 1) >= k_{n-1} for a prop39 instance, by exact DP
// over the complete atom pool at denominator 2^n.
ClaimCheckResult verify_tau_lower_bound(const FamilyInstance& fam, long n,
                                        const SearchBudget& budget = {});

// rho_n = n ceil(alpha) + floor(n abar) for an ex44 instance, n >= ceil(2/abar):
// witness atom (ceil(alpha) + kappa_n/n), integrality, and the upper bound
// n rho < rho_n + 1.  Throws below the threshold.
ClaimCheckResult verify_rho_formula(const FamilyInstance& fam, const Int& n);

// lambda_n = ell_n for an ex44 instance, n >= ceil(3 alpha/abar)^2: unique
// (ell_n, r_n) with n = ell_n ceil(alpha) + r_n and r_n/ell_n < abar <
// (r_n + ceil(alpha))/(ell_n - 1), witness atom, and the lower bound
// n > (ell_n - 1) rho.  Throws below the threshold.
ClaimCheckResult verify_lambda_formula(const FamilyInstance& fam, const Int& n);

// The union of length sets through n covers [lambda_n, rho_n]: witness
// elements x (denominator <= budget.denom_cap) certify each interior length
// via the exact solver; coverage gaps inside the budget give Inconclusive,
// an observed length outside the bounds gives Fail.  Throws below the
// lambda-formula threshold.
ClaimCheckResult verify_union_interval(const FamilyInstance& fam, const Int& n,
                                       const SearchBudget& budget = {});

// 2 in L(2i) for a thm312 instance: the level-i pair (i - 1/b_i, i + 1/b_i)
// when both are atoms, otherwise an exhaustive scan over atom pairs; reports
// Fail with the refutation when no pair of atoms sums to 2i.
ClaimCheckResult verify_two_in_lengths(const FamilyInstance& fam, long i);

// The bounded counterexample battery: prime reciprocals put every prime <= 5
// in L(1) while bf fails; ex36b atoms march to 0; geometric powers have a
// unique factorization blocking divisibility by 1; ex313 forces
// tame degree t(1) >= p for p <= 13.
std::vector<ClaimCheckResult> verify_counterexamples();

// The full deterministic battery, sorted by claim_id.
std::vector<ClaimCheckResult> run_claim_suite(const SearchBudget& budget = {});

}  // namespace puiseux
