// Named parametric monoid instances and their claim checkers.  Each checker
// is a bounded exact verification: engine queries plus integer/cut arithmetic,
// never floating point.  Verdicts are honest: Fail always carries a concrete
// counterexample, Inconclusive means a budget or horizon stopped the probe.

#include "puiseux/families.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <variant>

namespace puiseux {

namespace {

// ---- small helpers ----

Int pow2i(long e) {
  Int r = 1;
  for (long j = 0; j < e; ++j) r *= 2;
  return r;
}

bool prime_int(const Int& n) {
  if (n < 2) return false;
  for (Int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// zero-padded to three digits so lexicographic claim-id order matches numeric
std::string pad3(const Int& n) {
  std::string s = n.str();
  while (s.size() < 3) s.insert(s.begin(), '0');
  return s;
}

std::string join_rationals(const std::vector<Rational>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i].str();
  }
  return out;
}

std::string join_ints(const std::vector<Int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i].str();
  }
  return out;
}

ClaimCheckResult base_result(std::string id, std::string params) {
  ClaimCheckResult r;
  r.claim_id = std::move(id);
  r.params = std::move(params);
  return r;
}

Factorization single_term(const Rational& a, const Int& mult) {
  Factorization z;
  z.terms[a] = mult;
  return z;
}

bool contains_int(const std::vector<Int>& sorted, const Int& v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

}  // namespace

// ---- verdict names ----

const char* to_string(ClaimCheckResult::Verdict v) {
  switch (v) {
    case ClaimCheckResult::Verdict::Pass:
      return "Pass";
    case ClaimCheckResult::Verdict::Fail:
      return "Fail";
    case ClaimCheckResult::Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

// ---- factories ----

std::vector<Int> FamilyInstance::default_prop39_seed() { return {0, 1, 2, 7, 74}; }

std::vector<std::pair<Int, Int>> FamilyInstance::default_ex36b_fractions() {
  return {{2, 5}, {3, 11}, {5, 29}};
}

FamilyInstance FamilyInstance::ex37(SequenceRule alphas, SequenceRule bs) {
  FamilyInstance f;
  f.spec = LatticeUnion{alphas, bs};
  f.provenance = Ex37Params{std::move(alphas), std::move(bs)};
  (void)f.monoid();  // validates
  return f;
}

FamilyInstance FamilyInstance::thm312(SequenceRule bs) {
  FamilyInstance f;
  f.spec = LatticeUnion{SequenceRule::thm312(), bs};
  f.provenance = Thm312Params{std::move(bs)};
  (void)f.monoid();
  return f;
}

FamilyInstance FamilyInstance::prop39(std::vector<Int> seed) {
  FamilyInstance f;
  f.spec = LatticeUnion{SequenceRule::prop39(seed), SequenceRule::pow2()};
  f.provenance = Prop39Params{std::move(seed)};
  (void)f.monoid();  // enforces the seed growth condition
  return f;
}

FamilyInstance FamilyInstance::ex44(RealCut alpha) {
  FamilyInstance f;
  f.spec = IrrationalThreshold{alpha};
  f.provenance = Ex44Params{std::move(alpha)};
  (void)f.monoid();  // enforces irrationality and alpha >= 1
  return f;
}

FamilyInstance FamilyInstance::ex36a() {
  FamilyInstance f;
  f.spec = PrimeReciprocal{std::nullopt};
  f.provenance = Ex36aParams{};
  return f;
}

FamilyInstance FamilyInstance::ex36b(std::vector<std::pair<Int, Int>> fractions) {
  if (fractions.empty())
    throw std::invalid_argument("ex36b: at least one fraction is required");
  std::vector<Rational> gens;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const auto& [p, q] = fractions[i];
    if (!prime_int(p) || !prime_int(q))
      throw std::invalid_argument("ex36b: numerators and denominators must be prime");
    if (q <= p * p)
      throw std::invalid_argument("ex36b: each denominator must exceed the square of its numerator");
    if (i > 0 && (p <= fractions[i - 1].first || q <= fractions[i - 1].second))
      throw std::invalid_argument("ex36b: both prime sequences must be strictly increasing");
    gens.emplace_back(p, q);
  }
  FamilyInstance f;
  f.spec = FinitelyGenerated{std::move(gens)};
  f.provenance = Ex36bParams{std::move(fractions)};
  (void)f.monoid();
  return f;
}

FamilyInstance FamilyInstance::ex36c(Rational ratio) {
  FamilyInstance f;
  f.spec = GeometricPowers{ratio};
  f.provenance = Ex36cParams{std::move(ratio)};
  (void)f.monoid();  // enforces a non-integer ratio > 1
  return f;
}

FamilyInstance FamilyInstance::ex38a() {
  FamilyInstance f;
  f.spec = DenseThreshold{RealCut(1), /*strict=*/true};
  f.provenance = Ex38aParams{};
  return f;
}

FamilyInstance FamilyInstance::ex38b() {
  FamilyInstance f;
  f.spec = PrimeReciprocal{std::nullopt};
  f.provenance = Ex38bParams{};
  return f;
}

FamilyInstance FamilyInstance::ex313() {
  FamilyInstance f;
  std::vector<Rational> gens{Rational(1)};
  for (long p : {2, 3, 5, 7, 11, 13}) gens.emplace_back(p + 1, p);
  f.spec = FinitelyGenerated{std::move(gens)};
  f.provenance = Ex313Params{};
  // no engine validation: the joint factorization table of these seven
  // generators exceeds the engine's size cap, so monoid() throws; checkers
  // work on the two-generator sub-cores <1, (p+1)/p> instead
  return f;
}

Monoid FamilyInstance::monoid() const { return Monoid(spec); }

std::string FamilyInstance::name() const {
  static const char* names[] = {"ex37",  "thm312", "prop39", "ex44",  "ex36a",
                                "ex36b", "ex36c",  "ex38a",  "ex38b", "ex313"};
  return names[provenance.index()];
}

std::string FamilyInstance::analytic_notes() const {
  switch (provenance.index()) {
    case 0:  // ex37
      return "union of lattice levels (alpha_i, b_i) with b_i | b_{i+1}: "
             "strongly primary; each level's atoms lie in [alpha_i, 2 alpha_i + 1).";
    case 1:  // thm312
      return "levels alpha_i = i - 1/b_i: once b_i >= 3 the level pair "
             "i -+ 1/b_i consists of atoms, so 2 lies in L(2i); with b_1 = 2 "
             "the pair at i = 1, 2 is reducible and 2 is missing there.";
    case 2:  // prop39
      return "thresholds k_i growing faster than (3/2)k_{i-1}^2 on halving "
             "grids: min L(2(k_n + 1/2^n) - 1) >= k_{n-1}, so tau(1) is "
             "infinite and the monoid is strongly primary but not locally tame.";
    case 3:  // ex44
      return "integers together with every rational above the irrational "
             "threshold alpha: atoms are 1 and the non-integer rationals in "
             "(alpha, alpha + 1]; elasticity 1 + alpha.";
    case 4:  // ex36a
      return "generated by all prime reciprocals: every chain of proper "
             "divisors stabilizes, yet p lies in L(1) for every prime p, so "
             "length sets are unbounded.";
    case 5:  // ex36b
      return "finite core of an infinite list of prime fractions p_i/q_i with "
             "q_i > p_i^2: each fraction stays an atom of every extension "
             "(q_i-adic valuation isolates it) while p_i/q_i < 1/p_i drives "
             "the atoms to 0; every finite core is a BF-monoid.";
    case 6:  // ex36c
      return "powers of a non-integer rational r > 1: geometric sums "
             "r + ... + r^n factor uniquely, so 1 never divides them and no "
             "power of the monoid is absorbed by 1 + H.";
    case 7:  // ex38a
      return "zero together with every rational strictly above 1: BF with "
             "nonempty conductor; atoms fill (1, 2], factorization sets above "
             "2 are infinite.";
    case 8:  // ex38b
      return "prime-reciprocal core of the monoid that also contains every "
             "rational >= 1: the full monoid keeps atom set {1/p} and the 0 "
             "limit point while gaining a nonempty conductor, so it is "
             "neither strongly primary nor ACCP and has infinite elasticity.";
    case 9:  // ex313
      return "generators 1 and 1 + 1/p for primes p <= 13 (a truncation of "
             "the full prime-indexed list): the joint table exceeds the "
             "engine cap, so monoid() throws and checks run on the cores "
             "<1, (p+1)/p>; p copies of 1 + 1/p form a minimal configuration "
             "over 1 whose remainder needs p summands, so t(1) >= p.";
  }
  return "";
}

std::pair<RealCut, Int> FamilyInstance::level(long i) const {
  if (const auto* t = std::get_if<Thm312Params>(&provenance)) {
    if (i < 1) throw std::invalid_argument("level: indices count from 1");
    Int b;
    switch (t->bs.kind) {
      case SequenceRule::Kind::PowersOfTwo:
        b = pow2i(i);
        break;
      case SequenceRule::Kind::Explicit:
        if (i > static_cast<long>(t->bs.ints.size()))
          throw std::invalid_argument("level: index beyond the listed moduli");
        b = t->bs.ints[static_cast<std::size_t>(i) - 1];
        break;
      default:
        throw std::invalid_argument("level: unsupported modulus rule");
    }
    return {RealCut(Rational(Int(i) * b - 1, b)), b};
  }
  if (const auto* p = std::get_if<Prop39Params>(&provenance)) {
    if (i < 0 || i >= static_cast<long>(p->seed.size()))
      throw std::invalid_argument("level: index outside the seed");
    if (i == 0) return {RealCut(1), Int(1)};  // the integer level, cut at 1
    return {RealCut(Rational(p->seed[static_cast<std::size_t>(i)])), pow2i(i)};
  }
  if (const auto* e = std::get_if<Ex37Params>(&provenance)) {
    if (i < 1) throw std::invalid_argument("level: indices count from 1");
    RealCut a;
    switch (e->alphas.kind) {
      case SequenceRule::Kind::Explicit: {
        if (e->alphas.cuts.empty())
          throw std::invalid_argument("level: no thresholds listed");
        std::size_t idx = std::min<std::size_t>(static_cast<std::size_t>(i),
                                                e->alphas.cuts.size());
        a = e->alphas.cuts[idx - 1];  // listed thresholds repeat their last value
        break;
      }
      default:
        throw std::invalid_argument("level: unsupported threshold rule");
    }
    Int b;
    switch (e->bs.kind) {
      case SequenceRule::Kind::PowersOfTwo:
        b = pow2i(i);
        break;
      case SequenceRule::Kind::Explicit:
        if (i > static_cast<long>(e->bs.ints.size()))
          throw std::invalid_argument("level: index beyond the listed moduli");
        b = e->bs.ints[static_cast<std::size_t>(i) - 1];
        break;
      default:
        throw std::invalid_argument("level: unsupported modulus rule");
    }
    return {a, b};
  }
  throw std::invalid_argument("level: not a lattice instance: " + name());
}

// ---- atom window ----

ClaimCheckResult verify_atom_window(const FamilyInstance& fam, long i) {
  auto [alpha, b] = fam.level(i);  // throws for non-lattice instances
  ClaimCheckResult r = base_result(
      "atom-window/" + fam.name() + "/i=" + pad3(Int(i)),
      "alpha_i=" + alpha.str() + ", b_i=" + b.str());
  Monoid m = fam.monoid();
  const Rational rb{b};
  const RealCut two_a1 = alpha + alpha + RealCut(1);
  Int t_lo = ceil_mul(rb, alpha);
  if (t_lo < 1) t_lo = 1;
  Int t_hi = ceil_mul(rb, two_a1) - 1;        // last lattice point < 2 alpha + 1
  Int s_hi = floor_mul(rb, two_a1 + RealCut(2));
  if (s_hi - t_lo > 100000) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = "window too wide for the exhaustive lattice scan";
    return r;
  }
  long in_window = 0;
  try {
    for (Int t = t_lo; t <= s_hi; ++t) {
      Rational x(t, b);
      bool atom = m.is_atom(x);
      if (t <= t_hi) {
        if (atom) ++in_window;
      } else if (atom) {
        r.verdict = ClaimCheckResult::Verdict::Fail;
        r.detail = "atom " + x.str() + " lies at or above 2 alpha_i + 1";
        r.witness_value = x;
        return r;
      }
    }
  } catch (const std::domain_error& e) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = std::string("band reaches past the certified horizon: ") + e.what();
    return r;
  }
  if (in_window == 0) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = "level hosts no atoms inside its window; containment is vacuous";
    return r;
  }
  r.verdict = ClaimCheckResult::Verdict::Pass;
  r.detail = std::to_string(in_window) +
             " atoms in [alpha_i, 2 alpha_i + 1); none in the band up to 2 alpha_i + 3";
  return r;
}

// ---- M bound ----

ClaimCheckResult verify_M_bound(const FamilyInstance& fam,
                                const std::vector<Rational>& atom_sample,
                                const SearchBudget& budget) {
  if (atom_sample.empty())
    throw std::invalid_argument("verify_M_bound: empty sample");
  if (!std::holds_alternative<LatticeUnion>(fam.spec))
    throw std::invalid_argument("verify_M_bound: not a lattice instance: " + fam.name());
  ClaimCheckResult r = base_result("M-bound/" + fam.name() + "/u=" + join_rationals(atom_sample),
                                   "sample=" + join_rationals(atom_sample));
  Monoid m = fam.monoid();
  RealCut inf = m.positive_infimum();
  std::mt19937_64 rng(0x5eedf00dULL);
  long long nodes = 0;
  bool exhausted = false;
  std::string detail;

  for (const Rational& u : atom_sample) {
    if (u.sign() <= 0 || !m.member(u))
      throw std::invalid_argument("verify_M_bound: " + u.str() + " is not a nonzero member");

    // hosting level: first level whose modulus carries u's denominator
    Int host_db = budget.denom_cap > u.den() ? budget.denom_cap : u.den();
    std::optional<RealCut> host_alpha;
    try {
      for (const auto& [a, lb] : m.levels_below(RealCut(u), host_db))
        if (lb % u.den() == 0) {
          host_alpha = a;
          break;
        }
    } catch (const std::domain_error& e) {
      r.verdict = ClaimCheckResult::Verdict::Inconclusive;
      r.detail = std::string("hosting level beyond the certified horizon: ") + e.what();
      return r;
    }
    if (!host_alpha) {
      r.verdict = ClaimCheckResult::Verdict::Inconclusive;
      r.detail = "no hosting level for " + u.str() + " within the denominator cap";
      return r;
    }
    const RealCut& alpha = *host_alpha;

    // every sum of n nonzero elements clears u once n (inf) exceeds 3 alpha + 1
    Int n = ((alpha * RealCut(3) + RealCut(1)) / inf + RealCut(1)).ceil();
    long slots = n.convert_to<long>();

    // exhaustive window: all n-term sums from the small-denominator pool whose
    // total stays within n inf + 3 (any divisibility failure shows up low)
    Int pool_db = u.den() > 8 ? u.den() : Int(8);
    if (pool_db > budget.denom_cap) pool_db = budget.denom_cap;
    std::vector<Rational> pool;
    std::vector<std::pair<RealCut, Int>> probe_levels;
    try {
      std::set<Rational> ps;
      RealCut cap = inf + RealCut(3);
      for (const auto& [a, lb] : m.levels_below(cap, pool_db)) {
        Int lo = ceil_mul(Rational(lb), a);
        if (lo < 1) lo = 1;
        Int hi = floor_mul(Rational(lb), cap);
        for (Int t = lo; t <= hi; ++t) ps.insert(Rational(t, lb));
      }
      pool.assign(ps.begin(), ps.end());
      probe_levels = m.levels_below(alpha + RealCut(8), budget.denom_cap);
    } catch (const std::domain_error& e) {
      r.verdict = ClaimCheckResult::Verdict::Inconclusive;
      r.detail = std::string("member pool beyond the certified horizon: ") + e.what();
      return r;
    }

    RealCut sum_cap = inf * RealCut(Rational(n)) + RealCut(3);
    bool failed = false;
    Rational fail_sum;
    std::map<Rational, Int> terms, fail_terms;
    auto rec = [&](auto&& self, std::size_t start, long left, const Rational& sum) -> void {
      if (failed || exhausted) return;
      if (++nodes > budget.node_cap) {
        exhausted = true;
        return;
      }
      if (left == 0) {
        Rational rem = sum - u;
        if (!rem.is_zero() && !(rem.sign() > 0 && m.member(rem))) {
          failed = true;
          fail_sum = sum;
          fail_terms = terms;
        }
        return;
      }
      for (std::size_t j = start; j < pool.size(); ++j) {
        if (RealCut(sum + pool[j] * Rational(left)) > sum_cap) break;  // ascending pool
        ++terms[pool[j]];
        self(self, j, left - 1, sum + pool[j]);
        auto it = terms.find(pool[j]);
        if (--it->second == 0) terms.erase(it);
        if (failed || exhausted) return;
      }
    };
    rec(rec, 0, slots, Rational(0));

    // fixed-seed randomized probes across coarser and finer levels
    for (int trial = 0; trial < 200 && !failed && !exhausted; ++trial) {
      Rational sum(0);
      std::map<Rational, Int> picked;
      for (long c = 0; c < slots; ++c) {
        const auto& [a, lb] = probe_levels[rng() % probe_levels.size()];
        Int lo = ceil_mul(Rational(lb), a);
        if (lo < 1) lo = 1;
        unsigned long long span = (Int(4) * lb).convert_to<unsigned long long>();
        Rational x(lo + Int(rng() % span), lb);
        sum += x;
        ++picked[x];
      }
      Rational rem = sum - u;
      if (!rem.is_zero() && !(rem.sign() > 0 && m.member(rem))) {
        failed = true;
        fail_sum = sum;
        fail_terms = picked;
      }
    }

    if (failed) {
      r.verdict = ClaimCheckResult::Verdict::Fail;
      r.detail = "sum " + fail_sum.str() + " of " + n.str() +
                 " nonzero elements is not divisible by " + u.str();
      r.witness_value = fail_sum;
      Factorization z;
      z.terms = fail_terms;
      r.witness = z;
      return r;
    }
    if (!detail.empty()) detail += "; ";
    detail += "u=" + u.str() + ": hosting alpha=" + alpha.str() + ", n=" + n.str();
  }

  if (exhausted) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = "node budget exhausted before the window was swept";
    return r;
  }
  r.verdict = ClaimCheckResult::Verdict::Pass;
  r.detail = detail + "; exhaustive small-denominator window plus 200 seeded probes all divisible";
  return r;
}

// ---- tau lower bound ----

ClaimCheckResult verify_tau_lower_bound(const FamilyInstance& fam, long n,
                                        const SearchBudget& budget) {
  const auto* p = std::get_if<Prop39Params>(&fam.provenance);
  if (!p) throw std::invalid_argument("verify_tau_lower_bound: not a prop39 instance");
  if (n < 2 || static_cast<std::size_t>(n) >= p->seed.size())
    throw std::invalid_argument("verify_tau_lower_bound: n must lie in [2, seed length - 1]");
  const Int& kn = p->seed[static_cast<std::size_t>(n)];
  const Int& kprev = p->seed[static_cast<std::size_t>(n) - 1];
  Int pw = pow2i(n);
  Rational a(kn * pw + 1, pw);       // the level-n atom k_n + 1/2^n
  Rational x = a + a - Rational(1);  // its doubled value minus the divisor 1
  ClaimCheckResult r = base_result(
      "tau-lower/prop39/n=" + pad3(Int(n)),
      "seed=[" + join_ints(p->seed) + "], x=" + x.str());
  Monoid m = fam.monoid();
  if (!m.is_atom(a)) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = a.str() + " is not an atom";
    r.witness_value = a;
    return r;
  }
  if (!m.member(x)) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "1 does not divide the doubled atom 2 * " + a.str();
    r.witness_value = x;
    return r;
  }
  if (m.member(a - Rational(1))) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "1 already divides a single copy of " + a.str() +
               ", so the two-copy configuration is not minimal";
    r.witness_value = a;
    return r;
  }
  CertifiedSet<Int> L = lengths(m, x, budget);
  if (!L.exact()) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = "length set of " + x.str() + " truncated within the budget; no certified minimum";
    return r;
  }
  Int mn = L.items.front();
  if (mn >= kprev) {
    r.verdict = ClaimCheckResult::Verdict::Pass;
    r.detail = "min L(" + x.str() + ") = " + mn.str() + " >= k_{n-1} = " + kprev.str() +
               ", so tau(1) >= " + kprev.str();
    r.witness_value = x;
    r.witness = single_term(a, 2);
  } else {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "min L(" + x.str() + ") = " + mn.str() + " < k_{n-1} = " + kprev.str();
    r.witness_value = x;
  }
  return r;
}

// ---- irrational threshold formulas ----

namespace {

struct Ex44Data {
  RealCut alpha;
  RealCut abar;   // fractional part of alpha
  Int acl;        // ceil(alpha)
};

Ex44Data ex44_data(const FamilyInstance& fam, const char* who) {
  const auto* e = std::get_if<Ex44Params>(&fam.provenance);
  if (!e) throw std::invalid_argument(std::string(who) + ": not an irrational threshold instance");
  Ex44Data d{e->alpha, e->alpha - RealCut(Rational(e->alpha.floor())), e->alpha.ceil()};
  return d;
}

// the unique split n = ell ceil(alpha) + r with r/ell < abar < (r + ceil(alpha))/(ell - 1)
std::vector<std::pair<Int, Int>> lambda_splits(const Ex44Data& d, const Int& n) {
  std::vector<std::pair<Int, Int>> out;
  for (Int ell = 2; ell * d.acl <= n; ++ell) {
    Int rr = n - ell * d.acl;
    if (!(RealCut(Rational(rr, ell)) < d.abar)) continue;
    if (!(d.abar < RealCut(Rational(rr + d.acl, ell - 1)))) continue;
    out.emplace_back(ell, rr);
  }
  return out;
}

}  // namespace

ClaimCheckResult verify_rho_formula(const FamilyInstance& fam, const Int& n) {
  Ex44Data d = ex44_data(fam, "verify_rho_formula");
  Int thr = (RealCut(2) / d.abar).ceil();
  if (n < thr)
    throw std::invalid_argument("verify_rho_formula: n below the threshold " + thr.str());
  Int kappa = floor_mul(Rational(n), d.abar);
  Int rho_n = n * d.acl + kappa;
  ClaimCheckResult r = base_result("rho-formula/ex44/n=" + pad3(n),
                                   "alpha=" + d.alpha.str() + ", n=" + n.str());
  Monoid m = fam.monoid();
  Rational a0(d.acl * n + kappa, n);
  if (!m.is_atom(a0) || !m.is_atom(Rational(1))) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "witness atom " + a0.str() + " or the unit atom 1 is missing";
    r.witness_value = a0;
    return r;
  }
  if (!((RealCut(1) + d.alpha) * RealCut(Rational(n)) < RealCut(Rational(rho_n + 1)))) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "upper bound fails: (1 + alpha) n reaches rho_n + 1";
    r.witness_value = Rational(rho_n);
    return r;
  }
  CertifiedSet<Int> L = lengths(m, Rational(rho_n));
  if (!L.exact()) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = "length set of " + rho_n.str() + " not certified";
    return r;
  }
  if (!contains_int(L.items, n) || L.items.back() != rho_n) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "L(" + rho_n.str() + ") misses the pair {n, rho_n}";
    r.witness_value = Rational(rho_n);
    return r;
  }
  r.verdict = ClaimCheckResult::Verdict::Pass;
  r.detail = "rho_" + n.str() + " = " + rho_n.str() + " via " + n.str() + " x " + a0.str() +
             "; any value carrying length n stays below rho_n + 1";
  r.witness = single_term(a0, n);
  r.witness_value = Rational(rho_n);
  return r;
}

ClaimCheckResult verify_lambda_formula(const FamilyInstance& fam, const Int& n) {
  Ex44Data d = ex44_data(fam, "verify_lambda_formula");
  Int t = (RealCut(3) * d.alpha / d.abar).ceil();
  Int thr = t * t;
  if (n < thr)
    throw std::invalid_argument("verify_lambda_formula: n below the threshold " + thr.str());
  ClaimCheckResult r = base_result("lambda-formula/ex44/n=" + pad3(n),
                                   "alpha=" + d.alpha.str() + ", n=" + n.str());
  auto splits = lambda_splits(d, n);
  if (splits.size() != 1) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "expected a unique split of n, found " + std::to_string(splits.size());
    return r;
  }
  const auto& [ell, rr] = splits.front();
  Monoid m = fam.monoid();
  Rational b0(n, ell);  // equals ceil(alpha) + r/ell
  if (!m.is_atom(b0) || !m.is_atom(Rational(1))) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "witness atom " + b0.str() + " or the unit atom 1 is missing";
    r.witness_value = b0;
    return r;
  }
  if (!(RealCut(Rational(n)) > RealCut(Rational(ell - 1)) * (RealCut(1) + d.alpha))) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "lower bound fails: n does not exceed (ell - 1)(1 + alpha)";
    r.witness_value = Rational(n);
    return r;
  }
  CertifiedSet<Int> L = lengths(m, Rational(n));
  if (!L.exact()) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = "length set of " + n.str() + " not certified";
    return r;
  }
  if (L.items.front() != ell || L.items.back() != n) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "L(" + n.str() + ") has min " + L.items.front().str() + ", expected " + ell.str();
    r.witness_value = Rational(n);
    return r;
  }
  r.verdict = ClaimCheckResult::Verdict::Pass;
  r.detail = "lambda_" + n.str() + " = " + ell.str() + " with split (" + ell.str() + ", " +
             rr.str() + "); witness " + ell.str() + " x " + b0.str() +
             "; n exceeds (ell - 1)(1 + alpha)";
  r.witness = single_term(b0, ell);
  r.witness_value = Rational(n);
  return r;
}

ClaimCheckResult verify_union_interval(const FamilyInstance& fam, const Int& n,
                                       const SearchBudget& budget) {
  Ex44Data d = ex44_data(fam, "verify_union_interval");
  Int t = (RealCut(3) * d.alpha / d.abar).ceil();
  if (n < t * t)
    throw std::invalid_argument("verify_union_interval: n below the threshold " + (t * t).str());
  Int kappa = floor_mul(Rational(n), d.abar);
  Int rho_n = n * d.acl + kappa;
  ClaimCheckResult r = base_result("union-interval/ex44/n=" + pad3(n),
                                   "alpha=" + d.alpha.str() + ", n=" + n.str());
  auto splits = lambda_splits(d, n);
  if (splits.size() != 1) {
    r.verdict = ClaimCheckResult::Verdict::Fail;
    r.detail = "expected a unique split of n, found " + std::to_string(splits.size());
    return r;
  }
  Int lambda_n = splits.front().first;
  Monoid m = fam.monoid();

  long span = (rho_n - lambda_n + 1).convert_to<long>();
  std::vector<char> covered(static_cast<std::size_t>(span), 0);
  long uncovered = span;
  bool out_of_bounds = false;
  Rational bad_source;
  Int bad_length;
  auto merge = [&](const std::vector<Int>& items, const Rational& src) {
    for (const Int& len : items) {
      if (len < lambda_n || len > rho_n) {
        out_of_bounds = true;
        bad_source = src;
        bad_length = len;
        return;
      }
      auto idx = static_cast<std::size_t>((len - lambda_n).convert_to<long>());
      if (!covered[idx]) {
        covered[idx] = 1;
        --uncovered;
      }
    }
  };

  // both n itself and rho_n carry length n; their full length sets sit in U_n
  for (const Rational& x : {Rational(n), Rational(rho_n)}) {
    CertifiedSet<Int> L = lengths(m, x, budget);
    if (!L.exact()) {
      r.verdict = ClaimCheckResult::Verdict::Inconclusive;
      r.detail = "length set of " + x.str() + " not certified";
      return r;
    }
    if (!contains_int(L.items, n)) {
      r.verdict = ClaimCheckResult::Verdict::Fail;
      r.detail = "length n missing from L(" + x.str() + ")";
      r.witness_value = x;
      return r;
    }
    merge(L.items, x);
    if (out_of_bounds) {
      r.verdict = ClaimCheckResult::Verdict::Fail;
      r.detail = "observed length " + bad_length.str() + " of " + bad_source.str() +
                 " falls outside [lambda_n, rho_n]";
      r.witness_value = bad_source;
      return r;
    }
  }

  // witness search for any remaining target length: an element carrying both
  // length n (jj large atoms) and the target (kk large atoms)
  const RealCut one_alpha = RealCut(1) + d.alpha;
  for (long idx = 0; idx < span && uncovered > 0; ++idx) {
    if (covered[static_cast<std::size_t>(idx)]) continue;
    Int target = lambda_n + idx;
    bool found = false;
    auto try_value = [&](const Rational& x) {
      CertifiedSet<Int> L = lengths(m, x, budget);
      if (!L.exact()) return;
      if (!contains_int(L.items, n) || !contains_int(L.items, target)) return;
      merge(L.items, x);
      found = true;
    };
    // all-ones candidate: the integer target carries length target trivially
    if (target >= n) try_value(Rational(target));
    for (Int jj = 1; jj <= n && !found && !out_of_bounds; ++jj) {
      RealCut lo1 = RealCut(Rational(n - jj)) + RealCut(Rational(jj)) * d.alpha;
      RealCut hi1 = RealCut(Rational(n - jj)) + RealCut(Rational(jj)) * one_alpha;
      if (RealCut(Rational(target)) > hi1) continue;
      // kk large atoms in the target-length split: the value intervals
      // (lo1, hi1] and (target + kk (alpha - 1), target + kk alpha] must meet
      Int kk_lo = ((lo1 - RealCut(Rational(target))) / d.alpha).floor() + 1;
      if (kk_lo < 1) kk_lo = 1;
      Int kk_hi = ((hi1 - RealCut(Rational(target))) / (d.alpha - RealCut(1))).ceil() - 1;
      if (kk_hi > target) kk_hi = target;
      for (Int kk = kk_lo; kk <= kk_hi && !found && !out_of_bounds; ++kk) {
        RealCut lo2 = RealCut(Rational(target - kk)) + RealCut(Rational(kk)) * d.alpha;
        RealCut hi2 = RealCut(Rational(target - kk)) + RealCut(Rational(kk)) * one_alpha;
        RealCut lo = lo1 < lo2 ? lo2 : lo1;
        RealCut hi = hi1 < hi2 ? hi1 : hi2;
        if (!(lo < hi)) continue;
        for (Int dd = 2; dd <= budget.denom_cap && !found && !out_of_bounds; ++dd) {
          Rational x(floor_mul(Rational(dd), hi), dd);
          if (RealCut(x) > lo) try_value(x);
        }
      }
    }
    if (out_of_bounds) {
      r.verdict = ClaimCheckResult::Verdict::Fail;
      r.detail = "observed length " + bad_length.str() + " of " + bad_source.str() +
                 " falls outside [lambda_n, rho_n]";
      r.witness_value = bad_source;
      return r;
    }
  }

  if (uncovered > 0) {
    std::string gaps;
    long listed = 0;
    for (long idx = 0; idx < span && listed < 5; ++idx)
      if (!covered[static_cast<std::size_t>(idx)]) {
        if (listed) gaps += ",";
        gaps += (lambda_n + idx).str();
        ++listed;
      }
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = std::to_string(uncovered) + " lengths in [lambda_n, rho_n] not witnessed " +
               "within the denominator cap (first: " + gaps + ")";
    return r;
  }
  r.verdict = ClaimCheckResult::Verdict::Pass;
  r.detail = "U_" + n.str() + " covers [" + lambda_n.str() + ", " + rho_n.str() +
             "]; every length witnessed by a certified length set";
  r.witness_value = Rational(rho_n);
  return r;
}

// ---- paired lengths at even integers ----

ClaimCheckResult verify_two_in_lengths(const FamilyInstance& fam, long i) {
  const auto* tp = std::get_if<Thm312Params>(&fam.provenance);
  if (!tp) throw std::invalid_argument("verify_two_in_lengths: not a thm312 instance");
  auto [aRC, b] = fam.level(i);
  Rational lo(Int(i) * b - 1, b), hi(Int(i) * b + 1, b);
  Rational target(2 * i);
  ClaimCheckResult r = base_result("two-in-lengths/thm312/i=" + pad3(Int(i)),
                                   "b_i=" + b.str() + ", target=" + target.str());
  Monoid m = fam.monoid();
  if (m.is_atom(lo) && m.is_atom(hi)) {
    r.verdict = ClaimCheckResult::Verdict::Pass;
    r.detail = target.str() + " = " + lo.str() + " + " + hi.str() + ", both atoms";
    Factorization z;
    z.terms[lo] = 1;
    z.terms[hi] = 1;
    r.witness = z;
    r.witness_value = target;
    return r;
  }
  // exhaustive fallback: scan every atom pair below the target
  Int db = tp->bs.kind == SequenceRule::Kind::Explicit
               ? *std::max_element(tp->bs.ints.begin(), tp->bs.ints.end())
               : pow2i(2 * i);
  AtomList al = m.atoms_below(RealCut(target), db);
  if (!al.complete) {
    r.verdict = ClaimCheckResult::Verdict::Inconclusive;
    r.detail = "atom list below the target is not certified complete";
    return r;
  }
  std::set<Rational> atoms(al.atoms.begin(), al.atoms.end());
  for (const Rational& a : al.atoms) {
    Rational c = target - a;
    if (c < a) break;
    if (atoms.count(c)) {
      r.verdict = ClaimCheckResult::Verdict::Pass;
      r.detail = target.str() + " = " + a.str() + " + " + c.str() + ", both atoms";
      Factorization z;
      ++z.terms[a];
      ++z.terms[c];
      r.witness = z;
      r.witness_value = target;
      return r;
    }
  }
  SearchBudget lb;
  lb.value_cap = RealCut(target + Rational(1));
  lb.denom_cap = db;
  CertifiedSet<Int> L = lengths(m, target, lb);
  r.verdict = ClaimCheckResult::Verdict::Fail;
  r.detail = "no two atoms sum to " + target.str() + "; L(" + target.str() + ") = {" +
             join_ints(L.items) + "}" + (L.exact() ? "" : " (truncated)");
  r.witness_value = target;
  return r;
}

// ---- counterexample battery ----

std::vector<ClaimCheckResult> verify_counterexamples() {
  std::vector<ClaimCheckResult> out;

  {  // prime reciprocals: divisor chains stabilize but lengths are unbounded
    ClaimCheckResult r = base_result("counterexample/ex36a/accp-not-bf", "prime bound 5 for L(1)");
    Monoid m5{MonoidSpec(PrimeReciprocal{Int(5)})};
    CertifiedSet<Int> L = lengths(m5, Rational(1));
    bool ok = L.exact() && L.items == std::vector<Int>{2, 3, 5};
    ClassifyReport c = FamilyInstance::ex36a().monoid().classify();
    ok = ok && c.bf == Verdict::No && c.strongly_primary == Verdict::No &&
         c.inf_positive == Verdict::No;
    r.verdict = ok ? ClaimCheckResult::Verdict::Pass : ClaimCheckResult::Verdict::Fail;
    r.detail = "L(1) over primes <= 5 is {2,3,5}; p sits in L(1) for every prime p, "
               "so lengths are unbounded and the monoid is not BF";
    r.witness = single_term(Rational(1, 5), 5);
    r.witness_value = Rational(1);
    out.push_back(std::move(r));
  }

  {  // prime fractions: BF core whose atoms shrink below every 1/p
    ClaimCheckResult r = base_result("counterexample/ex36b/bf-with-vanishing-atoms",
                                     "fractions=2/5,3/11,5/29");
    FamilyInstance f = FamilyInstance::ex36b();
    Monoid m = f.monoid();
    const auto& fr = std::get<Ex36bParams>(f.provenance).fractions;
    bool ok = true;
    Rational prev(1);
    Rational last;
    for (const auto& [p, q] : fr) {
      Rational g(p, q);
      ok = ok && m.is_atom(g) && g < prev && g < Rational(Int(1), p);
      prev = g;
      last = g;
    }
    ok = ok && m.classify().bf == Verdict::Yes;
    r.verdict = ok ? ClaimCheckResult::Verdict::Pass : ClaimCheckResult::Verdict::Fail;
    r.detail = "core atoms 2/5 > 3/11 > 5/29 with each p/q below 1/p; longer lists "
               "push atoms toward 0 while every finite core stays BF";
    r.witness_value = last;
    out.push_back(std::move(r));
  }

  {  // geometric powers: geometric sums factor uniquely, so 1 never divides them
    ClaimCheckResult r = base_result("counterexample/ex36c/unique-power-sums", "r=3/2");
    Monoid m = FamilyInstance::ex36c(Rational(3, 2)).monoid();
    bool ok = true;
    Rational ratio(3, 2), acc(0), rp = ratio;
    std::optional<Factorization> zwit;
    Rational xwit;
    for (int k = 1; k <= 4; ++k) {
      acc += rp;
      rp *= ratio;
      if (k < 2) continue;
      CertifiedSet<Factorization> Z = factorizations(m, acc);
      ok = ok && Z.exact() && Z.items.size() == 1 && !m.member(acc - Rational(1));
      if (k == 3 && !Z.items.empty()) {
        zwit = Z.items.front();
        xwit = acc;
      }
    }
    ok = ok && m.classify().strongly_primary == Verdict::No;
    r.verdict = ok ? ClaimCheckResult::Verdict::Pass : ClaimCheckResult::Verdict::Fail;
    r.detail = "r + ... + r^n factors uniquely for n = 2, 3, 4 (values 15/4, 57/8, "
               "195/16), so 1 divides none of them and no n-fold sum set lands in 1 + H";
    r.witness = zwit;
    r.witness_value = xwit;
    out.push_back(std::move(r));
  }

  {  // unit-plus-reciprocal generators: tame degree of 1 exceeds every prime
    ClaimCheckResult r = base_result("counterexample/ex313/unbounded-tame-degree",
                                     "primes 2,3,5,7,11,13");
    bool ok = true;
    for (long p : {2, 3, 5, 7, 11, 13}) {
      Monoid core{MonoidSpec(FinitelyGenerated{{Rational(1), Rational(p + 1, p)}})};
      Rational a(p + 1, p);
      ok = ok && core.is_atom(a) && core.is_atom(Rational(1));
      ok = ok && core.member(Rational(p));  // p copies of a give p + 1, and 1 divides it
      for (long j = 1; j < p && ok; ++j)    // no strict sub-sum is divisible by 1
        ok = ok && !core.member(Rational(j * (p + 1) - p, p));
      CertifiedSet<Int> L = lengths(core, Rational(p));
      ok = ok && L.exact() && L.items == std::vector<Int>{Int(p)};
    }
    Monoid core13{MonoidSpec(FinitelyGenerated{{Rational(1), Rational(14, 13)}})};
    TameReport t13 = tame_degree(core13, Rational(1));
    ok = ok && t13.value_kind == TameReport::Value::Exact && t13.value == 14;
    r.verdict = ok ? ClaimCheckResult::Verdict::Pass : ClaimCheckResult::Verdict::Fail;
    r.detail = "p copies of (p+1)/p form a minimal configuration over 1 whose remainder "
               "p factors only as p units, so t(1) >= p for each listed prime; denominator "
               "balance forces the same count in any extension by other primes; the p = 13 "
               "core has exact tame degree 14";
    r.witness = single_term(Rational(14, 13), 13);
    r.witness_value = Rational(14);
    out.push_back(std::move(r));
  }

  std::sort(out.begin(), out.end(),
            [](const ClaimCheckResult& a, const ClaimCheckResult& b) {
              return a.claim_id < b.claim_id;
            });
  return out;
}

// ---- full battery ----

std::vector<ClaimCheckResult> run_claim_suite(const SearchBudget& budget) {
  std::vector<ClaimCheckResult> out;

  FamilyInstance t312 = FamilyInstance::thm312();
  out.push_back(verify_atom_window(t312, 2));
  out.push_back(verify_M_bound(t312, {Rational(3, 2)}, budget));
  for (long i = 1; i <= 6; ++i) out.push_back(verify_two_in_lengths(t312, i));

  FamilyInstance p4 = FamilyInstance::prop39({0, 1, 2, 7});
  out.push_back(verify_atom_window(p4, 3));
  out.push_back(verify_M_bound(p4, {Rational(1)}, budget));

  FamilyInstance p5 = FamilyInstance::prop39();
  for (long nn = 2; nn <= 4; ++nn) out.push_back(verify_tau_lower_bound(p5, nn, budget));

  FamilyInstance e37 = FamilyInstance::ex37(SequenceRule::explicit_cuts({RealCut(1)}),
                                            SequenceRule::pow2());
  out.push_back(verify_atom_window(e37, 1));
  out.push_back(verify_M_bound(e37, {Rational(1)}, budget));

  FamilyInstance e44 = FamilyInstance::ex44(RealCut::quad(Rational(1), Rational(1), 2));
  for (Int nn = 5; nn <= 40; ++nn) out.push_back(verify_rho_formula(e44, nn));
  for (Int nn = 324; nn <= 334; ++nn) out.push_back(verify_lambda_formula(e44, nn));
  out.push_back(verify_union_interval(e44, 324, budget));
  out.push_back(verify_union_interval(e44, 330, budget));

  for (ClaimCheckResult& c : verify_counterexamples()) out.push_back(std::move(c));

  std::sort(out.begin(), out.end(),
            [](const ClaimCheckResult& a, const ClaimCheckResult& b) {
              return a.claim_id < b.claim_id;
            });
  return out;
}

}  // namespace puiseux
