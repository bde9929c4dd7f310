#include "puiseux/monoid.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace puiseux {

namespace {

// ---- small number-theory helpers ----

Int ipow(const Int& base, long e) {
  Int r = 1;
  for (long i = 0; i < e; ++i) r *= base;
  return r;
}

Int pow2i(long e) { return Int(1) << e; }

bool is_pow2(const Int& d, long* e = nullptr) {
  if (d <= 0) return false;
  if ((d & (d - 1)) != 0) return false;
  if (e) {
    long k = 0;
    for (Int t = d; t > 1; t >>= 1) ++k;
    *e = k;
  }
  return true;
}

std::vector<Int> divisors(const Int& n) {
  std::vector<Int> out;
  for (Int i = 1; i * i <= n; ++i) {
    if (n % i == 0) {
      out.push_back(i);
      if (i * i != n) out.push_back(n / i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_prime_int(const Int& p) {
  if (p < 2) return false;
  for (Int i = 2; i * i <= p; ++i)
    if (p % i == 0) return false;
  return true;
}

std::vector<Int> primes_upto(const Int& b) {
  std::vector<Int> out;
  for (Int p = 2; p <= b; ++p)
    if (is_prime_int(p)) out.push_back(p);
  return out;
}

// Inverse of a modulo m; gcd(a, m) = 1 required.
Int mod_inv(Int a, const Int& m) {
  a %= m;
  if (a < 0) a += m;
  Int r0 = m, r1 = a, s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    Int s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  s0 %= m;
  if (s0 < 0) s0 += m;
  return s0;
}

// Prime factors of d when squarefree; false when d has a square factor.
bool squarefree_factors(Int d, std::vector<Int>* out) {
  for (Int p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return false;
      if (out) out->push_back(p);
    }
  }
  if (d > 1 && out) out->push_back(d);
  return true;
}

std::string int_str(const Int& n) { return n.str(); }

// ---- engine declarations ----

struct FgEngine {
  std::vector<Rational> gens;   // sorted ascending
  Rational unit;                // reduced d/L scale between H and N_0 copy
  std::vector<Int> sgens;       // coprime integer generators, sorted
  std::vector<bool> reach;      // membership table of the scaled monoid
  Int table_bound = 0;          // reach covers [0, table_bound)
  Int frobenius = -1;           // largest gap of the scaled monoid, -1 if none
  std::vector<Int> min_gens;    // minimal generators of the scaled monoid

  bool member(const Rational& x) const;
  bool is_atom(const Rational& u) const;
  AtomList atoms_below(const RealCut& bound, const Int& db) const;
  ClosureDescription closure() const;
  bool closure_member(const Rational& x) const;
  ConductorDescription conductor() const;
  ClassifyReport classify() const;
  RealCut positive_infimum(bool* att) const;
  std::optional<std::pair<RealCut, bool>> atom_supremum() const;
  const char* name() const { return "finitely_generated"; }
};

struct LatEngine {
  struct Level {
    RealCut alpha;
    Int b;
  };
  enum class Tail { None, Constant, Thm312, Pow2, Prop39 };

  std::vector<Level> levels;  // concrete prefix, source order
  Tail tail = Tail::None;
  long tail_index = 0;                // first source index of the tail levels
  RealCut tail_alpha;                 // Constant tail threshold
  std::optional<Rational> horizon;    // Prop39: certified strictly below this

  RealCut tail_alpha_at(long i) const;
  bool member(const Rational& x) const;
  bool is_atom(const Rational& u) const;
  AtomList atoms_below(const RealCut& bound, const Int& db) const;
  ClosureDescription closure() const;
  bool closure_member(const Rational& x) const;
  ConductorDescription conductor() const;
  ClassifyReport classify() const;
  RealCut positive_infimum(bool* att) const;
  std::optional<std::pair<RealCut, bool>> atom_supremum() const;
  const char* name() const { return "lattice_union"; }

  std::vector<Rational> prefix_atoms() const;  // exact, prefix levels only
  std::vector<std::pair<RealCut, Int>> levels_below(const RealCut& bound,
                                                    const Int& db) const;
};

struct ItEngine {
  RealCut alpha;

  bool member(const Rational& x) const;
  bool is_atom(const Rational& u) const;
  AtomList atoms_below(const RealCut& bound, const Int& db) const;
  ClosureDescription closure() const;
  bool closure_member(const Rational& x) const;
  ConductorDescription conductor() const;
  ClassifyReport classify() const;
  RealCut positive_infimum(bool* att) const;
  std::optional<std::pair<RealCut, bool>> atom_supremum() const;
  const char* name() const { return "irrational_threshold"; }
};

struct DtEngine {
  RealCut sigma;
  bool strict = true;  // canonical: irrational sigma is stored strict

  bool member(const Rational& x) const;
  bool is_atom(const Rational& u) const;
  AtomList atoms_below(const RealCut& bound, const Int& db) const;
  ClosureDescription closure() const;
  bool closure_member(const Rational& x) const;
  ConductorDescription conductor() const;
  ClassifyReport classify() const;
  RealCut positive_infimum(bool* att) const;
  std::optional<std::pair<RealCut, bool>> atom_supremum() const;
  const char* name() const { return "dense_threshold"; }
};

struct PrEngine {
  std::optional<Int> bound;
  std::vector<Int> primes;  // primes <= bound when bounded

  bool member(const Rational& x) const;
  bool is_atom(const Rational& u) const;
  AtomList atoms_below(const RealCut& bnd, const Int& db) const;
  ClosureDescription closure() const;
  bool closure_member(const Rational& x) const;
  ConductorDescription conductor() const;
  ClassifyReport classify() const;
  RealCut positive_infimum(bool* att) const;
  std::optional<std::pair<RealCut, bool>> atom_supremum() const;
  const char* name() const { return "prime_reciprocal"; }
};

struct GpEngine {
  Rational r;
  Int p, q;

  Rational rpow(long i) const { return Rational(ipow(p, i), ipow(q, i)); }
  bool member(const Rational& x) const;
  bool is_atom(const Rational& u) const;
  AtomList atoms_below(const RealCut& bound, const Int& db) const;
  ClosureDescription closure() const;
  bool closure_member(const Rational& x) const;
  ConductorDescription conductor() const;
  ClassifyReport classify() const;
  RealCut positive_infimum(bool* att) const;
  std::optional<std::pair<RealCut, bool>> atom_supremum() const;
  const char* name() const { return "geometric"; }
};

using Engine = std::variant<FgEngine, LatEngine, ItEngine, DtEngine, PrEngine, GpEngine>;

void set_att(bool* att, bool v) {
  if (att) *att = v;
}

// ---- finitely generated engine ----

FgEngine build_fg(const FinitelyGenerated& fg) {
  if (fg.generators.empty())
    throw std::invalid_argument("finitely generated spec needs at least one generator");
  FgEngine e;
  e.gens = fg.generators;
  std::sort(e.gens.begin(), e.gens.end());
  for (const Rational& g : e.gens)
    if (g.sign() <= 0) throw std::invalid_argument("generators must be positive");
  if (std::adjacent_find(e.gens.begin(), e.gens.end()) != e.gens.end())
    throw std::invalid_argument("generators must be pairwise distinct");

  std::vector<Int> dens, nums;
  for (const Rational& g : e.gens) dens.push_back(g.den());
  Int L = lcm_set(dens);
  for (const Rational& g : e.gens) nums.push_back(g.num() * (L / g.den()));
  Int d = gcd_set(nums);
  e.unit = Rational(d, L);
  for (const Int& n : nums) e.sgens.push_back(n / d);
  std::sort(e.sgens.begin(), e.sgens.end());

  Int B = e.sgens.front() * e.sgens.back() + 1;
  if (B > (Int(1) << 24))
    throw std::invalid_argument("finitely generated spec too large for exact tables");
  e.table_bound = B;
  std::size_t n = B.convert_to<std::size_t>();
  e.reach.assign(n, false);
  e.reach[0] = true;
  for (std::size_t y = 1; y < n; ++y)
    for (const Int& g : e.sgens) {
      std::size_t gs = g.convert_to<std::size_t>();
      if (gs <= y && e.reach[y - gs]) {
        e.reach[y] = true;
        break;
      }
    }
  e.frobenius = -1;
  for (std::size_t y = n; y-- > 1;)
    if (!e.reach[y]) {
      e.frobenius = Int(static_cast<unsigned long long>(y));
      break;
    }
  for (const Int& g : e.sgens) {
    bool split = false;
    for (Int a = e.sgens.front(); !split && 2 * a <= g; ++a)
      split = e.reach[a.convert_to<std::size_t>()] &&
              e.reach[(g - a).convert_to<std::size_t>()];
    if (!split) e.min_gens.push_back(g);
  }
  return e;
}

bool FgEngine::member(const Rational& x) const {
  if (x.sign() < 0) return false;
  if (x.is_zero()) return true;
  Rational y = x / unit;
  if (!y.is_integer()) return false;
  Int v = y.num();
  if (v >= table_bound) return true;
  return reach[v.convert_to<std::size_t>()];
}

bool FgEngine::is_atom(const Rational& u) const {
  Rational y = u / unit;
  if (y.sign() <= 0 || !y.is_integer()) return false;
  return std::binary_search(min_gens.begin(), min_gens.end(), y.num());
}

AtomList FgEngine::atoms_below(const RealCut& bound, const Int& db) const {
  AtomList out;
  out.complete_below = bound;
  out.complete = true;
  for (const Int& g : min_gens) {
    Rational a = unit * Rational(g);
    if (RealCut(a) > bound) continue;
    if (a.den() <= db)
      out.atoms.push_back(a);
    else
      out.complete = false;  // an atom below the bound is denominator-capped out
  }
  return out;
}

ClosureDescription FgEngine::closure() const {
  ClosureDescription c;
  c.scale_n = unit.num();
  c.denominators.kind = DenominatorRule::Kind::FiniteSet;
  c.denominators.set = divisors(unit.den());
  c.quotient_group =
      unit.is_integer() ? int_str(unit.num()) + "*Z" : "(" + unit.str() + ")*Z";
  return c;
}

bool FgEngine::closure_member(const Rational& x) const {
  if (x.sign() < 0) return false;
  return (x / unit).is_integer();
}

ConductorDescription FgEngine::conductor() const {
  ConductorDescription c;
  if (frobenius < 0) {
    c.status = ConductorDescription::Status::Whole;
  } else {
    c.status = ConductorDescription::Status::Threshold;
    c.sigma = RealCut(unit * Rational(frobenius));
    c.attained = true;
  }
  return c;
}

ClassifyReport FgEngine::classify() const {
  ClassifyReport r;
  Verdict whole = frobenius < 0 ? Verdict::Yes : Verdict::No;
  r.valuation = whole;
  r.seminormal = whole;
  r.bf = Verdict::Yes;
  r.strongly_primary = Verdict::Yes;
  r.conductor_nonempty = Verdict::Yes;
  r.inf_positive = Verdict::Yes;
  return r;
}

RealCut FgEngine::positive_infimum(bool* att) const {
  set_att(att, true);
  return RealCut(gens.front());
}

std::optional<std::pair<RealCut, bool>> FgEngine::atom_supremum() const {
  return std::make_pair(RealCut(unit * Rational(min_gens.back())), true);
}

// ---- lattice union engine ----

LatEngine build_lattice(const LatticeUnion& lu) {
  using Kind = SequenceRule::Kind;
  const SequenceRule& as = lu.alphas;
  const SequenceRule& bs = lu.bs;
  if (bs.kind != Kind::Explicit && bs.kind != Kind::PowersOfTwo)
    throw std::invalid_argument("lattice union: bs rule must be explicit or pow2");
  if (as.kind == Kind::Explicit) {
    if (as.cuts.empty())
      throw std::invalid_argument("lattice union: explicit alphas must be non-empty");
    for (const RealCut& a : as.cuts)
      if (a.sign() <= 0)
        throw std::invalid_argument("lattice union: alphas must be positive");
    try {
      for (std::size_t i = 0; i + 1 < as.cuts.size(); ++i)
        for (std::size_t j = i + 1; j < as.cuts.size(); ++j)
          (void)(as.cuts[i] < as.cuts[j]);
    } catch (const std::domain_error&) {
      throw std::invalid_argument("lattice union: alphas must be pairwise comparable");
    }
  }
  if (bs.kind == Kind::Explicit) {
    if (bs.ints.empty())
      throw std::invalid_argument("lattice union: explicit bs must be non-empty");
    for (const Int& b : bs.ints)
      if (b < 1) throw std::invalid_argument("lattice union: bs must be positive");
    for (std::size_t i = 0; i + 1 < bs.ints.size(); ++i)
      if (bs.ints[i + 1] % bs.ints[i] != 0)
        throw std::invalid_argument("lattice union: bs must form a divisibility chain");
  }

  LatEngine e;
  if (as.kind == Kind::Prop39) {
    if (bs.kind != Kind::PowersOfTwo)
      throw std::invalid_argument("lattice union: prop39 alphas require pow2 bs");
    const std::vector<Int>& k = as.ints;
    if (k.empty() || k.front() != 0)
      throw std::invalid_argument("lattice union: prop39 seed must start with 0");
    for (std::size_t i = 1; i < k.size(); ++i)
      if (k[i] <= k[i - 1] || 2 * k[i] <= 3 * k[i - 1] * k[i - 1])
        throw std::invalid_argument(
            "lattice union: prop39 seed must grow faster than (3/2)k^2");
    for (std::size_t j = 0; j < k.size(); ++j) {
      // level 0 is N_0; cutting the integer lattice at 1 is the same set and
      // keeps the per-level atom window valid
      if (j == 0)
        e.levels.push_back({RealCut(1), Int(1)});
      else
        e.levels.push_back({RealCut(Rational(k[j])), pow2i(static_cast<long>(j))});
    }
    e.tail = LatEngine::Tail::Prop39;
    Int km = k.back();
    Int h = (3 * km * km) / 2 + 1;
    if (h < km + 1) h = km + 1;
    e.horizon = Rational(h);
    return e;
  }

  if (bs.kind == Kind::Explicit) {
    std::size_t nlev = bs.ints.size();
    if (as.kind == Kind::Explicit && as.cuts.size() > nlev)
      throw std::invalid_argument("lattice union: more alphas than bs entries");
    for (std::size_t i = 0; i < nlev; ++i) {
      const Int& b = bs.ints[i];
      RealCut a;
      switch (as.kind) {
        case Kind::Explicit:
          a = as.cuts[std::min(i, as.cuts.size() - 1)];
          break;
        case Kind::Thm312:
          if (b < 2)
            throw std::invalid_argument("lattice union: thm312 alphas need b >= 2");
          a = RealCut(Rational(Int(i + 1) * b - 1, b));
          break;
        case Kind::PowersOfTwo:
          a = RealCut(Rational(pow2i(static_cast<long>(i) + 1)));
          break;
        case Kind::Prop39:
          break;  // handled above
      }
      e.levels.push_back({a, b});
    }
    e.tail = LatEngine::Tail::None;
    return e;
  }

  // bs = powers of two, infinitely many levels
  switch (as.kind) {
    case Kind::Explicit: {
      for (std::size_t i = 0; i < as.cuts.size(); ++i)
        e.levels.push_back({as.cuts[i], pow2i(static_cast<long>(i) + 1)});
      e.tail = LatEngine::Tail::Constant;
      e.tail_index = static_cast<long>(as.cuts.size()) + 1;
      e.tail_alpha = as.cuts.back();
      break;
    }
    case Kind::Thm312:
      e.tail = LatEngine::Tail::Thm312;
      e.tail_index = 1;
      break;
    case Kind::PowersOfTwo:
      e.tail = LatEngine::Tail::Pow2;
      e.tail_index = 1;
      break;
    case Kind::Prop39:
      break;  // handled above
  }
  return e;
}

RealCut LatEngine::tail_alpha_at(long i) const {
  switch (tail) {
    case Tail::Constant:
      return tail_alpha;
    case Tail::Thm312:
      return RealCut(Rational(Int(i) * pow2i(i) - 1, pow2i(i)));
    case Tail::Pow2:
      return RealCut(Rational(pow2i(i)));
    default:
      throw std::logic_error("tail_alpha_at: no tail");
  }
}

std::vector<std::pair<RealCut, Int>> LatEngine::levels_below(const RealCut& bound,
                                                             const Int& db) const {
  std::vector<std::pair<RealCut, Int>> out;
  for (const Level& lv : levels)
    if (lv.alpha <= bound) out.emplace_back(lv.alpha, lv.b);
  switch (tail) {
    case Tail::None:
      break;
    case Tail::Prop39:
      if (bound >= RealCut(*horizon))
        throw std::domain_error(
            "levels_below: bound reaches levels beyond the certified horizon");
      break;
    case Tail::Constant:
      if (tail_alpha <= bound)
        for (long i = tail_index; pow2i(i) <= db; ++i)
          out.emplace_back(tail_alpha, pow2i(i));
      break;
    case Tail::Thm312:
    case Tail::Pow2:
      for (long i = tail_index; tail_alpha_at(i) <= bound; ++i)
        if (pow2i(i) <= db) out.emplace_back(tail_alpha_at(i), pow2i(i));
      break;
  }
  return out;
}

bool LatEngine::member(const Rational& x) const {
  if (x.sign() < 0) return false;
  if (x.is_zero()) return true;
  Int d = x.den();
  RealCut xc{x};
  for (const Level& lv : levels)
    if (lv.b % d == 0 && xc >= lv.alpha) return true;
  switch (tail) {
    case Tail::None:
      return false;
    case Tail::Prop39:
      if (x >= *horizon)
        throw std::domain_error("lattice union: membership of " + x.str() +
                                " depends on levels beyond the certified horizon");
      return false;
    case Tail::Constant: {
      if (!is_pow2(d)) return false;
      return xc >= tail_alpha;
    }
    case Tail::Thm312:
    case Tail::Pow2: {
      long ex = 0;
      if (!is_pow2(d, &ex)) return false;
      long i0 = std::max(tail_index, ex);
      return xc >= tail_alpha_at(i0);
    }
  }
  return false;
}

bool LatEngine::is_atom(const Rational& u) const {
  if (u.sign() <= 0) return false;
  if (!member(u)) return false;
  if (horizon && u > *horizon)
    throw std::domain_error("lattice union: atom status of " + u.str() +
                            " depends on levels beyond the certified horizon");
  Rational half = u / 2;
  RealCut halfc{half};
  // split with the smaller part hosted by a concrete level
  auto scan = [&](const RealCut& alpha, const Int& b) -> bool {
    if (alpha > halfc) return false;
    Int j = ceil_mul(Rational(b), alpha);
    if (j < 1) j = 1;
    Int j_hi = floor_mul(Rational(b), halfc);
    for (; j <= j_hi; ++j)
      if (member(u - Rational(j, b))) return true;
    return false;
  };
  for (const Level& lv : levels)
    if (scan(lv.alpha, lv.b)) return false;
  if (tail == Tail::Thm312 || tail == Tail::Pow2) {
    for (long i = tail_index; tail_alpha_at(i) <= halfc; ++i)
      if (scan(tail_alpha_at(i), pow2i(i))) return false;
  } else if (tail == Tail::Constant) {
    // both parts in the tail: possible iff u exceeds twice the threshold, or
    // meets it exactly at a dyadic midpoint
    RealCut twice = tail_alpha * RealCut(2);
    RealCut uc{u};
    if (uc > twice) return false;
    if (uc == twice && is_pow2(half.den())) return false;
    // smaller part in the tail, larger part hosted by a prefix level
    for (const Level& lv : levels) {
      Int j = ceil_mul(Rational(lv.b), lv.alpha);
      Int j_half = ceil_mul(Rational(lv.b), halfc);
      if (j_half > j) j = j_half;
      Int j_hi = floor_mul(Rational(lv.b), uc - tail_alpha);
      for (; j <= j_hi; ++j) {
        Rational y = u - Rational(j, lv.b);
        if (y.sign() > 0 && is_pow2(y.den())) return false;
      }
    }
  }
  return true;
}

AtomList LatEngine::atoms_below(const RealCut& bound, const Int& db) const {
  AtomList out;
  out.complete_below = bound;
  out.complete = true;
  std::set<Rational> got;
  // enumerate one level window [alpha, 2 alpha + 1) clipped at the bound;
  // tests every lattice candidate so denominator-capped atoms flip `complete`
  auto scan = [&](const RealCut& alpha, const Int& b) {
    if (alpha > bound) return;
    Int j = ceil_mul(Rational(b), alpha);
    if (j < 1) j = 1;
    Int j_hi = floor_mul(Rational(b), bound);
    Int j_win = ceil_mul(Rational(b), alpha * RealCut(2) + RealCut(1)) - 1;
    if (j_win < j_hi) j_hi = j_win;
    if (horizon) {
      Int j_hor = floor_mul(Rational(b), RealCut(*horizon));
      if (j_hor < j_hi) j_hi = j_hor;
    }
    for (; j <= j_hi; ++j) {
      Rational u(j, b);
      if (!is_atom(u)) continue;
      if (u.den() <= db)
        got.insert(u);
      else
        out.complete = false;
    }
  };
  for (const Level& lv : levels) scan(lv.alpha, lv.b);
  switch (tail) {
    case Tail::None:
      break;
    case Tail::Prop39:
      if (bound >= RealCut(*horizon)) {
        out.complete = false;
        out.note = "atom list certified only below the extension horizon " +
                   horizon->str();
      }
      break;
    case Tail::Thm312:
    case Tail::Pow2:
      for (long i = tail_index; tail_alpha_at(i) <= bound; ++i)
        scan(tail_alpha_at(i), pow2i(i));
      break;
    case Tail::Constant:
      if (tail_alpha <= bound) {
        long emax = 0;
        while (pow2i(emax + 1) <= db) ++emax;
        long lvl = std::max(tail_index, emax);
        scan(tail_alpha, pow2i(lvl));
        if (bound > tail_alpha) {
          out.complete = false;
          out.note =
              "atoms near the constant threshold occur at every power-of-two "
              "denominator";
        }
      }
      break;
  }
  out.atoms.assign(got.begin(), got.end());
  return out;
}

ClosureDescription LatEngine::closure() const {
  ClosureDescription c;
  c.scale_n = 1;
  if (tail == Tail::None) {
    Int B = levels.back().b;
    c.denominators.kind = DenominatorRule::Kind::DivisorsOf;
    c.denominators.base = B;
    c.quotient_group = "(1/" + int_str(B) + ")*Z";
  } else {
    c.denominators.kind = DenominatorRule::Kind::PowersOf;
    c.denominators.base = 2;
    c.quotient_group = "union over i of (1/2^i)*Z";
  }
  return c;
}

bool LatEngine::closure_member(const Rational& x) const {
  if (x.sign() < 0) return false;
  return closure().denominators.contains(x.den());
}

ConductorDescription LatEngine::conductor() const {
  ConductorDescription c;
  switch (tail) {
    case Tail::Constant:
      c.status = ConductorDescription::Status::Threshold;
      c.sigma = tail_alpha;
      c.attained = false;
      return c;
    case Tail::Thm312:
    case Tail::Pow2:
    case Tail::Prop39:
      // level thresholds are unbounded, so the closure misses points with
      // large denominators at every height
      c.status = ConductorDescription::Status::Empty;
      return c;
    case Tail::None:
      break;
  }
  std::optional<Rational> best;
  for (const Int& d : divisors(levels.back().b)) {
    std::optional<RealCut> m;
    for (const Level& lv : levels)
      if (lv.b % d == 0 && (!m || lv.alpha < *m)) m = lv.alpha;
    Int k = floor_mul(Rational(d), *m);
    if (k >= 1 && RealCut(Rational(k, d)) == *m) --k;
    while (k >= 1 && boost::multiprecision::gcd(k, d) != 1) --k;
    if (k >= 1) {
      Rational cand(k, d);
      if (!best || cand > *best) best = cand;
    }
  }
  if (!best) {
    c.status = ConductorDescription::Status::Whole;
  } else {
    c.status = ConductorDescription::Status::Threshold;
    c.sigma = RealCut(*best);
    c.attained = true;
  }
  return c;
}

ClassifyReport LatEngine::classify() const {
  ClassifyReport r;
  ConductorDescription cd = conductor();
  Verdict whole =
      cd.status == ConductorDescription::Status::Whole ? Verdict::Yes : Verdict::No;
  r.valuation = whole;
  r.seminormal = whole;
  r.bf = Verdict::Yes;
  r.strongly_primary = Verdict::Yes;  // level thresholds have a positive infimum
  r.conductor_nonempty =
      cd.status == ConductorDescription::Status::Empty ? Verdict::No : Verdict::Yes;
  r.inf_positive = Verdict::Yes;
  return r;
}

RealCut LatEngine::positive_infimum(bool* att) const {
  std::optional<RealCut> best;
  bool best_att = true;
  auto offer = [&](const RealCut& v, bool a) {
    if (!best || v < *best) {
      best = v;
      best_att = a;
    } else if (v == *best && a) {
      best_att = true;
    }
  };
  for (const Level& lv : levels) {
    Int j = ceil_mul(Rational(lv.b), lv.alpha);
    if (j < 1) j = 1;
    offer(RealCut(Rational(j, lv.b)), true);
  }
  switch (tail) {
    case Tail::None:
    case Tail::Prop39:
      break;
    case Tail::Constant:
      offer(tail_alpha, tail_alpha.is_rational() && is_pow2(tail_alpha.rational().den()));
      break;
    case Tail::Thm312:
    case Tail::Pow2:
      // the first tail threshold is itself a lattice point and later
      // thresholds only grow
      offer(tail_alpha_at(tail_index), true);
      break;
  }
  set_att(att, best_att);
  return *best;
}

std::vector<Rational> LatEngine::prefix_atoms() const {
  std::vector<Rational> out;
  std::set<Rational> got;
  for (const Level& lv : levels) {
    Int j = ceil_mul(Rational(lv.b), lv.alpha);
    if (j < 1) j = 1;
    Int j_hi = ceil_mul(Rational(lv.b), lv.alpha * RealCut(2) + RealCut(1)) - 1;
    for (; j <= j_hi; ++j) {
      Rational u(j, lv.b);
      if (is_atom(u)) got.insert(u);
    }
  }
  out.assign(got.begin(), got.end());
  return out;
}

std::optional<std::pair<RealCut, bool>> LatEngine::atom_supremum() const {
  switch (tail) {
    case Tail::Thm312:
    case Tail::Pow2:
    case Tail::Prop39:
      // each deep level contributes an atom just above its threshold
      return std::nullopt;
    case Tail::None: {
      std::vector<Rational> atoms = prefix_atoms();
      return std::make_pair(RealCut(atoms.back()), true);
    }
    case Tail::Constant: {
      // tail atoms fill [alpha_t, T') where T' caps both the tail-tail and
      // the tail-prefix splits
      std::optional<RealCut> emin;
      for (const Level& lv : levels) {
        Int j = ceil_mul(Rational(lv.b), lv.alpha);
        if (j < 1) j = 1;
        RealCut e{Rational(j, lv.b)};
        if (!emin || e < *emin) emin = e;
      }
      RealCut t_prime = tail_alpha * RealCut(2);
      if (emin && tail_alpha + *emin < t_prime) t_prime = tail_alpha + *emin;
      std::vector<Rational> atoms = prefix_atoms();
      if (!atoms.empty() && RealCut(atoms.back()) >= t_prime)
        return std::make_pair(RealCut(atoms.back()), true);
      return std::make_pair(t_prime, false);
    }
  }
  return std::nullopt;
}

// ---- irrational threshold engine ----

ItEngine build_it(const IrrationalThreshold& it) {
  if (it.alpha.is_rational())
    throw std::invalid_argument("irrational threshold: alpha must be irrational");
  if (it.alpha < RealCut(1))
    throw std::invalid_argument("irrational threshold: alpha must be >= 1");
  return ItEngine{it.alpha};
}

bool ItEngine::member(const Rational& x) const {
  if (x.sign() < 0) return false;
  if (x.is_integer()) return true;
  return RealCut(x) > alpha;
}

bool ItEngine::is_atom(const Rational& u) const {
  if (u == Rational(1)) return true;
  if (u.is_integer()) return false;
  RealCut uc{u};
  return uc > alpha && uc <= alpha + RealCut(1);
}

AtomList ItEngine::atoms_below(const RealCut& bound, const Int& db) const {
  AtomList out;
  out.complete_below = bound;
  out.complete = false;
  out.note = "atoms are 1 and every non-integer rational in (alpha, alpha+1]";
  std::set<Rational> got;
  if (RealCut(1) <= bound) got.insert(Rational(1));
  RealCut hi = alpha + RealCut(1);
  if (bound < hi) hi = bound;
  for (Int d = 2; d <= db; ++d) {
    Int k = floor_mul(Rational(d), alpha) + 1;  // strict: alpha is irrational
    Int k_hi = floor_mul(Rational(d), hi);
    for (; k <= k_hi; ++k) {
      Rational u(k, d);
      if (!u.is_integer() && u.den() <= db) got.insert(u);
    }
  }
  out.atoms.assign(got.begin(), got.end());
  return out;
}

ClosureDescription ItEngine::closure() const {
  ClosureDescription c;
  c.scale_n = 1;
  c.denominators.kind = DenominatorRule::Kind::All;
  c.quotient_group = "Q";
  return c;
}

bool ItEngine::closure_member(const Rational& x) const { return x.sign() >= 0; }

ConductorDescription ItEngine::conductor() const {
  ConductorDescription c;
  c.status = ConductorDescription::Status::Threshold;
  c.sigma = alpha;
  c.attained = false;
  return c;
}

ClassifyReport ItEngine::classify() const {
  ClassifyReport r;
  r.valuation = Verdict::No;
  r.seminormal = Verdict::No;
  r.bf = Verdict::Yes;
  r.strongly_primary = Verdict::Yes;
  r.conductor_nonempty = Verdict::Yes;
  r.inf_positive = Verdict::Yes;
  return r;
}

RealCut ItEngine::positive_infimum(bool* att) const {
  set_att(att, true);
  return RealCut(1);
}

std::optional<std::pair<RealCut, bool>> ItEngine::atom_supremum() const {
  return std::make_pair(alpha + RealCut(1), false);
}

// ---- dense threshold engine ----

DtEngine build_dt(const DenseThreshold& dt) {
  if (dt.sigma.sign() < 0)
    throw std::invalid_argument("dense threshold: sigma must be >= 0");
  DtEngine e{dt.sigma, dt.strict};
  if (!e.sigma.is_rational()) e.strict = true;  // >= and > coincide off Q
  return e;
}

bool DtEngine::member(const Rational& x) const {
  if (x.sign() < 0) return false;
  if (x.is_zero()) return true;
  RealCut xc{x};
  return strict ? xc > sigma : xc >= sigma;
}

bool DtEngine::is_atom(const Rational& u) const {
  if (sigma.is_zero() || u.sign() <= 0) return false;
  RealCut uc{u};
  RealCut twice = sigma * RealCut(2);
  return strict ? (uc > sigma && uc <= twice) : (uc >= sigma && uc < twice);
}

AtomList DtEngine::atoms_below(const RealCut& bound, const Int& db) const {
  AtomList out;
  out.complete_below = bound;
  if (sigma.is_zero()) {
    out.complete = true;
    out.note = "the monoid has no atoms";
    return out;
  }
  out.complete = false;
  out.note = strict ? "atoms are exactly the rationals in (sigma, 2*sigma]"
                    : "atoms are exactly the rationals in [sigma, 2*sigma)";
  std::set<Rational> got;
  RealCut twice = sigma * RealCut(2);
  for (Int d = 1; d <= db; ++d) {
    Int k, k_hi;
    if (strict) {
      k = floor_mul(Rational(d), sigma) + 1;
      k_hi = floor_mul(Rational(d), twice);
    } else {
      k = ceil_mul(Rational(d), sigma);
      k_hi = ceil_mul(Rational(d), twice) - 1;  // strict upper end
    }
    Int k_b = floor_mul(Rational(d), bound);
    if (k_b < k_hi) k_hi = k_b;
    for (; k <= k_hi; ++k) got.insert(Rational(k, d));
  }
  out.atoms.assign(got.begin(), got.end());
  return out;
}

ClosureDescription DtEngine::closure() const {
  ClosureDescription c;
  c.scale_n = 1;
  c.denominators.kind = DenominatorRule::Kind::All;
  c.quotient_group = "Q";
  return c;
}

bool DtEngine::closure_member(const Rational& x) const { return x.sign() >= 0; }

ConductorDescription DtEngine::conductor() const {
  ConductorDescription c;
  if (sigma.is_zero()) {
    c.status = ConductorDescription::Status::Whole;
    return c;
  }
  c.status = ConductorDescription::Status::Threshold;
  c.sigma = sigma;
  c.attained = strict && sigma.is_rational();
  return c;
}

ClassifyReport DtEngine::classify() const {
  ClassifyReport r;
  if (sigma.is_zero()) {
    r.valuation = Verdict::Yes;
    r.seminormal = Verdict::Yes;
    r.bf = Verdict::No;
    r.strongly_primary = Verdict::No;
    r.conductor_nonempty = Verdict::Yes;
    r.inf_positive = Verdict::No;
  } else {
    r.valuation = Verdict::No;
    r.seminormal = Verdict::No;
    r.bf = Verdict::Yes;
    r.strongly_primary = Verdict::Yes;
    r.conductor_nonempty = Verdict::Yes;
    r.inf_positive = Verdict::Yes;
  }
  return r;
}

RealCut DtEngine::positive_infimum(bool* att) const {
  set_att(att, !strict && !sigma.is_zero());
  return sigma;
}

std::optional<std::pair<RealCut, bool>> DtEngine::atom_supremum() const {
  RealCut twice = sigma * RealCut(2);
  if (sigma.is_zero()) return std::make_pair(RealCut(0), false);  // no atoms
  return std::make_pair(twice, strict && twice.is_rational());
}

// ---- prime reciprocal engine ----

PrEngine build_pr(const PrimeReciprocal& pr) {
  PrEngine e;
  e.bound = pr.prime_bound;
  if (e.bound) {
    if (*e.bound < 2)
      throw std::invalid_argument("prime reciprocal: prime_bound must be >= 2");
    e.primes = primes_upto(*e.bound);
  }
  return e;
}

bool PrEngine::member(const Rational& x) const {
  if (x.sign() < 0) return false;
  if (x.is_integer()) return true;
  std::vector<Int> ps;
  if (!squarefree_factors(x.den(), &ps)) return false;
  if (bound && ps.back() > *bound) return false;
  Rational t = x;
  for (const Int& p : ps) {
    Int cof = (x.den() / p) % p;
    Int r = (x.num() % p) * mod_inv(cof, p) % p;
    if (r < 0) r += p;
    t -= Rational(r, p);
  }
  return t.sign() >= 0;  // t is an integer by construction
}

bool PrEngine::is_atom(const Rational& u) const {
  if (u.num() != 1) return false;
  if (!is_prime_int(u.den())) return false;
  return !bound || u.den() <= *bound;
}

AtomList PrEngine::atoms_below(const RealCut& bnd, const Int& db) const {
  AtomList out;
  out.complete_below = bnd;
  std::vector<Int> ps = bound ? primes : primes_upto(db);
  for (const Int& p : ps) {
    Rational a(1, p);
    if (p <= db && RealCut(a) <= bnd) out.atoms.push_back(a);
  }
  std::sort(out.atoms.begin(), out.atoms.end());
  if (bound) {
    out.complete = true;
    for (const Int& p : primes)
      if (p > db && RealCut(Rational(1, p)) <= bnd) out.complete = false;
  } else {
    out.complete = false;
    out.note = "one atom 1/p for every prime p";
  }
  return out;
}

ClosureDescription PrEngine::closure() const {
  ClosureDescription c;
  c.scale_n = 1;
  if (bound) {
    Int prim = 1;
    for (const Int& p : primes) prim *= p;
    c.denominators.kind = DenominatorRule::Kind::DivisorsOf;
    c.denominators.base = prim;
    c.quotient_group = "(1/" + int_str(prim) + ")*Z";
  } else {
    c.denominators.kind = DenominatorRule::Kind::AllSquarefree;
    c.quotient_group = "union over squarefree d of (1/d)*Z";
  }
  return c;
}

bool PrEngine::closure_member(const Rational& x) const {
  if (x.sign() < 0) return false;
  return closure().denominators.contains(x.den());
}

ConductorDescription PrEngine::conductor() const {
  ConductorDescription c;
  if (!bound) {
    // denominators with many prime factors force sup(closure \ H) = infinity
    c.status = ConductorDescription::Status::Empty;
    return c;
  }
  Rational s(-1);
  for (const Int& p : primes) s += Rational(p - 1, p);
  if (s.sign() <= 0) {
    c.status = ConductorDescription::Status::Whole;
  } else {
    c.status = ConductorDescription::Status::Threshold;
    c.sigma = RealCut(s);
    c.attained = true;
  }
  return c;
}

ClassifyReport PrEngine::classify() const {
  ClassifyReport r;
  if (bound) {
    Verdict whole = conductor().status == ConductorDescription::Status::Whole
                        ? Verdict::Yes
                        : Verdict::No;
    r.valuation = whole;
    r.seminormal = whole;
    r.bf = Verdict::Yes;
    r.strongly_primary = Verdict::Yes;
    r.conductor_nonempty = Verdict::Yes;
    r.inf_positive = Verdict::Yes;
  } else {
    r.valuation = Verdict::No;
    r.seminormal = Verdict::No;
    r.bf = Verdict::No;  // p lies in L(1) for every prime p
    r.strongly_primary = Verdict::No;
    r.conductor_nonempty = Verdict::No;
    r.inf_positive = Verdict::No;
  }
  return r;
}

RealCut PrEngine::positive_infimum(bool* att) const {
  if (!bound) {
    set_att(att, false);
    return RealCut(0);
  }
  set_att(att, true);
  return RealCut(Rational(1, primes.back()));
}

std::optional<std::pair<RealCut, bool>> PrEngine::atom_supremum() const {
  return std::make_pair(RealCut(Rational(1, 2)), true);
}

// ---- geometric powers engine ----

GpEngine build_gp(const GeometricPowers& gp) {
  if (gp.ratio <= Rational(1) || gp.ratio.is_integer())
    throw std::invalid_argument("geometric: ratio must be a non-integer rational > 1");
  return GpEngine{gp.ratio, gp.ratio.num(), gp.ratio.den()};
}

bool GpEngine::member(const Rational& x) const {
  if (x.sign() < 0) return false;
  if (x.is_integer()) return true;
  long e = 0;
  Int dd = x.den();
  while (dd % q == 0) {
    dd /= q;
    ++e;
  }
  if (dd != 1) return false;
  // the canonical digit expansion has top index exactly e; peel it off
  Rational rem = x;
  for (long i = e; i >= 1; --i) {
    Int scaled = rem.num() * (ipow(q, i) / rem.den());  // rem * q^i, an integer
    Int pi = ipow(p, i) % q;
    Int c = scaled % q * mod_inv(pi, q) % q;
    if (c < 0) c += q;
    if (i == e && c == 0) return false;
    rem -= Rational(c) * rpow(i);
    if (rem.sign() < 0) return false;
  }
  return true;  // remainder is a non-negative integer: the digit at r^0
}

bool GpEngine::is_atom(const Rational& u) const {
  if (u.sign() <= 0) return false;
  if (u == Rational(1)) return true;
  long e = 0;
  Int dd = u.den();
  while (dd % q == 0) {
    dd /= q;
    ++e;
  }
  if (dd != 1 || e == 0) return false;
  return u == rpow(e);
}

AtomList GpEngine::atoms_below(const RealCut& bound, const Int& db) const {
  AtomList out;
  out.complete_below = bound;
  out.complete = true;
  for (long i = 0;; ++i) {
    Rational a = rpow(i);
    if (RealCut(a) > bound) break;
    if (a.den() <= db)
      out.atoms.push_back(a);
    else
      out.complete = false;
  }
  return out;
}

ClosureDescription GpEngine::closure() const {
  ClosureDescription c;
  c.scale_n = 1;
  c.denominators.kind = DenominatorRule::Kind::PowersOf;
  c.denominators.base = q;
  c.quotient_group = "union over i of (1/" + int_str(q) + "^i)*Z";
  return c;
}

bool GpEngine::closure_member(const Rational& x) const {
  if (x.sign() < 0) return false;
  return closure().denominators.contains(x.den());
}

ConductorDescription GpEngine::conductor() const {
  ConductorDescription c;
  // an element with denominator q^e is at least r^e, so the closure misses
  // points with large denominators at every height
  c.status = ConductorDescription::Status::Empty;
  return c;
}

ClassifyReport GpEngine::classify() const {
  ClassifyReport r;
  r.valuation = Verdict::No;
  r.seminormal = Verdict::No;
  r.bf = Verdict::Yes;
  r.strongly_primary = Verdict::No;
  r.conductor_nonempty = Verdict::No;
  r.inf_positive = Verdict::Yes;
  return r;
}

RealCut GpEngine::positive_infimum(bool* att) const {
  set_att(att, true);
  return RealCut(1);
}

std::optional<std::pair<RealCut, bool>> GpEngine::atom_supremum() const {
  return std::nullopt;  // the powers of the ratio are unbounded
}

}  // namespace

// ---- sequence rule constructors ----

SequenceRule SequenceRule::explicit_cuts(std::vector<RealCut> values) {
  SequenceRule r;
  r.kind = Kind::Explicit;
  r.cuts = std::move(values);
  return r;
}

SequenceRule SequenceRule::explicit_ints(std::vector<Int> values) {
  SequenceRule r;
  r.kind = Kind::Explicit;
  r.ints = std::move(values);
  return r;
}

SequenceRule SequenceRule::thm312() {
  SequenceRule r;
  r.kind = Kind::Thm312;
  return r;
}

SequenceRule SequenceRule::prop39(std::vector<Int> seed) {
  SequenceRule r;
  r.kind = Kind::Prop39;
  r.ints = std::move(seed);
  return r;
}

SequenceRule SequenceRule::pow2() {
  SequenceRule r;
  r.kind = Kind::PowersOfTwo;
  return r;
}

// ---- report helpers ----

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "Yes";
    case Verdict::No:
      return "No";
    default:
      return "Unknown";
  }
}

bool DenominatorRule::contains(const Int& d) const {
  if (d < 1) return false;
  switch (kind) {
    case Kind::FiniteSet:
      return std::binary_search(set.begin(), set.end(), d);
    case Kind::DivisorsOf:
      return base % d == 0;
    case Kind::PowersOf: {
      Int t = d;
      while (t % base == 0) t /= base;
      return t == 1;
    }
    case Kind::AllSquarefree:
      return squarefree_factors(d, nullptr);
    case Kind::All:
      return true;
  }
  return false;
}

std::string DenominatorRule::str() const {
  switch (kind) {
    case Kind::FiniteSet: {
      std::ostringstream os;
      os << "{";
      for (std::size_t i = 0; i < set.size(); ++i) os << (i ? "," : "") << set[i];
      os << "}";
      return os.str();
    }
    case Kind::DivisorsOf:
      return "divisors of " + int_str(base);
    case Kind::PowersOf:
      return "powers of " + int_str(base);
    case Kind::AllSquarefree:
      return "squarefree";
    case Kind::All:
      return "all";
  }
  return "";
}

// ---- monoid facade ----

struct Monoid::Impl {
  MonoidSpec spec;
  Engine eng;
};

namespace {
Engine build_engine(const MonoidSpec& spec) {
  return std::visit(
      [](const auto& s) -> Engine {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, FinitelyGenerated>)
          return build_fg(s);
        else if constexpr (std::is_same_v<T, LatticeUnion>)
          return build_lattice(s);
        else if constexpr (std::is_same_v<T, IrrationalThreshold>)
          return build_it(s);
        else if constexpr (std::is_same_v<T, DenseThreshold>)
          return build_dt(s);
        else if constexpr (std::is_same_v<T, PrimeReciprocal>)
          return build_pr(s);
        else
          return build_gp(s);
      },
      spec);
}
}  // namespace

Monoid::Monoid(MonoidSpec spec) {
  auto impl = std::make_shared<Impl>();
  impl->spec = std::move(spec);
  impl->eng = build_engine(impl->spec);
  impl_ = std::move(impl);
}

const MonoidSpec& Monoid::spec() const { return impl_->spec; }

const char* Monoid::family_name() const {
  return std::visit([](const auto& e) { return e.name(); }, impl_->eng);
}

bool Monoid::member(const Rational& x) const {
  return std::visit([&](const auto& e) { return e.member(x); }, impl_->eng);
}

bool Monoid::divides(const Rational& x, const Rational& y) const {
  if (!member(x))
    throw std::invalid_argument("divides: " + x.str() + " is not in the monoid");
  if (!member(y))
    throw std::invalid_argument("divides: " + y.str() + " is not in the monoid");
  return member(y - x);
}

bool Monoid::is_atom(const Rational& u) const {
  return std::visit([&](const auto& e) { return e.is_atom(u); }, impl_->eng);
}

AtomList Monoid::atoms_below(const RealCut& bound, const Int& denom_bound) const {
  if (bound.sign() <= 0) throw std::invalid_argument("atoms_below: bound must be > 0");
  if (denom_bound < 1)
    throw std::invalid_argument("atoms_below: denominator bound must be >= 1");
  return std::visit([&](const auto& e) { return e.atoms_below(bound, denom_bound); },
                    impl_->eng);
}

ClosureDescription Monoid::closure() const {
  return std::visit([](const auto& e) { return e.closure(); }, impl_->eng);
}

bool Monoid::closure_member(const Rational& x) const {
  return std::visit([&](const auto& e) { return e.closure_member(x); }, impl_->eng);
}

ConductorDescription Monoid::conductor() const {
  return std::visit([](const auto& e) { return e.conductor(); }, impl_->eng);
}

ClassifyReport Monoid::classify() const {
  return std::visit([](const auto& e) { return e.classify(); }, impl_->eng);
}

RealCut Monoid::positive_infimum(bool* attained) const {
  return std::visit([&](const auto& e) { return e.positive_infimum(attained); },
                    impl_->eng);
}

std::optional<std::pair<RealCut, bool>> Monoid::atom_supremum() const {
  return std::visit([](const auto& e) { return e.atom_supremum(); }, impl_->eng);
}

std::vector<std::pair<RealCut, Int>> Monoid::levels_below(
    const RealCut& bound, const Int& denom_bound) const {
  if (denom_bound < 1)
    throw std::invalid_argument("levels_below: denominator bound must be >= 1");
  const auto* lat = std::get_if<LatEngine>(&impl_->eng);
  if (!lat)
    throw std::invalid_argument(std::string("levels_below: not a lattice union: ") +
                                family_name());
  return lat->levels_below(bound, denom_bound);
}

}  // namespace puiseux
