// Invariant computations on top of the factorization layer.  The common
// engine is a bounded enumeration of minimal divisibility configurations;
// omega, tau, the tame degree and M(u) read different projections of it.

#include "puiseux/invariants.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace puiseux {
namespace {

// Reduced fractions n/d with d <= denom_cap and 0 < n/d <= value_cap, row by
// row in d.  A row stops early at a certified extension horizon; the scan is
// a window either way, never a completeness claim.
template <typename Fn>
void for_each_member(const Monoid& m, const SearchBudget& budget, const Fn& fn) {
  for (Int d = 1; d <= budget.denom_cap; ++d) {
    Int n_hi = floor_mul(Rational(d), budget.value_cap);
    for (Int n = 1; n <= n_hi; ++n) {
      if (boost::multiprecision::gcd(n, d) != 1) continue;
      Rational x(n, d);
      bool in = false;
      try {
        in = m.member(x);
      } catch (const std::domain_error&) {
        break;
      }
      if (in) fn(x);
    }
  }
}

// Grid step of the value lattice spanned by the generators.
Rational fg_unit(const FinitelyGenerated& fg) {
  std::vector<Int> dens;
  dens.reserve(fg.generators.size());
  for (const Rational& g : fg.generators) dens.push_back(g.den());
  Int l = lcm_set(dens);
  std::vector<Int> nums;
  nums.reserve(fg.generators.size());
  for (const Rational& g : fg.generators) nums.push_back(g.num() * (l / g.den()));
  return Rational(gcd_set(nums), l);
}

// sigma as a finite cut: 0 for a whole closure, nullopt when the conductor
// is empty or undecided.
std::optional<RealCut> conductor_sigma(const Monoid& m) {
  ConductorDescription c = m.conductor();
  if (c.status == ConductorDescription::Status::Whole) return RealCut(0);
  if (c.status == ConductorDescription::Status::Threshold) return c.sigma;
  return std::nullopt;
}

void require_atom(const Monoid& m, const Rational& u, const char* who) {
  bool ok = false;
  try {
    ok = m.is_atom(u);
  } catch (const std::domain_error&) {
  }
  if (!ok) throw std::invalid_argument(std::string(who) + ": u must be an atom");
}

// ---- minimal divisibility configurations ----

struct Config {
  Factorization z;
  Int size = 0;
  Rational rem;  // value(z) - u
};

struct ConfigScan {
  std::vector<Config> minimal;
  bool exact = false;
  bool only_trivial = true;  // nothing found beyond the configuration (u)
};

// All factorizations z with u | value(z) and u dividing no proper subsum.
// The window is certified complete when the monoid has a finite conductor
// and bounded atoms: dropping one atom a from a minimal z leaves a subsum
// not divisible by u, so value(z) - a - u avoids the monoid while staying
// in the closure, pinning value(z) <= u + sigma + a.
ConfigScan scan_configs(const Monoid& m, const Rational& u,
                        const SearchBudget& budget) {
  ConfigScan out;
  RealCut cap = budget.value_cap;
  bool window_certified = false;
  std::optional<RealCut> sigma = conductor_sigma(m);
  auto sup = m.atom_supremum();
  if (sigma && sup) {
    RealCut w = RealCut(u) + *sigma + sup->first;
    if (w <= budget.value_cap) {
      cap = w;
      window_certified = true;
    }
  }
  bool fg = std::holds_alternative<FinitelyGenerated>(m.spec());
  AtomList pool = m.atoms_below(cap, fg ? Int(1) << 62 : budget.denom_cap);
  const std::vector<Rational>& atoms = pool.atoms;
  const std::size_t n = atoms.size();
  std::vector<Int> counts(n, 0);
  long long nodes = 0;
  bool truncated = false;

  // Walks every proper nonzero sub-multiset of `counts` with incrementally
  // maintained values; false as soon as one is divisible by u.
  auto minimal_here = [&]() -> std::optional<bool> {
    std::vector<Int> s(n, 0);
    Rational sub;
    for (;;) {
      std::size_t i = 0;
      while (i < n && s[i] == counts[i]) ++i;
      if (i == n) return true;
      for (std::size_t j = 0; j < i; ++j) {
        sub -= Rational(s[j]) * atoms[j];
        s[j] = 0;
      }
      s[i] += 1;
      sub += atoms[i];
      if (++nodes > budget.node_cap) {
        truncated = true;
        return std::nullopt;
      }
      bool full = true;
      for (std::size_t j = 0; j < n && full; ++j) full = (s[j] == counts[j]);
      if (full) continue;  // z itself is not a proper subsum
      Rational rem = sub - u;
      if (rem.sign() < 0) continue;
      bool in = false;
      try {
        in = m.member(rem);
      } catch (const std::domain_error&) {
        truncated = true;
        return std::nullopt;
      }
      if (in) return false;
    }
  };

  auto rec = [&](auto&& self, std::size_t idx, const Rational& pi) -> bool {
    if (idx == n) {
      if (pi.is_zero()) return true;
      if (++nodes > budget.node_cap) {
        truncated = true;
        return false;
      }
      Rational rem = pi - u;
      if (rem.sign() < 0) return true;
      bool in = false;
      try {
        in = m.member(rem);
      } catch (const std::domain_error&) {
        truncated = true;
        return true;
      }
      if (!in) return true;
      std::optional<bool> mini = minimal_here();
      if (!mini) return false;
      if (!*mini) return true;
      Config c;
      for (std::size_t j = 0; j < n; ++j) {
        if (counts[j] == 0) continue;
        c.z.terms.emplace(atoms[j], counts[j]);
        c.size += counts[j];
      }
      c.rem = rem;
      if (!(c.size == 1 && rem.is_zero())) out.only_trivial = false;
      out.minimal.push_back(std::move(c));
      return true;
    }
    if (!self(self, idx + 1, pi)) return false;
    Rational v = pi;
    for (Int c = 1;; ++c) {
      v += atoms[idx];
      if (RealCut(v) > cap) break;
      counts[idx] = c;
      if (!self(self, idx + 1, v)) {
        counts[idx] = 0;
        return false;
      }
    }
    counts[idx] = 0;
    return true;
  };
  if (n > 0) rec(rec, 0, Rational(0));
  out.exact = window_certified && pool.complete && !truncated;
  return out;
}

// A lattice union whose thresholds follow the i - 1/b_i rule keeps Lambda
// finite only when its first denominator is at least 3: each even value 2i
// then splits as (i - 1/b_i) + (i + 1/b_i) with both summands atoms.  The
// pow2 rule starts at b_1 = 2, so instances built here never qualify; the
// check documents the boundary rather than deciding runs.
bool lambda_finite_by_construction(const LatticeUnion& lu) {
  if (lu.alphas.kind != SequenceRule::Kind::Thm312 ||
      lu.bs.kind != SequenceRule::Kind::PowersOfTwo)
    return false;
  return Int(2) >= 3;  // first pow2 denominator
}

}  // namespace

// ---- delta sets ----

std::vector<Int> delta_of_set(const std::vector<Int>& lengths) {
  std::vector<Int> s = lengths;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::set<Int> gaps;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) gaps.insert(s[i + 1] - s[i]);
  return std::vector<Int>(gaps.begin(), gaps.end());
}

DeltaReport delta_observed(const Monoid& m, const SearchBudget& budget) {
  DeltaReport r;
  std::set<Int> gaps;
  for_each_member(m, budget, [&](const Rational& x) {
    CertifiedSet<Int> len;
    try {
      len = lengths(m, x, budget);
    } catch (const std::domain_error&) {
      return;
    }
    // only exact length sets contribute: gaps of a subset can be spurious
    if (!len.exact() || len.items.size() < 2) return;
    for (const Int& g : delta_of_set(len.items)) {
      gaps.insert(g);
      if (!r.min_delta || g < *r.min_delta) {
        r.min_delta = g;
        r.min_witness = x;
      } else if (g == *r.min_delta && x < *r.min_witness) {
        r.min_witness = x;
      }
    }
  });
  r.observed.assign(gaps.begin(), gaps.end());
  return r;
}

// ---- elasticity ----

ElasticityReport elasticity(const Monoid& m) {
  ElasticityReport r;
  ClassifyReport cls = m.classify();
  if (cls.strongly_primary != Verdict::Yes) return r;  // stays Unknown
  auto sup = m.atom_supremum();
  if (!sup) {
    r.kind = ElasticityReport::Kind::Infinite;
    r.accepted = cls.bf == Verdict::Yes ? Verdict::No : Verdict::Unknown;
    return r;
  }
  bool inf_attained = false;
  RealCut inf = m.positive_infimum(&inf_attained);
  r.kind = ElasticityReport::Kind::Finite;
  r.value = sup->first / inf;
  r.accepted = (sup->second && inf_attained) ? Verdict::Yes : Verdict::No;
  return r;
}

// ---- divisibility bounds ----

TameReport M_of(const Monoid& m, const Rational& u, const SearchBudget& budget) {
  if (u.sign() <= 0 || !m.member(u))
    throw std::invalid_argument("M_of: u must be a nonzero member");
  ClassifyReport cls = m.classify();
  if (cls.strongly_primary != Verdict::Yes)
    throw std::invalid_argument(std::string("M_of: strong primarity not certified: ") +
                                m.family_name());
  TameReport r;
  r.u = u;
  r.kind = TameKind::BigM;
  std::optional<RealCut> sigma = conductor_sigma(m);
  const auto* fg = std::get_if<FinitelyGenerated>(&m.spec());
  Int best = 0;
  std::optional<Rational> best_x;
  if (fg && sigma) {
    // every member not divisible by u sits at x <= u + sigma (past that,
    // x - u falls in the conductor), so the maximum below is exact
    Rational unit = fg_unit(*fg);
    Int j_hi = floor_mul(unit.inv(), RealCut(u) + *sigma);
    for (Int j = 1; j <= j_hi; ++j) {
      Rational x = unit * Rational(j);
      if (!m.member(x)) continue;
      Rational rem = x - u;
      if (rem.sign() >= 0 && m.member(rem)) continue;
      CertifiedSet<Int> len = lengths(m, x, budget);
      if (len.items.empty()) continue;
      if (len.items.back() > best) {
        best = len.items.back();
        best_x = x;
      }
    }
    r.value = best + 1;
    r.value_kind = TameReport::Value::Exact;
  } else {
    for_each_member(m, budget, [&](const Rational& x) {
      Rational rem = x - u;
      if (rem.sign() >= 0) {
        std::optional<bool> div;
        try {
          div = m.member(rem);
        } catch (const std::domain_error&) {
          div = std::nullopt;
        }
        if (!div || *div) return;  // divisible or undecided
      }
      CertifiedSet<Int> len;
      try {
        len = lengths(m, x, budget);
      } catch (const std::domain_error&) {
        return;
      }
      // truncated sets still list true lengths, sound for a lower bound
      if (len.items.empty()) return;
      if (len.items.back() > best) {
        best = len.items.back();
        best_x = x;
      }
    });
    r.value = best + 1;
    r.value_kind = TameReport::Value::LowerBound;
    if (std::holds_alternative<LatticeUnion>(m.spec()) &&
        cls.inf_positive == Verdict::Yes) {
      // hosting-level cap: once a factorization has n > (3 alpha_i + 1)/inf
      // atoms, reordering it by level depth yields a partial sum p with
      // p - u at least alpha_i deep inside a compatible lattice, so u
      // divides the value; needs a level with b_i divisible by den(u) and
      // u < 2 alpha_i + 1
      bool inf_attained = false;
      RealCut inf = m.positive_infimum(&inf_attained);
      if (inf.sign() > 0) {
        Int e = u.ceil() + 3;
        long shift = e > 62 ? 62 : e.convert_to<long>();
        Int db = Int(1) << shift;
        if (db < u.den()) db = u.den();
        try {
          std::optional<Int> up;
          for (const auto& [al, b] : m.levels_below(RealCut(u) + RealCut(1), db)) {
            if (b % u.den() != 0) continue;
            if (!(RealCut(u) < al * RealCut(2) + RealCut(1))) continue;
            Int cand = ((al * RealCut(3) + RealCut(1)) / inf).ceil() + 1;
            if (!up || cand < *up) up = cand;
          }
          r.upper_bound = up;
        } catch (const std::domain_error&) {
        }
      }
    }
  }
  if (best_x) {
    try {
      CertifiedSet<Factorization> zs = factorizations(m, *best_x, budget);
      for (auto it = zs.items.rbegin(); it != zs.items.rend(); ++it)
        if (it->length() == best) {
          r.witness = *it;
          break;
        }
    } catch (const std::invalid_argument&) {
    }
  }
  return r;
}

TameReport omega(const Monoid& m, const Rational& u, const SearchBudget& budget) {
  require_atom(m, u, "omega");
  ConfigScan scan = scan_configs(m, u, budget);
  TameReport r;
  r.u = u;
  r.kind = TameKind::Omega;
  for (const Config& c : scan.minimal)
    if (c.size > r.value) {
      r.value = c.size;
      r.witness = c.z;
    }
  r.value_kind =
      scan.exact ? TameReport::Value::Exact : TameReport::Value::LowerBound;
  return r;
}

TameReport tau(const Monoid& m, const Rational& u, const SearchBudget& budget) {
  require_atom(m, u, "tau");
  ConfigScan scan = scan_configs(m, u, budget);
  TameReport r;
  r.u = u;
  r.kind = TameKind::Tau;
  bool all_exact = scan.exact;
  bool have = false;
  for (const Config& c : scan.minimal) {
    Int cand = 0;
    if (!c.rem.is_zero()) {
      CertifiedSet<Int> len = lengths(m, c.rem, budget);
      if (!len.exact()) {
        // the minimum of a truncated set can overshoot; skip it
        all_exact = false;
        continue;
      }
      cand = len.items.front();
    }
    if (!have || cand > r.value) {
      r.value = cand;
      r.witness = c.z;
      have = true;
    }
  }
  r.value_kind =
      all_exact ? TameReport::Value::Exact : TameReport::Value::LowerBound;
  return r;
}

TameReport tame_degree(const Monoid& m, const Rational& u,
                       const SearchBudget& budget) {
  require_atom(m, u, "tame_degree");
  ConfigScan scan = scan_configs(m, u, budget);
  TameReport r;
  r.u = u;
  r.kind = TameKind::TameDegree;
  bool all_exact = scan.exact;
  for (const Config& c : scan.minimal) {
    if (c.rem.is_zero()) continue;  // the configuration (u) itself
    Int cand = c.size;
    CertifiedSet<Int> len = lengths(m, c.rem, budget);
    if (len.exact()) {
      if (len.items.front() + 1 > cand) cand = len.items.front() + 1;
    } else {
      all_exact = false;  // the distance term is only partially known
    }
    if (cand > r.value) {
      r.value = cand;
      r.witness = c.z;
    }
  }
  // with a complete scan and no nontrivial configuration, u is prime and
  // the tame degree is 0; an incomplete scan leaves that a lower bound
  r.value_kind =
      all_exact ? TameReport::Value::Exact : TameReport::Value::LowerBound;
  return r;
}

// ---- unions of length sets ----

UnionReport union_k(const Monoid& m, const Int& k, const SearchBudget& budget) {
  if (k < 0) throw std::invalid_argument("union_k: k must be non-negative");
  UnionReport r;
  r.k = k;
  if (k == 0) {
    // only 0 has a length-0 factorization
    r.observed = {Int(0)};
    r.lambda_k = 0;
    r.rho_k = 0;
    r.certificate = Certificate::Exact;
    return r;
  }
  if (k == 1) {
    // 1 lies in L(x) exactly when x is an atom, and then L(x) = {1}
    AtomList pool = m.atoms_below(budget.value_cap, budget.denom_cap);
    if (!pool.atoms.empty()) {
      r.observed = {Int(1)};
      r.lambda_k = 1;
      r.rho_k = 1;
      r.certificate = Certificate::Exact;
    } else {
      r.certificate =
          pool.complete ? Certificate::Exact : Certificate::LowerTruncated;
    }
    return r;
  }

  if (const auto* fg = std::get_if<FinitelyGenerated>(&m.spec())) {
    // every x with k in L(x) is a sum of k atoms, so x <= k * sup A
    Rational unit = fg_unit(*fg);
    RealCut w = RealCut(Rational(k)) * m.atom_supremum()->first;
    bool exact = true;
    if (w > budget.value_cap) {
      w = budget.value_cap;
      exact = false;
    }
    std::set<Int> obs;
    Int j_hi = floor_mul(unit.inv(), w);
    for (Int j = 1; j <= j_hi; ++j) {
      Rational x = unit * Rational(j);
      if (!m.member(x)) continue;
      CertifiedSet<Int> len = lengths(m, x, budget);
      if (!len.exact()) exact = false;
      if (!std::binary_search(len.items.begin(), len.items.end(), k)) continue;
      obs.insert(len.items.begin(), len.items.end());
    }
    r.observed.assign(obs.begin(), obs.end());
    if (exact) {
      r.certificate = Certificate::Exact;
      if (!r.observed.empty()) {
        r.lambda_k = r.observed.front();
        r.rho_k = r.observed.back();
      }
    }
    return r;
  }

  if (const auto* it = std::get_if<IrrationalThreshold>(&m.spec())) {
    // closed forms: rho_k = k ceil(alpha) + floor(k frac(alpha)) once
    // k >= ceil(2 / frac(alpha)); lambda_k is the least l >= 2 with
    // k = l ceil(alpha) + r, r/l < frac(alpha) < (r + ceil(alpha))/(l - 1),
    // unique once k >= ceil(3 alpha / frac(alpha))^2
    RealCut ab = it->alpha - RealCut(Rational(it->alpha.floor()));
    Int acl = it->alpha.ceil();
    Int t_rho = (RealCut(2) / ab).ceil();
    Int t_lam = ((it->alpha * RealCut(3)) / ab).ceil();
    if (k >= t_rho) {
      Int rho = k * acl + floor_mul(Rational(k), ab);
      r.rho_k = rho;
      if (k >= t_lam * t_lam) {
        for (Int l = 2; l * acl < k; ++l) {
          Int rr = k - l * acl;
          if (RealCut(Rational(rr, l)) < ab && ab < RealCut(Rational(rr + acl, l - 1))) {
            r.lambda_k = l;
            break;
          }
        }
      }
      std::set<Int> obs;
      for (const Rational& probe : {Rational(k), Rational(rho)}) {
        CertifiedSet<Int> len = lengths(m, probe, budget);
        obs.insert(len.items.begin(), len.items.end());
      }
      r.observed.assign(obs.begin(), obs.end());
      return r;
    }
  }

  if (const auto* lu = std::get_if<LatticeUnion>(&m.spec())) {
    // growing-threshold tails put two atoms just above each level cut whose
    // sum also splits into unboundedly many smallest atoms, so U_2 is
    // unbounded; padding with a fixed atom lifts that to every k >= 2
    bool growing = lu->bs.kind == SequenceRule::Kind::PowersOfTwo &&
                   (lu->alphas.kind == SequenceRule::Kind::Thm312 ||
                    lu->alphas.kind == SequenceRule::Kind::PowersOfTwo ||
                    lu->alphas.kind == SequenceRule::Kind::Prop39);
    if (growing) r.rho_infinite = true;
  }

  std::set<Int> obs;
  for_each_member(m, budget, [&](const Rational& x) {
    CertifiedSet<Int> len;
    try {
      len = lengths(m, x, budget);
    } catch (const std::domain_error&) {
      return;
    }
    // membership of k among true lengths certifies co-occurrence even when
    // the set is truncated
    if (!std::binary_search(len.items.begin(), len.items.end(), k)) return;
    obs.insert(len.items.begin(), len.items.end());
  });
  r.observed.assign(obs.begin(), obs.end());
  return r;
}

// ---- Lambda ----

LambdaReport Lambda(const Monoid& m, const SearchBudget& budget) {
  LambdaReport r;
  ClassifyReport cls = m.classify();
  if (cls.strongly_primary == Verdict::Yes &&
      cls.conductor_nonempty == Verdict::Yes) {
    // a nonempty conductor bounds the atoms, so min L(a) >= a / sup A grows
    // without bound
    r.kind = LambdaReport::Kind::InfiniteCertified;
    return r;
  }
  bool finite = false;
  if (const auto* lu = std::get_if<LatticeUnion>(&m.spec()))
    finite = lambda_finite_by_construction(*lu);
  Int best = 0;
  std::optional<Rational> wit;
  for_each_member(m, budget, [&](const Rational& x) {
    CertifiedSet<Int> len;
    try {
      len = lengths(m, x, budget);
    } catch (const std::domain_error&) {
      return;
    }
    // a truncated minimum can overshoot; only exact sets contribute
    if (!len.exact() || len.items.empty()) return;
    if (len.items.front() > best) {
      best = len.items.front();
      wit = x;
    }
  });
  r.kind = finite ? LambdaReport::Kind::Finite : LambdaReport::Kind::LowerBound;
  r.bound = best;
  r.witness = wit;
  return r;
}

// ---- almost arithmetic progressions ----

Int aap_fit(const Monoid& m, const std::vector<Rational>& sample, const Int& d,
            const SearchBudget& budget) {
  if (d < 1) throw std::invalid_argument("aap_fit: d must be >= 1");
  Int fit = 0;
  for (const Rational& x : sample) {
    CertifiedSet<Int> len = lengths(m, x, budget);
    if (!len.exact())
      throw std::invalid_argument("aap_fit: length set of " + x.str() +
                                  " is not certified exact");
    if (len.items.empty()) continue;
    const Int& lo = len.items.front();
    const Int& hi = len.items.back();
    for (const Int& l : len.items)
      if ((l - lo) % d != 0)
        throw std::invalid_argument("aap_fit: lengths of " + x.str() +
                                    " leave the progression min L + " + d.str() +
                                    " N0");
    for (Int v = lo + d; v < hi; v += d) {
      if (std::binary_search(len.items.begin(), len.items.end(), v)) continue;
      Int gap = std::min(v - lo, hi - v) + 1;
      if (gap > fit) fit = gap;
    }
  }
  return fit;
}

}  // namespace puiseux
