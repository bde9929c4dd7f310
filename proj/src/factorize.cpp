#include "puiseux/factorize.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace puiseux {

namespace {

// ---- atom pools ----

struct AtomPool {
  std::vector<Rational> atoms;  // ascending
  bool complete = false;        // covers every atom <= x
};

AtomPool pool_for(const Monoid& m, const Rational& x, const SearchBudget& budget) {
  RealCut bound{x};
  bool capped = false;
  if (budget.value_cap < bound) {
    bound = budget.value_cap;
    capped = true;
    if (auto sup = m.atom_supremum()) {
      try {
        if (sup->first <= budget.value_cap) capped = false;  // nothing above the cap
      } catch (const std::domain_error&) {
        // incomparable radicals: keep the conservative flag
      }
    }
  }
  AtomList al = m.atoms_below(bound, budget.denom_cap);
  AtomPool pool;
  pool.atoms = std::move(al.atoms);
  pool.complete = al.complete && !capped;
  return pool;
}

// Target and atoms on the common integer lattice (1/L)*Z.
struct Scaled {
  Int X;                  // x * L
  std::vector<Int> desc;  // atom values * L, descending
  std::vector<Int> sgcd;  // sgcd[i] = gcd(desc[i..end]); sums over a suffix
                          // of the pool are multiples of it
};

Scaled scale(const Rational& x, const std::vector<Rational>& atoms) {
  std::vector<Int> dens{x.den()};
  for (const Rational& a : atoms) dens.push_back(a.den());
  Int L = lcm_set(dens);
  Scaled s;
  s.X = x.num() * (L / x.den());
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it)
    s.desc.push_back(it->num() * (L / it->den()));
  s.sgcd.assign(s.desc.size(), Int(0));
  Int g = 0;
  for (std::size_t i = s.desc.size(); i-- > 0;) {
    g = boost::multiprecision::gcd(g, s.desc[i]);
    s.sgcd[i] = g;
  }
  return s;
}

// ---- enumeration (shared by factorizations and the lengths fallback) ----

struct Dfs {
  const Scaled& sc;
  const std::vector<Rational>& atoms_desc;
  const SearchBudget& budget;
  std::vector<Int> counts;
  std::vector<Factorization> found;
  long long nodes = 0;
  bool truncated = false;

  void run(std::size_t idx, const Int& rem, const Int& len) {
    if (++nodes > budget.node_cap) {
      truncated = true;
      return;
    }
    if (rem == 0) {
      Factorization z;
      for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) z.terms[atoms_desc[i]] = counts[i];
      found.push_back(std::move(z));
      return;
    }
    if (idx == sc.desc.size()) return;
    if (rem < sc.desc.back()) return;     // below the least atom
    if (rem % sc.sgcd[idx] != 0) return;  // off the suffix lattice
    if (idx + 1 == sc.desc.size()) {
      // the suffix-lattice check makes rem an exact multiple of the last atom
      Int c = rem / sc.desc[idx];
      if (len + c > budget.length_cap) {
        truncated = true;
        return;
      }
      counts[idx] = c;
      run(idx + 1, Int(0), len + c);
      counts[idx] = 0;
      return;
    }
    Int maxc = rem / sc.desc[idx];
    if (len + maxc > budget.length_cap) {
      maxc = budget.length_cap - len;  // unreachable on exactable runs
      truncated = true;
    }
    for (Int c = maxc; c >= 0; --c) {
      counts[idx] = c;
      run(idx + 1, rem - c * sc.desc[idx], len + c);
      if (nodes > budget.node_cap) break;
    }
    counts[idx] = 0;
  }
};

struct Enumerated {
  std::vector<Factorization> found;
  bool truncated = false;
};

Enumerated enumerate_pool(const AtomPool& pool, const Rational& x,
                          const SearchBudget& budget) {
  Scaled sc = scale(x, pool.atoms);
  std::vector<Rational> desc(pool.atoms.rbegin(), pool.atoms.rend());
  Dfs dfs{sc, desc, budget, std::vector<Int>(desc.size(), Int(0)), {}, 0, false};
  dfs.run(0, sc.X, 0);
  return {std::move(dfs.found), dfs.truncated};
}

bool is_irrational_threshold(const Monoid& m) {
  return std::holds_alternative<IrrationalThreshold>(m.spec());
}

// ---- closed-form length solver for the irrational threshold family ----
//
// Members decompose as m copies of the atom 1 plus k non-integer atoms from
// (alpha, 1+alpha].  k such atoms sum to exactly the non-integers of
// (alpha, 1+alpha] when k = 1 and to every rational of (k*alpha, k*(1+alpha))
// once k >= 2; alpha is irrational, so all interval endpoints are missed.
std::vector<Int> threshold_lengths(const RealCut& alpha, const Rational& x) {
  std::set<Int> out;
  RealCut xc{x};
  if (x.is_integer()) out.insert(x.num());
  if (!x.is_integer()) {  // k = 1: x - m is never an integer here
    Int m_lo = (xc - RealCut(1) - alpha).floor() + 1;
    if (m_lo < 0) m_lo = 0;
    Int m_hi = (xc - alpha).floor();
    for (Int mm = m_lo; mm <= m_hi; ++mm) out.insert(mm + 1);
  }
  for (Int k = 2; RealCut(Rational(k)) * alpha < xc; ++k) {
    Int m_lo = (xc - RealCut(Rational(k)) * (alpha + RealCut(1))).floor() + 1;
    if (m_lo < 0) m_lo = 0;
    Int m_hi = (xc - RealCut(Rational(k)) * alpha).floor();
    for (Int mm = m_lo; mm <= m_hi; ++mm) out.insert(mm + k);
  }
  return std::vector<Int>(out.begin(), out.end());
}

}  // namespace

// ---- Factorization ----

Int Factorization::length() const {
  Int n = 0;
  for (const auto& [a, c] : terms) n += c;
  return n;
}

Rational Factorization::value() const {
  Rational v;
  for (const auto& [a, c] : terms) v += a * Rational(c);
  return v;
}

bool factorization_less(const Factorization& a, const Factorization& b) {
  Int la = a.length(), lb = b.length();
  if (la != lb) return la < lb;
  return std::lexicographical_compare(
      a.terms.begin(), a.terms.end(), b.terms.begin(), b.terms.end(),
      [](const auto& p, const auto& q) {
        if (p.first != q.first) return p.first < q.first;
        return p.second < q.second;
      });
}

// ---- Z(x) ----

CertifiedSet<Factorization> factorizations(const Monoid& m, const Rational& x,
                                           const SearchBudget& budget) {
  if (!m.member(x))
    throw std::invalid_argument("factorizations: " + x.str() +
                                " is not in the monoid");
  if (is_irrational_threshold(m))
    throw std::invalid_argument(
        "factorizations: the set is not materialized for this family "
        "(typically infinite); use lengths");
  CertifiedSet<Factorization> out;
  if (x.is_zero()) {
    out.items.push_back({});
    return out;
  }
  AtomPool pool = pool_for(m, x, budget);
  if (pool.atoms.empty()) {
    if (!pool.complete) out.certificate = Certificate::LowerTruncated;
    return out;
  }
  bool exactable =
      pool.complete && (x / pool.atoms.front()).floor() <= budget.length_cap;
  Enumerated enumd = enumerate_pool(pool, x, budget);
  out.items = std::move(enumd.found);
  std::sort(out.items.begin(), out.items.end(), factorization_less);
  out.certificate = (exactable && !enumd.truncated)
                        ? Certificate::Exact
                        : Certificate::LowerTruncated;
  return out;
}

// ---- L(x) ----

CertifiedSet<Int> lengths(const Monoid& m, const Rational& x,
                          const SearchBudget& budget) {
  if (!m.member(x))
    throw std::invalid_argument("lengths: " + x.str() + " is not in the monoid");
  CertifiedSet<Int> out;
  if (is_irrational_threshold(m)) {
    out.items =
        threshold_lengths(std::get<IrrationalThreshold>(m.spec()).alpha, x);
    return out;  // the solver is exact for every member
  }
  if (x.is_zero()) {
    out.items.push_back(0);
    return out;
  }
  AtomPool pool = pool_for(m, x, budget);
  if (pool.atoms.empty()) {
    if (!pool.complete) out.certificate = Certificate::LowerTruncated;
    return out;
  }
  Int len_bound = (x / pool.atoms.front()).floor();
  bool exactable = pool.complete && len_bound <= budget.length_cap;
  if (len_bound > budget.length_cap) len_bound = budget.length_cap;

  Scaled sc = scale(x, pool.atoms);
  std::size_t W = len_bound.convert_to<std::size_t>() / 64 + 1;
  if ((sc.X + 1) * Int(static_cast<long long>(W)) <= (Int(1) << 23)) {
    // bitset knapsack over the scaled values: bit l of row v is set iff some
    // factorization of v/L has length l
    std::size_t X = sc.X.convert_to<std::size_t>();
    std::vector<std::uint64_t> dp((X + 1) * W, 0);
    dp[0] = 1;  // the empty factorization
    for (auto it = sc.desc.rbegin(); it != sc.desc.rend(); ++it) {
      std::size_t av = it->convert_to<std::size_t>();
      for (std::size_t v = av; v <= X; ++v) {
        const std::uint64_t* src = dp.data() + (v - av) * W;
        std::uint64_t* dst = dp.data() + v * W;
        for (std::size_t w = W; w-- > 1;)
          dst[w] |= (src[w] << 1) | (src[w - 1] >> 63);
        dst[0] |= src[0] << 1;
      }
    }
    const std::uint64_t* row = dp.data() + X * W;
    for (std::size_t w = 0; w < W; ++w)
      for (int b = 0; b < 64; ++b)
        if (row[w] >> b & 1) {
          Int len = Int(static_cast<long long>(w * 64 + b));
          if (len <= budget.length_cap) out.items.push_back(len);
        }
    out.certificate =
        exactable ? Certificate::Exact : Certificate::LowerTruncated;
    return out;
  }

  // lattice too fine for the knapsack rows: project from the enumeration
  Enumerated enumd = enumerate_pool(pool, x, budget);
  std::set<Int> ls;
  for (const Factorization& z : enumd.found) ls.insert(z.length());
  out.items.assign(ls.begin(), ls.end());
  out.certificate = (exactable && !enumd.truncated)
                        ? Certificate::Exact
                        : Certificate::LowerTruncated;
  return out;
}

// ---- distance ----

Int distance(const Factorization& z1, const Factorization& z2) {
  Int common = 0;
  for (const auto& [a, c] : z1.terms) {
    auto it = z2.terms.find(a);
    if (it != z2.terms.end()) common += std::min(c, it->second);
  }
  return std::max(z1.length() - common, z2.length() - common);
}

// ---- catenary degrees ----

namespace {

std::vector<std::vector<Int>> distance_matrix(const std::vector<Factorization>& zs) {
  std::size_t n = zs.size();
  std::vector<std::vector<Int>> d(n, std::vector<Int>(n, Int(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i][j] = d[j][i] = distance(zs[i], zs[j]);
  return d;
}

}  // namespace

CertifiedValue catenary(const Monoid& m, const Rational& x,
                        const SearchBudget& budget) {
  CertifiedSet<Factorization> zs = factorizations(m, x, budget);
  CertifiedValue out{Int(0), zs.certificate};
  std::size_t n = zs.items.size();
  if (n <= 1) return out;
  std::vector<std::vector<Int>> d = distance_matrix(zs.items);
  // grow a minimax spanning tree; its largest edge is the bottleneck
  std::vector<bool> in_tree(n, false);
  std::vector<Int> best = d[0];
  in_tree[0] = true;
  Int c = 0;
  for (std::size_t step = 1; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t j = 0; j < n; ++j)
      if (!in_tree[j] && (pick == n || best[j] < best[pick])) pick = j;
    in_tree[pick] = true;
    c = std::max(c, best[pick]);
    for (std::size_t j = 0; j < n; ++j)
      if (!in_tree[j]) best[j] = std::min(best[j], d[pick][j]);
  }
  out.value = c;
  return out;
}

CertifiedValue monotone_catenary(const Monoid& m, const Rational& x,
                                 const SearchBudget& budget) {
  CertifiedSet<Factorization> zs = factorizations(m, x, budget);
  CertifiedValue out{Int(0), zs.certificate};
  std::size_t n = zs.items.size();
  if (n <= 1) return out;
  std::vector<std::vector<Int>> d = distance_matrix(zs.items);
  std::vector<Int> len(n);
  for (std::size_t i = 0; i < n; ++i) len[i] = zs.items[i].length();

  // A monotone chain between z and z' with |z| <= |z'| runs through
  // non-decreasing lengths (equal-length endpoints force a constant-length
  // chain).  Try each candidate cap ascending; the max distance always works
  // because a direct edge is itself monotone.
  std::set<Int> cands;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) cands.insert(d[i][j]);
  for (const Int& cap : cands) {
    bool ok = true;
    for (std::size_t u = 0; u < n && ok; ++u) {
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> stack{u};
      seen[u] = true;
      while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w = 0; w < n; ++w)
          if (!seen[w] && len[w] >= len[v] && d[v][w] <= cap) {
            seen[w] = true;
            stack.push_back(w);
          }
      }
      for (std::size_t v = 0; v < n; ++v)
        if (len[v] >= len[u] && !seen[v]) {
          ok = false;
          break;
        }
    }
    if (ok) {
      out.value = cap;
      return out;
    }
  }
  out.value = *cands.rbegin();
  return out;
}

}  // namespace puiseux
