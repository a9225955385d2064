#pragma once

// Brute-force reference implementations used as oracles by the tests. They
// work directly from definitions over plain sets and relations and share no
// algorithms with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "esakia/heyting.hpp"
#include "esakia/poset.hpp"

namespace brute {

using esakia::Elem;
using esakia::FiniteHeytingAlgebra;
using esakia::FinitePoset;
using Set = std::set<Elem>;
using Relation = std::vector<std::vector<bool>>;

inline Relation relation_of(const FinitePoset& p) {
  Relation r(p.size(), std::vector<bool>(p.size()));
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem y = 0; y < p.size(); ++y) r[x][y] = p.leq(x, y);
  }
  return r;
}

inline std::vector<Set> all_subsets(std::size_t n) {
  std::vector<Set> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Set s;
    for (Elem i = 0; i < n; ++i) {
      if (mask >> i & 1) s.insert(i);
    }
    out.push_back(s);
  }
  return out;
}

inline bool is_upset(const Relation& r, const Set& s) {
  for (Elem x : s) {
    for (Elem y = 0; y < r.size(); ++y) {
      if (r[x][y] && !s.count(y)) return false;
    }
  }
  return true;
}

inline std::vector<Set> upsets(const Relation& r) {
  std::vector<Set> out;
  for (const auto& s : all_subsets(r.size())) {
    if (is_upset(r, s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_partial_order(const Relation& r) {
  const std::size_t n = r.size();
  for (std::size_t x = 0; x < n; ++x) {
    if (!r[x][x]) return false;
    for (std::size_t y = 0; y < n; ++y) {
      if (x != y && r[x][y] && r[y][x]) return false;
      for (std::size_t z = 0; z < n; ++z) {
        if (r[x][y] && r[y][z] && !r[x][z]) return false;
      }
    }
  }
  return true;
}

/// Every binary relation on n points kept when it is a partial order.
inline std::size_t count_partial_orders(std::size_t n) {
  std::size_t count = 0;
  const std::size_t cells = n * n;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells); ++mask) {
    Relation r(n, std::vector<bool>(n));
    for (std::size_t k = 0; k < cells; ++k) r[k / n][k % n] = mask >> k & 1;
    if (is_partial_order(r)) ++count;
  }
  return count;
}

/// All functions {0..n-1} -> {0..m-1}.
inline std::vector<std::vector<Elem>> all_functions(std::size_t n, std::size_t m) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> f(n, 0);
  if (m == 0) {
    if (n == 0) out.push_back(f);
    return out;
  }
  while (true) {
    out.push_back(f);
    std::size_t i = 0;
    while (i < n && ++f[i] == m) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

inline bool monotone(const Relation& p, const Relation& q, const std::vector<Elem>& f) {
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem y = 0; y < p.size(); ++y) {
      if (p[x][y] && !q[f[x]][f[y]]) return false;
    }
  }
  return true;
}

/// Number of x' >= x with f(x') = y.
inline std::size_t lifts(const Relation& p, const std::vector<Elem>& f, Elem x, Elem y) {
  std::size_t n = 0;
  for (Elem z = 0; z < p.size(); ++z) {
    if (p[x][z] && f[z] == y) ++n;
  }
  return n;
}

inline bool p_morphism(const Relation& p, const Relation& q, const std::vector<Elem>& f) {
  if (!monotone(p, q, f)) return false;
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem y = 0; y < q.size(); ++y) {
      if (q[f[x]][y] && lifts(p, f, x, y) == 0) return false;
    }
  }
  return true;
}

inline bool strict_p_morphism(const Relation& p, const Relation& q, const std::vector<Elem>& f) {
  if (!p_morphism(p, q, f)) return false;
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem y = 0; y < q.size(); ++y) {
      if (q[f[x]][y] && lifts(p, f, x, y) != 1) return false;
    }
  }
  return true;
}

/// Subsets of the algebra's carrier that are prime filters, by definition.
inline std::vector<Set> prime_filters(const FiniteHeytingAlgebra& a) {
  std::vector<Set> out;
  const std::size_t n = a.size();
  for (const auto& s : all_subsets(n)) {
    if (s.empty() || s.count(a.bottom())) continue;
    bool ok = true;
    for (Elem x : s) {
      for (Elem y = 0; y < n; ++y) {
        if (a.leq(x, y) && !s.count(y)) ok = false;
      }
      for (Elem y : s) {
        if (!s.count(a.meet(x, y))) ok = false;
      }
    }
    for (Elem x = 0; x < n && ok; ++x) {
      for (Elem y = 0; y < n; ++y) {
        if (s.count(a.join(x, y)) && !s.count(x) && !s.count(y)) ok = false;
      }
    }
    if (ok) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Maps a -> b preserving the chosen operations, by exhaustive filtering.
inline std::vector<std::vector<Elem>> homomorphisms(const FiniteHeytingAlgebra& a, const FiniteHeytingAlgebra& b,
                                                    bool with_implication) {
  std::vector<std::vector<Elem>> out;
  for (const auto& f : all_functions(a.size(), b.size())) {
    bool ok = f[a.bottom()] == b.bottom() && f[a.top()] == b.top();
    for (Elem x = 0; x < a.size() && ok; ++x) {
      for (Elem y = 0; y < a.size() && ok; ++y) {
        ok = f[a.meet(x, y)] == b.meet(f[x], f[y]) && f[a.join(x, y)] == b.join(f[x], f[y]);
        if (with_implication) ok = ok && f[a.implies(x, y)] == b.implies(f[x], f[y]);
      }
    }
    if (ok) out.push_back(f);
  }
  return out;
}

/// Biconditional of two upsets computed pointwise: the points whose whole
/// principal upset sees U and V alike.
inline Set upset_biconditional(const Relation& r, const Set& u, const Set& v) {
  Set out;
  for (Elem x = 0; x < r.size(); ++x) {
    bool same = true;
    for (Elem y = 0; y < r.size(); ++y) {
      if (r[x][y] && u.count(y) != v.count(y)) same = false;
    }
    if (same) out.insert(x);
  }
  return out;
}

/// E_H for the dual of f: X' -> X, evaluated on sets: for every upset U of
/// X', the union over upsets W of X of (U <=> f^-1(W)) is all of X'.
inline bool etale_by_sets(const Relation& dom, const Relation& cod, const std::vector<Elem>& f) {
  for (const auto& u : upsets(dom)) {
    Set cover;
    for (const auto& w : upsets(cod)) {
      Set pre;
      for (Elem x = 0; x < dom.size(); ++x) {
        if (w.count(f[x])) pre.insert(x);
      }
      for (Elem x : upset_biconditional(dom, u, pre)) cover.insert(x);
    }
    if (cover.size() != dom.size()) return false;
  }
  return true;
}

}  // namespace brute
