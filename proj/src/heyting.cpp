#include "esakia/heyting.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

namespace esakia {

namespace {

void check_algebra_size(std::size_t n) {
  if (n > FiniteHeytingAlgebra::kMaxSize) {
    throw TooLarge("algebra would have " + std::to_string(n) + " elements; at most " +
                   std::to_string(FiniteHeytingAlgebra::kMaxSize) + " are supported");
  }
}

}  // namespace

FiniteHeytingAlgebra::FiniteHeytingAlgebra(std::vector<std::string> labels) : labels_(std::move(labels)) {
  check_algebra_size(labels_.size());
  const std::size_t cells = labels_.size() * labels_.size();
  leq_.assign(cells, false);
  meet_.assign(cells, 0);
  join_.assign(cells, 0);
  implies_.assign(cells, 0);
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::from_tables(const Tables& t) {
  const std::size_t n = t.labels.size();
  FiniteHeytingAlgebra a(t.labels);
  const std::size_t cells = n * n;
  if (t.leq.size() != cells || t.meet.size() != cells || t.join.size() != cells ||
      t.implies.size() != cells) {
    throw InvalidMap("operation tables must have n*n entries");
  }
  auto in_range = [n](Elem e) { return e < n; };
  if (!std::all_of(t.meet.begin(), t.meet.end(), in_range) ||
      !std::all_of(t.join.begin(), t.join.end(), in_range) ||
      !std::all_of(t.implies.begin(), t.implies.end(), in_range) || (n > 0 && !in_range(t.bottom)) ||
      (n > 0 && !in_range(t.top)) || n == 0) {
    throw InvalidMap("operation table refers to an element outside the carrier");
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      const std::size_t k = static_cast<std::size_t>(x) * n + y;
      a.set_cell(x, y, t.leq[k], t.meet[k], t.join[k], t.implies[k]);
    }
  }
  a.bottom_ = t.bottom;
  a.top_ = t.top;
  return a;
}

FiniteHeytingAlgebra FiniteHeytingAlgebra::from_lattice_order(const FinitePoset& order) {
  const std::size_t n = order.size();
  if (n == 0) throw NotALattice("a lattice needs at least one element");
  FiniteHeytingAlgebra a(order.labels());

  auto greatest = [&](Subset s) -> std::optional<Elem> {
    for (Elem m : s) {
      if (order.down(m) == s) return m;
    }
    return std::nullopt;
  };
  auto least = [&](Subset s) -> std::optional<Elem> {
    for (Elem m : s) {
      if (order.up(m) == s) return m;
    }
    return std::nullopt;
  };

  auto bottom = least(order.carrier());
  auto top = greatest(order.carrier());
  if (!bottom || !top) throw NotALattice("order has no bottom or no top");
  a.bottom_ = *bottom;
  a.top_ = *top;

  std::vector<Elem> meet(n * n), join(n * n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      auto m = greatest(order.down(x) & order.down(y));
      auto j = least(order.up(x) & order.up(y));
      if (!m || !j) {
        throw NotALattice("'" + order.label(x) + "' and '" + order.label(y) +
                          "' lack a meet or a join");
      }
      meet[x * n + y] = *m;
      join[x * n + y] = *j;
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      for (Elem z = 0; z < n; ++z) {
        if (meet[x * n + join[y * n + z]] != join[meet[x * n + y] * n + meet[x * n + z]]) {
          throw NotDistributive("distributivity fails at '" + order.label(x) + "', '" +
                                order.label(y) + "', '" + order.label(z) + "'");
        }
      }
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      // x => y is the largest c with c and x below y; distributivity makes
      // that set a principal downset.
      Subset below;
      for (Elem c = 0; c < n; ++c) {
        if (order.leq(meet[c * n + x], y)) below.insert(c);
      }
      auto imp = greatest(below);
      if (!imp) throw NotDistributive("no relative pseudocomplement");
      a.set_cell(x, y, order.leq(x, y), meet[x * n + y], join[x * n + y], *imp);
    }
  }
  return a;
}

std::optional<Elem> FiniteHeytingAlgebra::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Elem>(it - labels_.begin());
}

std::optional<Elem> FiniteHeytingAlgebra::index_of_upset(Subset u) const {
  if (!base_) return std::nullopt;
  const std::size_t mask = lookup_keys_.size() - 1;
  for (std::size_t k = lookup_home(u.bits());; k = (k + 1) & mask) {
    if (lookup_slots_[k] == 0) return std::nullopt;
    if (lookup_keys_[k] == u.bits()) return static_cast<Elem>(lookup_slots_[k] - 1);
  }
}

void FiniteHeytingAlgebra::build_lookup() {
  unsigned log = 1;
  while ((std::size_t{1} << log) < 2 * upsets_.size()) ++log;
  lookup_shift_ = 64 - log;
  lookup_keys_.assign(std::size_t{1} << log, 0);
  lookup_slots_.assign(std::size_t{1} << log, 0);
  const std::size_t mask = lookup_keys_.size() - 1;
  for (Elem i = 0; i < upsets_.size(); ++i) {
    std::size_t k = lookup_home(upsets_[i].bits());
    while (lookup_slots_[k] != 0) k = (k + 1) & mask;
    lookup_keys_[k] = upsets_[i].bits();
    lookup_slots_[k] = static_cast<std::uint16_t>(i + 1);
  }
}

bool FiniteHeytingAlgebra::operator==(const FiniteHeytingAlgebra& other) const {
  return labels_ == other.labels_ && bottom_ == other.bottom_ && top_ == other.top_ &&
         leq_ == other.leq_ && meet_ == other.meet_ && join_ == other.join_ &&
         implies_ == other.implies_;
}

FiniteHeytingAlgebra upset_algebra(const PosetPtr& x) {
  const FinitePoset& p = *x;
  std::vector<Subset> ups = all_upsets(p);
  check_algebra_size(ups.size());

  std::vector<std::string> labels;
  labels.reserve(ups.size());
  for (Subset u : ups) labels.push_back(format_subset(p, u));
  FiniteHeytingAlgebra a(std::move(labels));
  a.base_ = x;
  a.upsets_ = ups;
  a.build_lookup();
  a.bottom_ = 0;  // the empty set sorts first
  a.top_ = static_cast<Elem>(ups.size() - 1);

  // Small bases index upsets through a dense table over all bit patterns.
  constexpr std::size_t kDenseBits = 16;
  std::vector<std::uint16_t> dense;
  if (p.size() <= kDenseBits) {
    dense.assign(std::size_t{1} << p.size(), 0);
    for (Elem i = 0; i < ups.size(); ++i) dense[ups[i].bits()] = static_cast<std::uint16_t>(i);
  }
  auto index = [&](Subset u) -> Elem {
    return dense.empty() ? *a.index_of_upset(u) : dense[u.bits()];
  };
  // Downward closure of every bit pattern, for small bases.
  std::vector<std::uint64_t> closure;
  if (!dense.empty()) {
    closure.assign(dense.size(), 0);
    for (std::size_t d = 1; d < closure.size(); ++d) {
      const auto low = static_cast<Elem>(std::countr_zero(d));
      closure[d] = closure[d & (d - 1)] | p.down(low).bits();
    }
  }
  auto down_closure = [&](Subset d) {
    if (!closure.empty()) return Subset{closure[d.bits()]};
    Subset below;
    for (Elem e : d) below |= p.down(e);
    return below;
  };

  const Subset all = p.carrier();
  const std::size_t n = ups.size();
  for (Elem i = 0; i < n; ++i) {
    const Subset u = ups[i];
    for (Elem j = 0; j < n; ++j) {
      const Subset v = ups[j];
      Elem m, jn;
      if (j < i) {
        m = a.meet(j, i);
        jn = a.join(j, i);
      } else {
        m = index(u & v);
        jn = index(u | v);
      }
      // U => V is the complement of the downset generated by U \ V.
      Elem imp = a.top_;
      const Subset outside = u - v;
      if (!outside.empty()) imp = index(all - down_closure(outside));
      a.set_cell(i, j, outside.empty(), m, jn, imp);
    }
  }
  return a;
}

bool verify_heyting(const FiniteHeytingAlgebra& a) {
  const Elem n = static_cast<Elem>(a.size());
  if (n == 0) return false;
  for (Elem x = 0; x < n; ++x) {
    if (!a.leq(x, x) || !a.leq(a.bottom(), x) || !a.leq(x, a.top())) return false;
    for (Elem y = 0; y < n; ++y) {
      if (x != y && a.leq(x, y) && a.leq(y, x)) return false;
      const Elem m = a.meet(x, y);
      const Elem j = a.join(x, y);
      if (!a.leq(m, x) || !a.leq(m, y) || !a.leq(x, j) || !a.leq(y, j)) return false;
      for (Elem z = 0; z < n; ++z) {
        if (a.leq(x, y) && a.leq(y, z) && !a.leq(x, z)) return false;
        if (a.leq(z, x) && a.leq(z, y) && !a.leq(z, m)) return false;
        if (a.leq(x, z) && a.leq(y, z) && !a.leq(j, z)) return false;
        if (a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z))) return false;
        // residuation: x and y below z iff x below (y => z)
        if (a.leq(a.meet(x, y), z) != a.leq(x, a.implies(y, z))) return false;
      }
    }
  }
  return true;
}

Elem biconditional(const FiniteHeytingAlgebra& a, Elem x, Elem y) {
  return a.meet(a.implies(x, y), a.implies(y, x));
}

std::vector<Elem> join_irreducibles(const FiniteHeytingAlgebra& a) {
  std::vector<Elem> out;
  for (Elem x = 0; x < a.size(); ++x) {
    if (x == a.bottom()) continue;
    Elem below = a.bottom();
    for (Elem y = 0; y < a.size(); ++y) {
      if (y != x && a.leq(y, x)) below = a.join(below, y);
    }
    if (below != x) out.push_back(x);
  }
  return out;
}

FiniteHeytingAlgebra product_algebra(std::span<const AlgebraPtr> factors) {
  std::size_t n = 1;
  for (const auto& f : factors) {
    n *= f->size();
    check_algebra_size(n);
  }
  const std::size_t k = factors.size();
  std::vector<std::vector<Elem>> digits(n, std::vector<Elem>(k));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (std::size_t f = k; f-- > 0;) {
      digits[i][f] = static_cast<Elem>(rest % factors[f]->size());
      rest /= factors[f]->size();
    }
    std::string label = "(";
    for (std::size_t f = 0; f < k; ++f) {
      if (f) label += ',';
      label += factors[f]->label(digits[i][f]);
    }
    labels[i] = label + ")";
  }
  auto encode = [&](const std::vector<Elem>& d) {
    std::size_t v = 0;
    for (std::size_t f = 0; f < k; ++f) v = v * factors[f]->size() + d[f];
    return static_cast<Elem>(v);
  };

  FiniteHeytingAlgebra a(std::move(labels));
  std::vector<Elem> m(k), j(k), imp(k), bot(k), top(k);
  for (std::size_t f = 0; f < k; ++f) {
    bot[f] = factors[f]->bottom();
    top[f] = factors[f]->top();
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      bool le = true;
      for (std::size_t f = 0; f < k; ++f) {
        const auto& alg = *factors[f];
        const Elem dx = digits[x][f];
        const Elem dy = digits[y][f];
        le = le && alg.leq(dx, dy);
        m[f] = alg.meet(dx, dy);
        j[f] = alg.join(dx, dy);
        imp[f] = alg.implies(dx, dy);
      }
      a.set_cell(x, y, le, encode(m), encode(j), encode(imp));
    }
  }
  a.bottom_ = encode(bot);
  a.top_ = encode(top);
  return a;
}

HeytingHom::HeytingHom(AlgebraPtr dom, AlgebraPtr cod, std::vector<Elem> assign)
    : domain(std::move(dom)), codomain(std::move(cod)), assignment(std::move(assign)) {
  if (!domain || !codomain) throw InvalidMap("homomorphism requires a domain and a codomain");
  if (assignment.size() != domain->size()) throw InvalidMap("homomorphism is not total");
  for (Elem y : assignment) {
    if (y >= codomain->size()) throw InvalidMap("homomorphism leaves its codomain");
  }
}

HeytingHom identity_hom(const AlgebraPtr& a) {
  std::vector<Elem> v(a->size());
  std::iota(v.begin(), v.end(), Elem{0});
  return HeytingHom(a, a, std::move(v));
}

HeytingHom compose(const HeytingHom& g, const HeytingHom& f) {
  if (!same_algebra(f.codomain, g.domain)) throw DomainMismatch("cannot compose: codomain and domain differ");
  std::vector<Elem> v(f.assignment.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(f(static_cast<Elem>(i)));
  return HeytingHom(f.domain, g.codomain, std::move(v));
}

namespace {

bool preserves(const HeytingHom& h, bool check_implies) {
  const auto& a = *h.domain;
  const auto& b = *h.codomain;
  if (h(a.bottom()) != b.bottom() || h(a.top()) != b.top()) return false;
  for (Elem x = 0; x < a.size(); ++x) {
    for (Elem y = 0; y < a.size(); ++y) {
      if (h(a.meet(x, y)) != b.meet(h(x), h(y))) return false;
      if (h(a.join(x, y)) != b.join(h(x), h(y))) return false;
      if (check_implies && h(a.implies(x, y)) != b.implies(h(x), h(y))) return false;
    }
  }
  return true;
}

}  // namespace

bool is_homomorphism(const HeytingHom& h) { return preserves(h, true); }

bool is_lattice_homomorphism(const HeytingHom& h) { return preserves(h, false); }

bool is_injective(const HeytingHom& h) {
  std::vector<bool> hit(h.codomain->size(), false);
  for (Elem y : h.assignment) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

bool is_isomorphism(const HeytingHom& h) {
  return h.domain->size() == h.codomain->size() && is_injective(h) && is_homomorphism(h);
}

bool same_hom(const HeytingHom& f, const HeytingHom& g) {
  return same_algebra(f.domain, g.domain) && same_algebra(f.codomain, g.codomain) &&
         f.assignment == g.assignment;
}

namespace {

PosetPtr irreducible_poset(const FiniteHeytingAlgebra& a, const std::vector<Elem>& irr) {
  if (irr.size() > kMaxPosetSize) throw TooLarge("too many join-irreducibles for isomorphism search");
  std::vector<std::string> labels;
  std::vector<Subset> up(irr.size());
  for (Elem i = 0; i < irr.size(); ++i) {
    labels.push_back(a.label(irr[i]));
    for (Elem j = 0; j < irr.size(); ++j) {
      if (a.leq(irr[i], irr[j])) up[i].insert(j);
    }
  }
  return share(FinitePoset::from_relation(std::move(labels), std::move(up)));
}

}  // namespace

std::optional<HeytingHom> find_isomorphism(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a->size() != b->size()) return std::nullopt;
  const auto ja = join_irreducibles(*a);
  const auto jb = join_irreducibles(*b);
  if (ja.size() != jb.size()) return std::nullopt;
  const auto pa = irreducible_poset(*a, ja);
  const auto pb = irreducible_poset(*b, jb);

  std::optional<HeytingHom> result;
  auto extend = [&](const PosetMap& m) {
    std::vector<Elem> v(a->size(), b->bottom());
    for (Elem x = 0; x < a->size(); ++x) {
      for (Elem i = 0; i < ja.size(); ++i) {
        if (a->leq(ja[i], x)) v[x] = b->join(v[x], jb[m(i)]);
      }
    }
    HeytingHom h(a, b, std::move(v));
    if (!is_isomorphism(h)) return false;
    result.emplace(std::move(h));
    return true;
  };
  find_order_isomorphism(pa, pb, {}, extend);
  return result;
}

std::optional<HeytingHom> isomorphism_from_generators(const AlgebraPtr& a, const AlgebraPtr& b,
                                                      std::span<const std::pair<Elem, Elem>> seeds) {
  if (a->size() != b->size()) return std::nullopt;
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> image(a->size(), kUnset);
  std::vector<Elem> assigned;
  assigned.reserve(a->size());

  auto assign = [&](Elem x, Elem y) {
    if (image[x] == kUnset) {
      image[x] = y;
      assigned.push_back(x);
      return true;
    }
    return image[x] == y;
  };

  if (!assign(a->bottom(), b->bottom()) || !assign(a->top(), b->top())) return std::nullopt;
  for (auto [x, y] : seeds) {
    if (x >= a->size() || y >= b->size() || !assign(x, y)) return std::nullopt;
  }
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const Elem p = assigned[i];
      const Elem q = assigned[j];
      if (!assign(a->meet(p, q), b->meet(image[p], image[q]))) return std::nullopt;
      if (!assign(a->join(p, q), b->join(image[p], image[q]))) return std::nullopt;
    }
  }
  if (assigned.size() != a->size()) return std::nullopt;
  HeytingHom h(a, b, std::move(image));
  if (!is_isomorphism(h)) return std::nullopt;
  return h;
}

FiniteHeytingAlgebra permute(const FiniteHeytingAlgebra& a, std::span<const Elem> perm) {
  const Elem n = static_cast<Elem>(a.size());
  if (perm.size() != n) throw InvalidMap("permutation size does not match the carrier");
  std::vector<std::string> labels(n);
  for (Elem x = 0; x < n; ++x) labels[perm[x]] = a.label(x);
  FiniteHeytingAlgebra out(std::move(labels));
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      out.set_cell(perm[x], perm[y], a.leq(x, y), perm[a.meet(x, y)], perm[a.join(x, y)],
                   perm[a.implies(x, y)]);
    }
  }
  out.bottom_ = perm[a.bottom()];
  out.top_ = perm[a.top()];
  return out;
}

}  // namespace esakia
