#include "esakia/presheaf.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace esakia {

std::vector<std::vector<std::string>> Presheaf::numbered_fibers(std::span<const std::size_t> sizes) {
  std::vector<std::vector<std::string>> out(sizes.size());
  for (std::size_t x = 0; x < sizes.size(); ++x) {
    for (std::size_t i = 0; i < sizes[x]; ++i) out[x].push_back(std::to_string(i));
  }
  return out;
}

std::optional<Presheaf> Presheaf::build(PosetPtr base, std::vector<std::vector<std::string>> fibers,
                                        std::span<const Restriction> restrictions, std::string& error) {
  const FinitePoset& p = *base;
  const std::size_t n = p.size();
  if (fibers.size() != n) {
    error = "one fiber per base element is required";
    return std::nullopt;
  }
  for (Elem x = 0; x < n; ++x) {
    std::set<std::string> seen(fibers[x].begin(), fibers[x].end());
    if (seen.size() != fibers[x].size()) {
      error = "duplicate fiber element over '" + p.label(x) + "'";
      return std::nullopt;
    }
  }

  std::vector<std::vector<Elem>> maps(n * n);
  std::vector<bool> given(n * n, false);
  for (Elem x = 0; x < n; ++x) {
    maps[x * n + x].resize(fibers[x].size());
    std::iota(maps[x * n + x].begin(), maps[x * n + x].end(), Elem{0});
  }
  for (const auto& r : restrictions) {
    if (r.from >= n || r.to >= n || !p.leq(r.from, r.to)) {
      error = "restriction between incomparable or unknown base elements";
      return std::nullopt;
    }
    const std::string where = "'" + p.label(r.from) + "' -> '" + p.label(r.to) + "'";
    if (r.map.size() != fibers[r.from].size()) {
      error = "restriction " + where + " is not total on its fiber";
      return std::nullopt;
    }
    for (Elem v : r.map) {
      if (v >= fibers[r.to].size()) {
        error = "restriction " + where + " leaves the target fiber";
        return std::nullopt;
      }
    }
    const std::size_t k = r.from * n + r.to;
    if ((r.from == r.to || given[k]) && maps[k] != r.map) {
      error = "restriction " + where + " is given inconsistently";
      return std::nullopt;
    }
    maps[k] = r.map;
    given[k] = true;
  }

  for (auto [x, y] : p.covers()) {
    if (given[x * n + y]) continue;
    if (!fibers[x].empty()) {
      error = "missing restriction along '" + p.label(x) + "' < '" + p.label(y) + "'";
      return std::nullopt;
    }
    given[x * n + y] = true;
  }

  // Fill the other comparable pairs by composing along a cover, shortest
  // intervals first so the tail is already known.
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem x = 0; x < n; ++x) {
    for (Elem y : p.up(x)) {
      if (x != y && !given[x * n + y]) pairs.emplace_back(x, y);
    }
  }
  auto interval = [&](const std::pair<Elem, Elem>& e) { return (p.up(e.first) & p.down(e.second)).size(); };
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const auto& a, const auto& b) { return interval(a) < interval(b); });
  const auto covers = p.covers();
  for (auto [x, y] : pairs) {
    for (auto [lo, z] : covers) {
      if (lo != x || !p.leq(z, y)) continue;
      std::vector<Elem> composite(fibers[x].size());
      for (Elem s = 0; s < composite.size(); ++s) composite[s] = maps[z * n + y][maps[x * n + z][s]];
      maps[x * n + y] = std::move(composite);
      break;
    }
  }

  for (Elem x = 0; x < n; ++x) {
    for (Elem y : p.up(x)) {
      for (Elem z : p.up(y)) {
        const auto& xy = maps[x * n + y];
        const auto& yz = maps[y * n + z];
        const auto& xz = maps[x * n + z];
        for (Elem s = 0; s < xy.size(); ++s) {
          if (yz[xy[s]] != xz[s]) {
            error = "restrictions are not functorial through '" + p.label(x) + "' <= '" +
                    p.label(y) + "' <= '" + p.label(z) + "'";
            return std::nullopt;
          }
        }
      }
    }
  }

  Presheaf f;
  f.offsets_.assign(n + 1, 0);
  for (Elem x = 0; x < n; ++x) f.offsets_[x + 1] = f.offsets_[x] + fibers[x].size();
  f.base_ = std::move(base);
  f.fibers_ = std::move(fibers);
  f.maps_ = std::move(maps);
  return f;
}

Presheaf Presheaf::make(PosetPtr base, std::vector<std::vector<std::string>> fibers,
                        std::span<const Restriction> restrictions) {
  std::string error;
  auto f = build(std::move(base), std::move(fibers), restrictions, error);
  if (!f) throw InvalidPresheaf(error);
  return std::move(*f);
}

std::optional<Presheaf> Presheaf::try_make(PosetPtr base, std::vector<std::vector<std::string>> fibers,
                                           std::span<const Restriction> restrictions) {
  std::string error;
  return build(std::move(base), std::move(fibers), restrictions, error);
}

Bundle::Bundle(PosetMap projection) : projection_(std::move(projection)) {
  if (!is_strict_p_morphism(projection_)) throw NotStrict("projection is not a strict p-morphism");
}

std::vector<Elem> Bundle::fiber(Elem x) const {
  std::vector<Elem> out;
  for (Elem e = 0; e < total()->size(); ++e) {
    if (projection_(e) == x) out.push_back(e);
  }
  return out;
}

Bundle grothendieck(const Presheaf& f) {
  const FinitePoset& p = *f.base();
  const std::size_t total = f.total_size();
  if (total > kMaxPosetSize) throw TooLarge("Grothendieck total exceeds 64 elements");
  std::vector<std::string> labels(total);
  std::vector<Elem> over(total);
  std::vector<Subset> up(total);
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem s = 0; s < f.fiber_size(x); ++s) {
      const auto e = static_cast<Elem>(f.offset(x) + s);
      labels[e] = p.label(x) + "." + f.fiber_label(x, s);
      over[e] = x;
      for (Elem y : p.up(x)) up[e].insert(static_cast<Elem>(f.offset(y) + f.restrict(x, y, s)));
    }
  }
  auto t = share(FinitePoset::from_relation(std::move(labels), std::move(up)));
  return Bundle(PosetMap(t, f.base(), std::move(over)));
}

Presheaf fiber_presheaf(const Bundle& b) {
  const FinitePoset& base = *b.base();
  const FinitePoset& total = *b.total();
  const std::size_t n = base.size();
  std::vector<std::vector<Elem>> members(n);
  std::vector<Elem> local(total.size());
  for (Elem e = 0; e < total.size(); ++e) {
    const Elem x = b.projection()(e);
    local[e] = static_cast<Elem>(members[x].size());
    members[x].push_back(e);
  }
  std::vector<std::vector<std::string>> fibers(n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem e : members[x]) fibers[x].push_back(total.label(e));
  }
  std::vector<Presheaf::Restriction> restrictions;
  for (Elem x = 0; x < n; ++x) {
    for (Elem y : base.up(x)) {
      if (y == x) continue;
      Presheaf::Restriction r{x, y, {}};
      for (Elem e : members[x]) {
        // strictness: exactly one element above e lies over y
        for (Elem lifted : total.up(e)) {
          if (b.projection()(lifted) == y) {
            r.map.push_back(local[lifted]);
            break;
          }
        }
      }
      restrictions.push_back(std::move(r));
    }
  }
  return Presheaf::make(b.base(), std::move(fibers), restrictions);
}

bool round_trip_total(const Bundle& b) {
  const Bundle again = grothendieck(fiber_presheaf(b));
  const auto& p1 = b.projection();
  const auto& p2 = again.projection();
  auto over_same_point = [&](Elem u, Elem v) { return p1(u) == p2(v); };
  return find_order_isomorphism(b.total(), again.total(), over_same_point).has_value();
}

std::optional<std::vector<std::vector<Elem>>> find_presheaf_isomorphism(const Presheaf& f,
                                                                        const Presheaf& g) {
  if (!same_poset(f.base(), g.base())) return std::nullopt;
  const FinitePoset& p = *f.base();
  const Elem n = static_cast<Elem>(p.size());
  for (Elem x = 0; x < n; ++x) {
    if (f.fiber_size(x) != g.fiber_size(x)) return std::nullopt;
  }

  std::vector<std::vector<Elem>> sigma(n);
  // Naturality against every already-fixed base element.
  auto natural_with_fixed = [&](Elem x) {
    for (Elem y = 0; y < x; ++y) {
      if (p.leq(y, x)) {
        for (Elem s = 0; s < f.fiber_size(y); ++s) {
          if (sigma[x][f.restrict(y, x, s)] != g.restrict(y, x, sigma[y][s])) return false;
        }
      }
      if (p.leq(x, y)) {
        for (Elem s = 0; s < f.fiber_size(x); ++s) {
          if (sigma[y][f.restrict(x, y, s)] != g.restrict(x, y, sigma[x][s])) return false;
        }
      }
    }
    return true;
  };

  std::function<bool(Elem)> search = [&](Elem x) -> bool {
    if (x == n) return true;
    std::vector<Elem> perm(f.fiber_size(x));
    std::iota(perm.begin(), perm.end(), Elem{0});
    do {
      sigma[x] = perm;
      if (natural_with_fixed(x) && search(x + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  if (!search(0)) return std::nullopt;
  return sigma;
}

bool round_trip_presheaf(const Presheaf& f) {
  return find_presheaf_isomorphism(f, fiber_presheaf(grothendieck(f))).has_value();
}

Subset subfunctor_to_upset(const Presheaf& f, const Subfunctor& s) {
  Subset out;
  for (Elem x = 0; x < s.parts.size(); ++x) {
    for (Elem xi : s.parts[x]) out.insert(static_cast<Elem>(f.offset(x) + xi));
  }
  return out;
}

std::vector<Subfunctor> subfunctor_upsets(const Presheaf& f) {
  const FinitePoset& p = *f.base();
  const std::size_t n = p.size();
  for (Elem x = 0; x < n; ++x) {
    if (f.fiber_size(x) > kMaxPosetSize) throw TooLarge("fiber exceeds 64 elements");
  }
  // Decide base elements from the top down, so every restriction target of x
  // is fixed when x is chosen.
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), Elem{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return p.up(a).size() < p.up(b).size(); });

  std::vector<Subfunctor> out;
  Subfunctor current{std::vector<Subset>(n)};
  std::function<void(std::size_t)> choose = [&](std::size_t depth) {
    if (depth == n) {
      out.push_back(current);
      return;
    }
    const Elem x = order[depth];
    const std::uint64_t count = std::uint64_t{1} << f.fiber_size(x);
    for (std::uint64_t bits = 0; bits < count; ++bits) {
      const Subset part{bits};
      bool closed = true;
      for (Elem y : p.up(x)) {
        if (y == x) continue;
        for (Elem s : part) {
          if (!current.parts[y].contains(f.restrict(x, y, s))) {
            closed = false;
            break;
          }
        }
        if (!closed) break;
      }
      if (!closed) continue;
      current.parts[x] = part;
      choose(depth + 1);
    }
    current.parts[x] = Subset{};
  };
  choose(0);
  std::sort(out.begin(), out.end(), [&](const Subfunctor& a, const Subfunctor& b) {
    return subfunctor_to_upset(f, a) < subfunctor_to_upset(f, b);
  });
  return out;
}

SubfunctorAlgebra subfunctor_algebra(const Presheaf& f) {
  const FinitePoset& p = *f.base();
  const std::size_t n = p.size();
  SubfunctorAlgebra result;
  result.elements = subfunctor_upsets(f);
  const auto& elems = result.elements;
  const std::size_t m = elems.size();

  std::vector<Subset> patterns(m);
  for (std::size_t i = 0; i < m; ++i) patterns[i] = subfunctor_to_upset(f, elems[i]);
  auto index = [&](Subset pattern) {
    auto it = std::lower_bound(patterns.begin(), patterns.end(), pattern);
    return static_cast<Elem>(it - patterns.begin());
  };

  std::vector<std::string> total_labels(f.total_size());
  for (Elem x = 0; x < n; ++x) {
    for (Elem s = 0; s < f.fiber_size(x); ++s) {
      total_labels[f.offset(x) + s] = p.label(x) + "." + f.fiber_label(x, s);
    }
  }

  FiniteHeytingAlgebra::Tables t;
  for (std::size_t i = 0; i < m; ++i) {
    std::string label = "{";
    bool first = true;
    for (Elem e : patterns[i]) {
      if (!first) label += ',';
      label += total_labels[e];
      first = false;
    }
    t.labels.push_back(label + "}");
  }
  t.leq.resize(m * m);
  t.meet.resize(m * m);
  t.join.resize(m * m);
  t.implies.resize(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const auto& a = elems[i];
      const auto& b = elems[j];
      Subfunctor meet{std::vector<Subset>(n)}, join{std::vector<Subset>(n)}, imp{std::vector<Subset>(n)};
      bool le = true;
      for (Elem x = 0; x < n; ++x) {
        meet.parts[x] = a.parts[x] & b.parts[x];
        join.parts[x] = a.parts[x] | b.parts[x];
        le = le && a.parts[x].subset_of(b.parts[x]);
        for (Elem s = 0; s < f.fiber_size(x); ++s) {
          bool holds = true;
          for (Elem y : p.up(x)) {
            const Elem r = f.restrict(x, y, s);
            if (a.parts[y].contains(r) && !b.parts[y].contains(r)) {
              holds = false;
              break;
            }
          }
          if (holds) imp.parts[x].insert(s);
        }
      }
      const std::size_t k = i * m + j;
      t.leq[k] = le;
      t.meet[k] = index(subfunctor_to_upset(f, meet));
      t.join[k] = index(subfunctor_to_upset(f, join));
      t.implies[k] = index(subfunctor_to_upset(f, imp));
    }
  }
  t.bottom = 0;
  t.top = static_cast<Elem>(m - 1);
  result.algebra = share(FiniteHeytingAlgebra::from_tables(t));
  return result;
}

namespace {

struct UpsetOfPoint {
  AlgebraPtr algebra;
  std::vector<Elem> members;  // induced index -> base element
};

UpsetOfPoint up_of_point(const FinitePoset& p, Elem x) {
  auto [sub, members] = induced_subposet(p, p.up(x));
  return {upset_algebra_ptr(share(std::move(sub))), std::move(members)};
}

HeytingHom m_component_into(const Presheaf& f, const SubfunctorAlgebra& hf, Elem x, Elem xi,
                            const UpsetOfPoint& target) {
  std::vector<Elem> v(hf.elements.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& s = hf.elements[i];
    Subset u;
    for (Elem k = 0; k < target.members.size(); ++k) {
      const Elem y = target.members[k];
      if (s.parts[y].contains(f.restrict(x, y, xi))) u.insert(k);
    }
    v[i] = *target.algebra->index_of_upset(u);
  }
  return HeytingHom(hf.algebra, target.algebra, std::move(v));
}

}  // namespace

HeytingHom m_component(const Presheaf& f, const SubfunctorAlgebra& hf, Elem x, Elem xi) {
  if (x >= f.base()->size() || xi >= f.fiber_size(x)) throw UnknownElement("no such fiber element");
  return m_component_into(f, hf, x, xi, up_of_point(*f.base(), x));
}

HeytingHom m_component(const Presheaf& f, Elem x, Elem xi) {
  return m_component(f, subfunctor_algebra(f), x, xi);
}

HeytingHom product_embedding(const Presheaf& f, const SubfunctorAlgebra& hf) {
  const FinitePoset& p = *f.base();
  std::vector<HeytingHom> components;
  std::vector<AlgebraPtr> factors;
  for (Elem x = 0; x < p.size(); ++x) {
    if (f.fiber_size(x) == 0) continue;
    const auto target = up_of_point(p, x);
    for (Elem xi = 0; xi < f.fiber_size(x); ++xi) {
      components.push_back(m_component_into(f, hf, x, xi, target));
      factors.push_back(target.algebra);
    }
  }
  auto product = share(product_algebra(factors));
  std::vector<Elem> v(hf.elements.size());
  for (Elem i = 0; i < v.size(); ++i) {
    std::size_t code = 0;
    for (std::size_t c = 0; c < components.size(); ++c) code = code * factors[c]->size() + components[c](i);
    v[i] = static_cast<Elem>(code);
  }
  return HeytingHom(hf.algebra, product, std::move(v));
}

HeytingHom product_embedding(const Presheaf& f) { return product_embedding(f, subfunctor_algebra(f)); }

Presheaf presheaf_product(const Presheaf& f, const Presheaf& g) {
  if (!same_poset(f.base(), g.base())) throw BaseMismatch("presheaves live on different bases");
  const FinitePoset& p = *f.base();
  const std::size_t n = p.size();
  std::vector<std::vector<std::string>> fibers(n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem s = 0; s < f.fiber_size(x); ++s) {
      for (Elem t = 0; t < g.fiber_size(x); ++t) {
        fibers[x].push_back("(" + f.fiber_label(x, s) + "," + g.fiber_label(x, t) + ")");
      }
    }
  }
  std::vector<Presheaf::Restriction> restrictions;
  for (Elem x = 0; x < n; ++x) {
    for (Elem y : p.up(x)) {
      if (y == x) continue;
      Presheaf::Restriction r{x, y, {}};
      for (Elem s = 0; s < f.fiber_size(x); ++s) {
        for (Elem t = 0; t < g.fiber_size(x); ++t) {
          r.map.push_back(static_cast<Elem>(f.restrict(x, y, s) * g.fiber_size(y) + g.restrict(x, y, t)));
        }
      }
      restrictions.push_back(std::move(r));
    }
  }
  return Presheaf::make(f.base(), std::move(fibers), restrictions);
}

bool is_natural(const PresheafMorphism& m) {
  const Presheaf& f = *m.source;
  const Presheaf& g = *m.target;
  if (!same_poset(f.base(), g.base())) return false;
  const FinitePoset& p = *f.base();
  if (m.components.size() != p.size()) return false;
  for (Elem x = 0; x < p.size(); ++x) {
    if (m.components[x].size() != f.fiber_size(x)) return false;
    for (Elem v : m.components[x]) {
      if (v >= g.fiber_size(x)) return false;
    }
  }
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem y : p.up(x)) {
      for (Elem s = 0; s < f.fiber_size(x); ++s) {
        if (m.components[y][f.restrict(x, y, s)] != g.restrict(x, y, m.components[x][s])) return false;
      }
    }
  }
  return true;
}

PosetMap grothendieck_map(const PresheafMorphism& m, const Bundle& source, const Bundle& target) {
  if (!is_natural(m)) throw InvalidMap("components do not form a natural transformation");
  const Presheaf& f = *m.source;
  const Presheaf& g = *m.target;
  std::vector<Elem> v(f.total_size());
  for (Elem x = 0; x < f.base()->size(); ++x) {
    for (Elem s = 0; s < f.fiber_size(x); ++s) {
      v[f.offset(x) + s] = static_cast<Elem>(g.offset(x) + m.components[x][s]);
    }
  }
  return PosetMap(source.total(), target.total(), std::move(v));
}

PresheafMorphism fiber_morphism(const PosetMap& g, const Bundle& source, const Bundle& target) {
  if (compose(target.projection(), g) != source.projection()) {
    throw InvalidMap("map does not commute with the projections");
  }
  auto f1 = std::make_shared<const Presheaf>(fiber_presheaf(source));
  auto f2 = std::make_shared<const Presheaf>(fiber_presheaf(target));
  const std::size_t n = source.base()->size();
  PresheafMorphism m{f1, f2, std::vector<std::vector<Elem>>(n)};
  for (Elem x = 0; x < n; ++x) {
    const auto from = source.fiber(x);
    const auto to = target.fiber(x);
    for (Elem e : from) {
      const auto it = std::find(to.begin(), to.end(), g(e));
      m.components[x].push_back(static_cast<Elem>(it - to.begin()));
    }
  }
  return m;
}

}  // namespace esakia
