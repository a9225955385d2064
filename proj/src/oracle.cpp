#include "esakia/oracle.hpp"

namespace esakia::oracle {

namespace {

// Advances a mixed-radix counter, last digit fastest. Returns false after
// the final value. An empty counter has exactly one value.
bool advance(std::vector<std::size_t>& digits, const std::vector<std::size_t>& radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

}  // namespace

void for_each_labeled_poset(std::size_t n, const std::function<void(const PosetPtr&)>& visit) {
  if (n > kMaxPosetSize) throw TooLarge("poset enumeration size out of range");
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }
  std::vector<std::size_t> state(pairs.size(), 0);
  const std::vector<std::size_t> radix(pairs.size(), 3);
  do {
    std::vector<Subset> up(n);
    for (Elem x = 0; x < n; ++x) up[x] = Subset::singleton(x);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto [i, j] = pairs[k];
      if (state[k] == 1) up[i].insert(j);
      if (state[k] == 2) up[j].insert(i);
    }
    bool transitive = true;
    for (Elem x = 0; x < n && transitive; ++x) {
      for (Elem y : up[x]) {
        if (!up[y].subset_of(up[x])) {
          transitive = false;
          break;
        }
      }
    }
    if (transitive) visit(share(FinitePoset::from_relation(std::move(up))));
  } while (advance(state, radix));
}

std::vector<PosetPtr> all_labeled_posets(std::size_t n) {
  std::vector<PosetPtr> out;
  for_each_labeled_poset(n, [&](const PosetPtr& p) { out.push_back(p); });
  return out;
}

void for_each_monotone_map(const PosetPtr& p, const PosetPtr& q,
                           const std::function<void(const PosetMap&)>& visit) {
  const std::size_t n = p->size();
  const std::size_t m = q->size();
  std::vector<Elem> a(n);
  std::function<void(Elem)> extend = [&](Elem x) {
    if (x == n) {
      visit(PosetMap(p, q, a));
      return;
    }
    for (Elem y = 0; y < m; ++y) {
      bool ok = true;
      for (Elem z = 0; z < x && ok; ++z) {
        if (p->leq(z, x) && !q->leq(a[z], y)) ok = false;
        if (p->leq(x, z) && !q->leq(y, a[z])) ok = false;
      }
      if (!ok) continue;
      a[x] = y;
      extend(x + 1);
    }
  };
  extend(0);
}

std::vector<PosetMap> all_monotone_maps(const PosetPtr& p, const PosetPtr& q) {
  std::vector<PosetMap> out;
  for_each_monotone_map(p, q, [&](const PosetMap& f) { out.push_back(f); });
  return out;
}

std::vector<PosetMap> all_p_morphisms(const PosetPtr& p, const PosetPtr& q) {
  std::vector<PosetMap> out;
  for_each_monotone_map(p, q, [&](const PosetMap& f) {
    if (is_p_morphism(f)) out.push_back(f);
  });
  return out;
}

std::vector<PosetMap> all_strict_p_morphisms(const PosetPtr& p, const PosetPtr& q) {
  std::vector<PosetMap> out;
  for_each_monotone_map(p, q, [&](const PosetMap& f) {
    if (is_strict_p_morphism(f)) out.push_back(f);
  });
  return out;
}

namespace {

std::vector<HeytingHom> homomorphisms(const AlgebraPtr& a, const AlgebraPtr& b, bool heyting) {
  const FiniteHeytingAlgebra& A = *a;
  const FiniteHeytingAlgebra& B = *b;
  const Elem n = static_cast<Elem>(A.size());
  constexpr Elem kUnset = ~Elem{0};
  std::vector<Elem> image(n, kUnset);
  std::vector<HeytingHom> out;

  // Checks every operation instance whose operands and result are assigned.
  auto consistent = [&](Elem x) {
    for (Elem u = 0; u < n; ++u) {
      if (image[u] == kUnset) continue;
      const Elem m = A.meet(x, u), j = A.join(x, u);
      if (image[m] != kUnset && image[m] != B.meet(image[x], image[u])) return false;
      if (image[j] != kUnset && image[j] != B.join(image[x], image[u])) return false;
      if (heyting) {
        const Elem i1 = A.implies(x, u), i2 = A.implies(u, x);
        if (image[i1] != kUnset && image[i1] != B.implies(image[x], image[u])) return false;
        if (image[i2] != kUnset && image[i2] != B.implies(image[u], image[x])) return false;
      }
    }
    return true;
  };

  std::function<void(Elem)> extend = [&](Elem x) {
    if (x == n) {
      HeytingHom h(a, b, image);
      if (heyting ? is_homomorphism(h) : is_lattice_homomorphism(h)) out.push_back(std::move(h));
      return;
    }
    if (x == A.bottom() || x == A.top()) {
      const Elem forced = x == A.bottom() ? B.bottom() : B.top();
      if (A.bottom() == A.top() && B.bottom() != B.top()) return;  // nothing maps a point onto two
      image[x] = forced;
      if (consistent(x)) extend(x + 1);
      image[x] = kUnset;
      return;
    }
    for (Elem y = 0; y < B.size(); ++y) {
      image[x] = y;
      if (consistent(x)) extend(x + 1);
    }
    image[x] = kUnset;
  };
  extend(0);
  return out;
}

}  // namespace

std::vector<HeytingHom> all_homomorphisms(const AlgebraPtr& a, const AlgebraPtr& b) {
  return homomorphisms(a, b, true);
}

std::vector<HeytingHom> all_lattice_homomorphisms(const AlgebraPtr& a, const AlgebraPtr& b) {
  return homomorphisms(a, b, false);
}

void for_each_presheaf(const PosetPtr& x, std::size_t max_fiber,
                       const std::function<void(const Presheaf&)>& visit) {
  const std::size_t n = x->size();
  const auto covers = x->covers();
  std::vector<std::size_t> sizes(n, 0);
  const std::vector<std::size_t> size_radix(n, max_fiber + 1);
  do {
    // One digit per (cover, source fiber element); each picks a target.
    std::vector<std::size_t> radix;
    bool feasible = true;
    for (auto [lo, hi] : covers) {
      for (std::size_t s = 0; s < sizes[lo]; ++s) {
        radix.push_back(sizes[hi]);
        feasible = feasible && sizes[hi] > 0;
      }
    }
    if (!feasible) continue;
    const auto fibers = Presheaf::numbered_fibers(sizes);
    std::vector<std::size_t> digits(radix.size(), 0);
    do {
      std::vector<Presheaf::Restriction> restrictions;
      std::size_t d = 0;
      for (auto [lo, hi] : covers) {
        Presheaf::Restriction r{lo, hi, {}};
        for (std::size_t s = 0; s < sizes[lo]; ++s) r.map.push_back(static_cast<Elem>(digits[d++]));
        restrictions.push_back(std::move(r));
      }
      if (auto f = Presheaf::try_make(x, fibers, restrictions)) visit(*f);
    } while (advance(digits, radix));
  } while (advance(sizes, size_radix));
}

std::vector<Presheaf> all_presheaves(const PosetPtr& x, std::size_t max_fiber) {
  std::vector<Presheaf> out;
  for_each_presheaf(x, max_fiber, [&](const Presheaf& f) { out.push_back(f); });
  return out;
}

std::vector<PresheafMorphism> all_presheaf_morphisms(const PresheafPtr& f, const PresheafPtr& g) {
  std::vector<PresheafMorphism> out;
  if (!same_poset(f->base(), g->base())) return out;
  const std::size_t n = f->base()->size();
  std::vector<std::size_t> radix;
  for (Elem x = 0; x < n; ++x) {
    for (std::size_t s = 0; s < f->fiber_size(x); ++s) {
      if (g->fiber_size(x) == 0) return out;
      radix.push_back(g->fiber_size(x));
    }
  }
  std::vector<std::size_t> digits(radix.size(), 0);
  do {
    PresheafMorphism m{f, g, std::vector<std::vector<Elem>>(n)};
    std::size_t d = 0;
    for (Elem x = 0; x < n; ++x) {
      for (std::size_t s = 0; s < f->fiber_size(x); ++s) m.components[x].push_back(static_cast<Elem>(digits[d++]));
    }
    if (is_natural(m)) out.push_back(std::move(m));
  } while (advance(digits, radix));
  return out;
}

std::uint64_t fingerprint(const FinitePoset& p, std::uint64_t seed) {
  constexpr std::uint64_t kPrime = 1099511628211ULL;
  std::uint64_t h = seed;
  auto mix = [&](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= kPrime;
    }
  };
  mix(p.size());
  for (Elem x = 0; x < p.size(); ++x) mix(p.up(x).bits());
  return h;
}

}  // namespace esakia::oracle
