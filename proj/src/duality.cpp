#include "esakia/duality.hpp"

#include <stdexcept>

namespace esakia {

std::vector<PrimeFilter> prime_filters(const FiniteHeytingAlgebra& a) {
  std::vector<PrimeFilter> out;
  const Elem n = static_cast<Elem>(a.size());
  std::vector<Elem> outside;
  for (Elem g = 0; g < n; ++g) {
    if (g == a.bottom()) continue;
    outside.clear();
    for (Elem x = 0; x < n; ++x) {
      if (!a.leq(g, x)) outside.push_back(x);
    }
    bool prime = true;
    for (std::size_t i = 0; i < outside.size() && prime; ++i) {
      for (std::size_t j = i; j < outside.size() && prime; ++j) {
        prime = !a.leq(g, a.join(outside[i], outside[j]));
      }
    }
    if (prime) out.push_back(PrimeFilter{g});
  }
  return out;
}

Spectrum spectrum(const AlgebraPtr& a) {
  Spectrum s;
  s.algebra = a;
  s.filters = prime_filters(*a);
  if (s.filters.size() > kMaxPosetSize) throw TooLarge("spectrum has more than 64 points");
  s.point_of.assign(a->size(), Spectrum::kNoPoint);
  std::vector<std::string> labels;
  std::vector<Subset> up(s.filters.size());
  for (Elem i = 0; i < s.filters.size(); ++i) {
    s.point_of[s.filters[i].generator] = i;
    labels.push_back("^" + a->label(s.filters[i].generator));
    for (Elem j = 0; j < s.filters.size(); ++j) {
      // inclusion of principal filters reverses the generators
      if (a->leq(s.filters[j].generator, s.filters[i].generator)) up[i].insert(j);
    }
  }
  s.poset = share(FinitePoset::from_relation(std::move(labels), std::move(up)));
  return s;
}

PosetPtr dual_poset(const AlgebraPtr& a) { return spectrum(a).poset; }

HeytingHom dual_of_pmorphism(const PosetMap& f) {
  return dual_of_pmorphism(f, upset_algebra_ptr(f.codomain), upset_algebra_ptr(f.domain));
}

HeytingHom dual_of_pmorphism(const PosetMap& f, const AlgebraPtr& up_codomain,
                             const AlgebraPtr& up_domain) {
  if (!is_p_morphism(f)) throw NotAPMorphism("map is not a p-morphism");
  if (!up_codomain->upset_base() || !same_poset(up_codomain->upset_base(), f.codomain) ||
      !up_domain->upset_base() || !same_poset(up_domain->upset_base(), f.domain)) {
    throw DomainMismatch("supplied upset algebras do not match the map");
  }
  std::vector<Elem> v(up_codomain->size());
  for (Elem i = 0; i < v.size(); ++i) {
    v[i] = *up_domain->index_of_upset(inverse_image(f, up_codomain->upset(i)));
  }
  return HeytingHom(up_codomain, up_domain, std::move(v));
}

namespace {

PosetMap pull_back_filters(const HeytingHom& h, const Spectrum& codomain, const Spectrum& domain) {
  const auto& a = *h.domain;
  const auto& b = *h.codomain;
  std::vector<Elem> v(codomain.filters.size());
  for (Elem p = 0; p < v.size(); ++p) {
    const Elem g = codomain.filters[p].generator;
    Elem least = a.top();
    for (Elem x = 0; x < a.size(); ++x) {
      if (b.leq(g, h(x))) least = a.meet(least, x);
    }
    if (!b.leq(g, h(least)) || domain.point_of_generator(least) == Spectrum::kNoPoint) {
      throw std::logic_error("preimage of a prime filter is not a prime filter");
    }
    v[p] = domain.point_of_generator(least);
  }
  return PosetMap(codomain.poset, domain.poset, std::move(v));
}

}  // namespace

PosetMap dual_of_homomorphism(const HeytingHom& h) {
  return dual_of_homomorphism(h, spectrum(h.codomain), spectrum(h.domain));
}

PosetMap dual_of_homomorphism(const HeytingHom& h, const Spectrum& codomain, const Spectrum& domain) {
  if (!is_homomorphism(h)) throw NotAHomomorphism("map is not a Heyting homomorphism");
  return pull_back_filters(h, codomain, domain);
}

PosetMap dual_of_lattice_homomorphism(const HeytingHom& h, const Spectrum& codomain,
                                      const Spectrum& domain) {
  if (!is_lattice_homomorphism(h)) throw NotAHomomorphism("map is not a lattice homomorphism");
  return pull_back_filters(h, codomain, domain);
}

PosetMap unit_iso(const PosetPtr& x) {
  auto up = upset_algebra_ptr(x);
  return unit_iso(x, up, spectrum(up));
}

PosetMap unit_iso(const PosetPtr& x, const AlgebraPtr& up, const Spectrum& spec) {
  std::vector<Elem> v(x->size());
  for (Elem e = 0; e < v.size(); ++e) {
    const Elem u = *up->index_of_upset(x->up(e));
    v[e] = spec.point_of_generator(u);
    if (v[e] == Spectrum::kNoPoint) throw std::logic_error("principal upset is not join-prime");
  }
  return PosetMap(x, spec.poset, std::move(v));
}

HeytingHom counit_iso(const AlgebraPtr& a) {
  auto spec = spectrum(a);
  return counit_iso(spec, upset_algebra_ptr(spec.poset));
}

HeytingHom counit_iso(const Spectrum& spec, const AlgebraPtr& up_of_spectrum) {
  const auto& a = *spec.algebra;
  std::vector<Elem> v(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    Subset holding;
    for (Elem p = 0; p < spec.filters.size(); ++p) {
      if (spec.filters[p].contains(a, x)) holding.insert(p);
    }
    auto idx = up_of_spectrum->index_of_upset(holding);
    if (!idx) throw NotDistributive("filters containing an element do not form an upset");
    v[x] = *idx;
  }
  HeytingHom h(spec.algebra, up_of_spectrum, std::move(v));
  if (!is_isomorphism(h)) throw NotDistributive("algebra is not isomorphic to the upsets of its spectrum");
  return h;
}

}  // namespace esakia
