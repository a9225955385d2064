#include "esakia/limits.hpp"

namespace esakia {

Bundle terminal_bundle(const PosetPtr& x) { return Bundle(identity_map(x)); }

PosetPullback poset_pullback(const PosetMap& g, const PosetMap& h) {
  if (!same_poset(g.codomain, h.codomain)) throw CodomainMismatch("pullback legs have different codomains");
  if (!is_monotone(g) || !is_monotone(h)) throw InvalidMap("pullback legs must be monotone");
  const FinitePoset& a = *g.domain;
  const FinitePoset& b = *h.domain;
  std::vector<std::pair<Elem, Elem>> points;
  for (Elem x = 0; x < a.size(); ++x) {
    for (Elem y = 0; y < b.size(); ++y) {
      if (g(x) == h(y)) points.emplace_back(x, y);
    }
  }
  if (points.size() > kMaxPosetSize) throw TooLarge("pullback exceeds 64 elements");
  std::vector<std::string> labels;
  std::vector<Subset> up(points.size());
  std::vector<Elem> left, right;
  for (Elem i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
    left.push_back(x);
    right.push_back(y);
    for (Elem j = 0; j < points.size(); ++j) {
      if (a.leq(x, points[j].first) && b.leq(y, points[j].second)) up[i].insert(j);
    }
  }
  auto p = share(FinitePoset::from_relation(std::move(labels), std::move(up)));
  return PosetPullback{p, PosetMap(p, g.domain, std::move(left)), PosetMap(p, h.domain, std::move(right))};
}

BundleProduct bundle_product(const Bundle& b1, const Bundle& b2) {
  if (!same_poset(b1.base(), b2.base())) throw BaseMismatch("bundles live over different bases");
  auto pb = poset_pullback(b1.projection(), b2.projection());
  PosetMap projection(pb.poset, b1.base(), compose(b1.projection(), pb.left).assignment);
  return BundleProduct{Bundle(std::move(projection)), std::move(pb.left), std::move(pb.right)};
}

BundleProduct bundle_pullback(const PosetMap& alpha, const PosetMap& beta, const Bundle& b1,
                              const Bundle& b2, const Bundle& b3) {
  if (!same_poset(b1.base(), b2.base()) || !same_poset(b1.base(), b3.base())) {
    throw BaseMismatch("bundles live over different bases");
  }
  if (!same_poset(alpha.domain, b2.total()) || !same_poset(beta.domain, b3.total()) ||
      !same_poset(alpha.codomain, b1.total()) || !same_poset(beta.codomain, b1.total())) {
    throw InvalidMap("pullback legs do not run between the given bundles");
  }
  if (compose(b1.projection(), alpha) != b2.projection() ||
      compose(b1.projection(), beta) != b3.projection()) {
    throw InvalidMap("pullback legs are not maps over the base");
  }
  auto pb = poset_pullback(alpha, beta);
  PosetMap projection(pb.poset, b1.base(), compose(b2.projection(), pb.left).assignment);
  return BundleProduct{Bundle(std::move(projection)), std::move(pb.left), std::move(pb.right)};
}

namespace {

// a |-> {q | a in the filter at leg(q)}, as an element of Up(domain of leg).
HeytingHom leg_into_upsets(const Spectrum& spec, const PosetMap& leg, const AlgebraPtr& target) {
  const auto& a = *spec.algebra;
  std::vector<Elem> v(a.size());
  for (Elem x = 0; x < a.size(); ++x) {
    Subset u;
    for (Elem q = 0; q < leg.domain->size(); ++q) {
      if (spec.filters[leg(q)].contains(a, x)) u.insert(q);
    }
    v[x] = *target->index_of_upset(u);
  }
  return HeytingHom(spec.algebra, target, std::move(v));
}

}  // namespace

DlPushout dl_pushout(const HeytingHom& c1, const HeytingHom& c2) {
  if (!same_algebra(c1.domain, c2.domain)) throw DomainMismatch("pushout legs have different domains");
  const Spectrum base = spectrum(c1.domain);
  const Spectrum s1 = spectrum(c1.codomain);
  const Spectrum s2 = spectrum(c2.codomain);
  const PosetMap d1 = dual_of_lattice_homomorphism(c1, s1, base);
  const PosetMap d2 = dual_of_lattice_homomorphism(c2, s2, base);
  PosetPullback pb = poset_pullback(d1, d2);
  auto algebra = upset_algebra_ptr(pb.poset);
  HeytingHom left = leg_into_upsets(s1, pb.left, algebra);
  HeytingHom right = leg_into_upsets(s2, pb.right, algebra);
  return DlPushout{algebra, std::move(left), std::move(right), std::move(pb)};
}

Bundle dual_bundle(const HAlgebra& c, const Spectrum& base, const Spectrum& carrier) {
  return Bundle(dual_of_homomorphism(c.structure(), carrier, base));
}

EtaleCoproduct etale_coproduct(const HAlgebra& c1, const HAlgebra& c2) {
  if (!same_algebra(c1.base(), c2.base())) throw DomainMismatch("H-algebras over different bases");
  if (!is_etale(c1) || !is_etale(c2)) throw NotEtale("coproduct requires etale H-algebras");

  const Spectrum base = spectrum(c1.base());
  const Spectrum s1 = spectrum(c1.carrier());
  const Spectrum s2 = spectrum(c2.carrier());
  const Bundle b1 = dual_bundle(c1, base, s1);
  const Bundle b2 = dual_bundle(c2, base, s2);
  const Presheaf f1 = fiber_presheaf(b1);
  const Presheaf f2 = fiber_presheaf(b2);
  const Presheaf product = presheaf_product(f1, f2);
  const Bundle total = grothendieck(product);
  auto carrier = upset_algebra_ptr(total.total());

  // Point e = (x, (s, t)) of the total sits over the s-th point of b1's fiber
  // at x and the t-th point of b2's fiber at x.
  const std::size_t n = base.poset->size();
  std::vector<Elem> first(total.total()->size()), second(total.total()->size());
  for (Elem x = 0; x < n; ++x) {
    const auto fiber1 = b1.fiber(x);
    const auto fiber2 = b2.fiber(x);
    for (Elem s = 0; s < fiber1.size(); ++s) {
      for (Elem t = 0; t < fiber2.size(); ++t) {
        const auto e = product.offset(x) + s * fiber2.size() + t;
        first[e] = fiber1[s];
        second[e] = fiber2[t];
      }
    }
  }

  auto to_upsets = [&](const Spectrum& spec, const std::vector<Elem>& point_of) {
    const auto& a = *spec.algebra;
    std::vector<Elem> v(a.size());
    for (Elem x = 0; x < a.size(); ++x) {
      Subset u;
      for (Elem e = 0; e < point_of.size(); ++e) {
        if (spec.filters[point_of[e]].contains(a, x)) u.insert(e);
      }
      v[x] = *carrier->index_of_upset(u);
    }
    return HeytingHom(spec.algebra, carrier, std::move(v));
  };

  HeytingHom structure = to_upsets(base, total.projection().assignment);
  HeytingHom left = to_upsets(s1, first);
  HeytingHom right = to_upsets(s2, second);
  return EtaleCoproduct{HAlgebra(std::move(structure)), std::move(left), std::move(right)};
}

std::optional<HeytingHom> coproduct_comparison(const DlPushout& pushout, const EtaleCoproduct& coproduct) {
  if (!same_algebra(pushout.left.domain, coproduct.left.domain) ||
      !same_algebra(pushout.right.domain, coproduct.right.domain)) {
    return std::nullopt;
  }
  std::vector<std::pair<Elem, Elem>> seeds;
  for (Elem a = 0; a < pushout.left.domain->size(); ++a) seeds.emplace_back(pushout.left(a), coproduct.left(a));
  for (Elem b = 0; b < pushout.right.domain->size(); ++b) {
    seeds.emplace_back(pushout.right(b), coproduct.right(b));
  }
  return isomorphism_from_generators(pushout.algebra, coproduct.algebra.carrier(), seeds);
}

}  // namespace esakia
