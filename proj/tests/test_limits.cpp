#include <doctest.h>

#include "esakia/limits.hpp"
#include "esakia/oracle.hpp"
#include "fixtures.hpp"

using namespace esakia;
using namespace fixtures;

namespace {

HAlgebra dual_algebra(const PosetMap& f, const AlgebraPtr& base) {
  return HAlgebra(dual_of_pmorphism(f, base, upset_algebra_ptr(f.domain)));
}

}  // namespace

TEST_CASE("terminal bundle") {
  const auto p = pt();
  const Bundle t = terminal_bundle(p);
  CHECK(t.projection() == identity_map(p));
  const auto empty = share(FinitePoset::from_relation({}));
  CHECK(terminal_bundle(empty).total()->empty());

  // the only map over the base from a bundle f to the terminal bundle is f
  const Bundle lam = grothendieck(lambda_presheaf());
  std::size_t over = 0;
  for (const auto& g : oracle::all_monotone_maps(lam.total(), lam.base())) over += g == lam.projection();
  CHECK(over == 1);
}

TEST_CASE("poset pullbacks") {
  const auto v = vee();
  const PosetPullback diag = poset_pullback(identity_map(v), identity_map(v));
  CHECK(find_order_isomorphism(diag.poset, v).has_value());

  const auto a = a2();
  const auto p = pt();
  const PosetPullback four = poset_pullback(constant_map(a, p, 0), constant_map(a, p, 0));
  CHECK(four.poset->size() == 4);
  CHECK(find_order_isomorphism(four.poset, share(antichain_poset(4))).has_value());

  const auto empty = share(FinitePoset::from_relation({}));
  CHECK(poset_pullback(PosetMap(empty, p, {}), constant_map(a, p, 0)).poset->empty());

  CHECK_THROWS_AS(poset_pullback(identity_map(a), identity_map(v)), CodomainMismatch);
  const auto c = c2();
  CHECK_THROWS_AS(poset_pullback(map_of(c, c, {{"a", "b"}, {"b", "a"}}), identity_map(c)), InvalidMap);
}

TEST_CASE("pullback universal property by enumeration") {
  std::vector<PosetPtr> small;
  for (std::size_t n = 0; n <= 2; ++n) {
    for (const auto& p : oracle::all_labeled_posets(n)) small.push_back(p);
  }
  const auto x = c2();
  std::vector<PosetMap> legs;
  for (const auto& d : small) {
    for (const auto& f : oracle::all_monotone_maps(d, x)) legs.push_back(f);
  }
  for (const auto& g : legs) {
    for (const auto& h : legs) {
      const PosetPullback pb = poset_pullback(g, h);
      CHECK(compose(g, pb.left) == compose(h, pb.right));
      for (const auto& q : small) {
        for (const auto& u : oracle::all_monotone_maps(q, g.domain)) {
          for (const auto& w : oracle::all_monotone_maps(q, h.domain)) {
            if (compose(g, u) != compose(h, w)) continue;
            std::size_t mediating = 0;
            for (const auto& m : oracle::all_monotone_maps(q, pb.poset)) {
              mediating += compose(pb.left, m) == u && compose(pb.right, m) == w;
            }
            CHECK(mediating == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("bundle products") {
  const auto p = pt();
  const Bundle two(constant_map(a2(), p, 0));
  const BundleProduct sq = bundle_product(two, two);
  CHECK(sq.bundle.fiber(0).size() == 4);

  const Bundle lam = grothendieck(lambda_presheaf());
  const BundleProduct lam2 = bundle_product(lam, lam);
  CHECK(lam2.bundle.fiber(0).size() == 4);
  CHECK(lam2.bundle.fiber(1).size() == 1);

  const BundleProduct with_terminal = bundle_product(lam, terminal_bundle(lam.base()));
  const auto iso = find_order_isomorphism(with_terminal.bundle.total(), lam.total());
  REQUIRE(iso);
  CHECK(compose(lam.projection(), *iso) == with_terminal.bundle.projection());

  CHECK_THROWS_AS(bundle_product(lam, two), BaseMismatch);
}

TEST_CASE("bundle pullbacks") {
  const Bundle lam = grothendieck(lambda_presheaf());
  const Bundle base = terminal_bundle(lam.base());
  // pulling back two copies of the projection over the terminal bundle is the product
  const BundleProduct pb = bundle_pullback(lam.projection(), lam.projection(), base, lam, lam);
  CHECK(pb.bundle.total()->size() == bundle_product(lam, lam).bundle.total()->size());
  CHECK_THROWS_AS(bundle_pullback(identity_map(lam.total()), lam.projection(), base, lam, lam), InvalidMap);
}

TEST_CASE("distributive lattice pushouts") {
  const auto h = boolean_algebra(2);
  const DlPushout same = dl_pushout(identity_hom(h), identity_hom(h));
  CHECK(same.algebra->size() == h->size());
  CHECK(is_isomorphism(same.left));

  const auto p = pt();
  const auto base = upset_algebra_ptr(p);
  const HAlgebra ext = dual_algebra(constant_map(a2(), p, 0), base);
  const DlPushout sixteen = dl_pushout(ext.structure(), ext.structure());
  CHECK(sixteen.algebra->size() == 16);
  CHECK(same_hom(compose(sixteen.left, ext.structure()), compose(sixteen.right, ext.structure())));

  const DlPushout with_id = dl_pushout(identity_hom(base), ext.structure());
  CHECK(with_id.algebra->size() == ext.carrier()->size());
  CHECK(is_isomorphism(with_id.right));

  CHECK_THROWS_AS(dl_pushout(identity_hom(h), ext.structure()), DomainMismatch);
}

TEST_CASE("pushout universal property by enumeration") {
  const auto p = pt();
  const auto c = c2();
  const auto h = upset_algebra_ptr(c);
  std::vector<HeytingHom> legs;
  for (const auto& x : {share(chain_poset(2)), share(antichain_poset(2)), share(chain_poset(3))}) {
    for (const auto& f : oracle::all_p_morphisms(x, c)) legs.push_back(dual_of_pmorphism(f, h, upset_algebra_ptr(x)));
  }
  std::vector<AlgebraPtr> targets = {boolean_algebra(1), boolean_algebra(2), chain3_algebra(),
                                     upset_algebra_ptr(c), upset_algebra_ptr(vee())};
  for (const auto& c1 : legs) {
    for (const auto& c2_ : legs) {
      const DlPushout po = dl_pushout(c1, c2_);
      for (const auto& d : targets) {
        for (const auto& k1 : oracle::all_lattice_homomorphisms(c1.codomain, d)) {
          for (const auto& k2 : oracle::all_lattice_homomorphisms(c2_.codomain, d)) {
            if (!same_hom(compose(k1, c1), compose(k2, c2_))) continue;
            std::size_t mediating = 0;
            for (const auto& m : oracle::all_lattice_homomorphisms(po.algebra, d)) {
              mediating += same_hom(compose(m, po.left), k1) && same_hom(compose(m, po.right), k2);
            }
            CHECK(mediating == 1);
          }
        }
      }
    }
  }
}

TEST_CASE("etale coproducts") {
  const auto p = pt();
  const auto base = upset_algebra_ptr(p);
  const HAlgebra ext = dual_algebra(constant_map(a2(), p, 0), base);
  const EtaleCoproduct co = etale_coproduct(ext, ext);
  CHECK(co.algebra.carrier()->size() == 16);
  CHECK(is_etale(co.algebra));
  const auto cmp = coproduct_comparison(dl_pushout(ext.structure(), ext.structure()), co);
  REQUIRE(cmp);
  CHECK(is_isomorphism(*cmp));

  const EtaleCoproduct with_id = etale_coproduct(ext, identity_halgebra(base));
  CHECK(find_isomorphism(with_id.algebra.carrier(), ext.carrier()).has_value());
  CHECK(is_isomorphism(with_id.left));

  const HAlgebra bad = dual_algebra(constant_map(c2(), p, 0), base);
  CHECK_THROWS_AS(etale_coproduct(ext, bad), NotEtale);
}

TEST_CASE("coproduct agrees with pushout over a chain base") {
  const auto c = c2();
  const auto h = upset_algebra_ptr(c);
  std::vector<HAlgebra> algebras;
  for (const auto& f : oracle::all_presheaves(c, 2)) {
    const Bundle b = grothendieck(f);
    algebras.push_back(dual_algebra(b.projection(), h));
  }
  for (const auto& a : algebras) {
    for (const auto& b : algebras) {
      const auto cmp = coproduct_comparison(dl_pushout(a.structure(), b.structure()), etale_coproduct(a, b));
      CHECK(cmp.has_value());
    }
  }
}
