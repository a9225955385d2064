#include <doctest.h>

#include "brute.hpp"
#include "esakia/etale.hpp"
#include "esakia/oracle.hpp"
#include "fixtures.hpp"

using namespace esakia;
using namespace fixtures;

TEST_CASE("axiom value at the named examples") {
  const auto h = upset_algebra_ptr(c3());
  const HAlgebra id = identity_halgebra(h);
  for (Elem a = 0; a < h->size(); ++a) CHECK(etale_axiom_value(id, a) == h->top());

  const auto c = c2();
  const HAlgebra k(dual_of_pmorphism(constant_map(c, pt(), 0)));
  const auto& up = *k.carrier();
  CHECK(etale_axiom_value(k, upset_elem(up, {"b"})) == upset_elem(up, {"b"}));
  for (Elem g = 0; g < k.base()->size(); ++g) CHECK(etale_axiom_value(k, k.constant(g)) == up.top());
}

TEST_CASE("etale membership") {
  CHECK(is_etale(identity_halgebra(upset_algebra_ptr(vee()))));
  const HAlgebra bad(dual_of_pmorphism(constant_map(c2(), pt(), 0)));
  CHECK_FALSE(is_etale(bad));
  const HAlgebra good(dual_of_pmorphism(constant_map(a2(), pt(), 0)));
  CHECK(is_etale(good));
  const auto ups = brute::upsets(brute::relation_of(*a2()));
  CHECK(ups.size() == 4);
  CHECK(brute::etale_by_sets(brute::relation_of(*a2()), brute::relation_of(*pt()), {0, 0}));
}

TEST_CASE("failure witnesses") {
  const HAlgebra bad(dual_of_pmorphism(constant_map(c2(), pt(), 0)));
  const auto w = failure_witness(bad);
  REQUIRE(w);
  CHECK(bad.carrier()->label(*w) == "{b}");
  CHECK_FALSE(failure_witness(identity_halgebra(upset_algebra_ptr(c2()))));

  const auto empty = share(FinitePoset::from_relation({}));
  const HAlgebra degenerate(dual_of_pmorphism(PosetMap(empty, empty, {})));
  CHECK(degenerate.carrier()->size() == 1);
  CHECK_FALSE(failure_witness(degenerate));
}

TEST_CASE("HAlgebra requires a homomorphism") {
  const auto b = boolean_algebra(2);
  CHECK_THROWS_AS(HAlgebra(HeytingHom(b, b, std::vector<Elem>(b->size(), b->top()))), NotAHomomorphism);
}

TEST_CASE("strictness agrees with the axiom evaluated on sets") {
  std::vector<PosetPtr> small;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& p : oracle::all_labeled_posets(n)) small.push_back(p);
  }
  for (const auto& xd : small) {
    for (const auto& x : small) {
      for (const auto& f : oracle::all_p_morphisms(xd, x)) {
        const bool by_sets = brute::etale_by_sets(brute::relation_of(*xd), brute::relation_of(*x), f.assignment);
        const HAlgebra c(dual_of_pmorphism(f));
        CHECK(etale_axiom_holds(c) == by_sets);
        CHECK(is_strict_p_morphism(f) == by_sets);
      }
    }
  }
}

TEST_CASE("strictness witnesses and join covers") {
  const auto a = a2();
  const PosetMap f = constant_map(a, pt(), 0);
  const HAlgebra c(dual_of_pmorphism(f));
  const auto& up = *c.carrier();
  for (Subset u : up.upsets()) {
    for (Elem y = 0; y < a->size(); ++y) {
      const Subset w = strictness_witness(f, u, y);
      CHECK((a->up(y) & u) == (a->up(y) & inverse_image(f, w)));
    }
  }
  std::vector<Elem> cover;
  for (Elem y = 0; y < a->size(); ++y) cover.push_back(*up.index_of_upset(a->up(y)));
  for (Elem e = 0; e < up.size(); ++e) CHECK(join_cover_condition(c, e, cover));

  // a cover that does not reach top fails
  const std::vector<Elem> partial = {cover[0]};
  CHECK_FALSE(join_cover_condition(c, up.bottom(), partial));
}
