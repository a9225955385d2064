#include <doctest.h>

#include <algorithm>

#include "brute.hpp"
#include "esakia/oracle.hpp"
#include "fixtures.hpp"

using namespace esakia;
using namespace fixtures;

namespace {

std::vector<brute::Set> as_sets(const std::vector<Subset>& v) {
  std::vector<brute::Set> out;
  for (Subset s : v) out.emplace_back(s.begin(), s.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("from_covers closes the order") {
  const std::vector<std::pair<std::string, std::string>> one = {{"a", "b"}};
  auto p = FinitePoset::from_covers({"a", "b"}, one);
  CHECK(p.leq(0, 0));
  CHECK(p.leq(1, 1));
  CHECK(p.leq(0, 1));
  CHECK_FALSE(p.leq(1, 0));

  const std::vector<std::pair<std::string, std::string>> chain = {{"a", "b"}, {"b", "c"}};
  CHECK(FinitePoset::from_covers({"a", "b", "c"}, chain).leq(0, 2));
}

TEST_CASE("from_covers rejects bad input") {
  const std::vector<std::pair<std::string, std::string>> cycle = {{"a", "b"}, {"b", "a"}};
  CHECK_THROWS_AS(FinitePoset::from_covers({"a", "b"}, cycle), AntisymmetryViolation);
  const std::vector<std::pair<std::string, std::string>> none;
  CHECK_THROWS_AS(FinitePoset::from_covers({"a", "a"}, none), DuplicateElement);
  const std::vector<std::pair<std::string, std::string>> unknown = {{"a", "z"}};
  CHECK_THROWS_AS(FinitePoset::from_covers({"a"}, unknown), UnknownElement);
}

TEST_CASE("V-poset has exactly two strict pairs") {
  auto v = vee();
  int strict = 0;
  for (Elem x = 0; x < 3; ++x) {
    for (Elem y = 0; y < 3; ++y) strict += x != y && v->leq(x, y);
  }
  CHECK(strict == 2);
  CHECK(v->leq(v->index_of("r"), v->index_of("s")));
  CHECK(v->leq(v->index_of("r"), v->index_of("t")));
  CHECK_FALSE(v->leq(v->index_of("s"), v->index_of("t")));
  CHECK_FALSE(v->leq(v->index_of("t"), v->index_of("s")));
}

TEST_CASE("from_relation checks the order axioms") {
  CHECK_THROWS(FinitePoset::from_relation({Subset{}}));  // not reflexive
  CHECK_THROWS(FinitePoset::from_relation({Subset{0b11}, Subset{0b11}}));
  CHECK_THROWS(FinitePoset::from_relation({Subset{0b011}, Subset{0b110}, Subset{0b100}}));  // not transitive
  CHECK(FinitePoset::from_relation({Subset{0b111}, Subset{0b110}, Subset{0b100}}).leq(0, 2));
}

TEST_CASE("principal upsets and downsets") {
  auto c = c3();
  auto a = a2();
  CHECK(principal_upset(*c, c->index_of("b")) == subset(*c, {"b", "c"}));
  CHECK(principal_upset(*a, a->index_of("a")) == subset(*a, {"a"}));
  CHECK(principal_upset(*c, c->index_of("c")) == subset(*c, {"c"}));
  CHECK(principal_downset(*c, c->index_of("b")) == subset(*c, {"a", "b"}));
  CHECK(principal_downset(*a, a->index_of("b")) == subset(*a, {"b"}));
  CHECK(principal_downset(*c, c->index_of("a")) == subset(*c, {"a"}));
}

TEST_CASE("is_upset") {
  auto c = c2();
  CHECK(is_upset(*c, subset(*c, {"b"})));
  CHECK_FALSE(is_upset(*c, subset(*c, {"a"})));
  CHECK(is_upset(*c, Subset{}));
  CHECK(is_upset(*vee(), Subset{}));
  CHECK(is_downset(*c, subset(*c, {"a"})));
}

TEST_CASE("all_upsets matches brute force over subsets") {
  for (std::size_t n = 1; n <= 10; ++n) {
    CHECK(all_upsets(chain_poset(n)).size() == n + 1);
    CHECK(all_upsets(antichain_poset(n)).size() == (std::size_t{1} << n));
  }
  CHECK(all_upsets(*a2()).size() == 4);

  auto v = vee();
  const auto ups = all_upsets(*v);
  CHECK(ups.size() == 5);
  CHECK(as_sets(ups) == brute::upsets(brute::relation_of(*v)));
  std::vector<Subset> expected = {Subset{}, subset(*v, {"s"}), subset(*v, {"t"}), subset(*v, {"s", "t"}),
                                  subset(*v, {"r", "s", "t"})};
  std::sort(expected.begin(), expected.end());
  CHECK(ups == expected);

  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& p : oracle::all_labeled_posets(n)) {
      const auto got = all_upsets(*p);
      CHECK(std::is_sorted(got.begin(), got.end()));
      CHECK(as_sets(got) == brute::upsets(brute::relation_of(*p)));
    }
  }
}

TEST_CASE("upward closure and interior") {
  auto c = c3();
  CHECK(upward_closure(*c, subset(*c, {"b"})) == subset(*c, {"b", "c"}));
  CHECK(upset_interior(*c, subset(*c, {"a", "c"})) == subset(*c, {"c"}));
  auto v = vee();
  for (const auto& s : brute::all_subsets(3)) {
    Subset bits;
    for (Elem e : s) bits.insert(e);
    const Subset in = upset_interior(*v, bits);
    CHECK(is_upset(*v, in));
    CHECK(in.subset_of(bits));
    for (Subset u : all_upsets(*v)) {
      if (u.subset_of(bits)) CHECK(u.subset_of(in));
    }
  }
}

TEST_CASE("direct and inverse images") {
  auto c = c2();
  auto p = pt();
  const PosetMap id = identity_map(c);
  for (Subset u : all_upsets(*c)) {
    CHECK(direct_image(id, u) == u);
    CHECK(inverse_image(id, u) == u);
  }
  const PosetMap k = constant_map(c, p, 0);
  CHECK(direct_image(k, subset(*c, {"a"})) == subset(*p, {"pt"}));
  CHECK(inverse_image(k, subset(*p, {"pt"})) == subset(*c, {"a", "b"}));
  CHECK(direct_image(k, Subset{}).empty());
  CHECK(inverse_image(k, Subset{}).empty());
}

TEST_CASE("map predicates on the named examples") {
  auto c = c2();
  auto p = pt();
  auto a = a2();
  CHECK(is_monotone(identity_map(c)));
  CHECK_FALSE(is_monotone(map_of(c, c, {{"a", "b"}, {"b", "a"}})));
  CHECK(is_monotone(constant_map(c, p, 0)));

  CHECK(is_p_morphism(identity_map(c)));
  CHECK(is_p_morphism(constant_map(c, p, 0)));
  const PosetMap down = map_of(c, c, {{"a", "a"}, {"b", "a"}});
  CHECK_FALSE(is_p_morphism(down));
  const auto back = find_back_violation(down);
  REQUIRE(back);
  CHECK(c->label(back->source) == "a");
  CHECK(c->label(back->target) == "b");

  CHECK(is_strict_p_morphism(identity_map(c)));
  CHECK_FALSE(is_strict_p_morphism(constant_map(c, p, 0)));
  const auto twice = find_uniqueness_violation(constant_map(c, p, 0));
  REQUIRE(twice);
  CHECK(c->label(twice->source) == "a");
  CHECK(is_strict_p_morphism(constant_map(a, p, 0)));
}

TEST_CASE("map predicates agree with brute force on small posets") {
  std::vector<PosetPtr> small;
  for (std::size_t n = 0; n <= 3; ++n) {
    for (const auto& p : oracle::all_labeled_posets(n)) small.push_back(p);
  }
  for (const auto& p : small) {
    for (const auto& q : small) {
      if (p->size() + q->size() > 5) continue;
      const auto rp = brute::relation_of(*p);
      const auto rq = brute::relation_of(*q);
      for (const auto& v : brute::all_functions(p->size(), q->size())) {
        const PosetMap f(p, q, v);
        CHECK(is_monotone(f) == brute::monotone(rp, rq, v));
        CHECK(is_p_morphism(f) == brute::p_morphism(rp, rq, v));
        CHECK(is_strict_p_morphism(f) == brute::strict_p_morphism(rp, rq, v));
      }
    }
  }
}

TEST_CASE("PosetMap validates its assignment") {
  auto c = c2();
  CHECK_THROWS_AS(PosetMap(c, c, {0}), InvalidMap);
  CHECK_THROWS_AS(PosetMap(c, c, {0, 2}), InvalidMap);
}

TEST_CASE("order isomorphisms") {
  auto v = vee();
  const std::vector<std::pair<std::string, std::string>> covers = {{"x", "y"}, {"x", "z"}};
  auto w = share(FinitePoset::from_covers({"y", "z", "x"}, covers));
  const auto iso = find_order_isomorphism(v, w);
  REQUIRE(iso);
  CHECK(is_order_isomorphism(*iso));
  CHECK_FALSE(find_order_isomorphism(v, c3()));
  CHECK_FALSE(find_order_isomorphism(c2(), a2()));
}

TEST_CASE("format_subset uses labels") {
  auto c = c3();
  CHECK(format_subset(*c, subset(*c, {"a", "c"})) == "{a,c}");
  CHECK(format_subset(*c, Subset{}) == "{}");
}

TEST_CASE("size limit") {
  CHECK_NOTHROW(antichain_poset(64));
  CHECK_THROWS_AS(antichain_poset(65), TooLarge);
}
