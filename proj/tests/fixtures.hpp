#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "esakia/heyting.hpp"
#include "esakia/poset.hpp"
#include "esakia/presheaf.hpp"

namespace fixtures {

using namespace esakia;

inline PosetPtr pt() { return share(point_poset()); }
inline PosetPtr c2() { return share(chain_poset(2)); }
inline PosetPtr c3() { return share(chain_poset(3)); }
inline PosetPtr a2() { return share(antichain_poset(2)); }

/// r < s, r < t.
inline PosetPtr vee() {
  const std::vector<std::pair<std::string, std::string>> covers = {{"r", "s"}, {"r", "t"}};
  return share(FinitePoset::from_covers({"r", "s", "t"}, covers));
}

inline Subset subset(const FinitePoset& p, std::initializer_list<const char*> labels) {
  Subset s;
  for (const char* l : labels) s.insert(p.index_of(l));
  return s;
}

/// Element of Up(p) given by the labels of its members.
inline Elem upset_elem(const FiniteHeytingAlgebra& a, std::initializer_list<const char*> labels) {
  return *a.index_of_upset(subset(*a.upset_base(), labels));
}

inline PosetMap map_of(const PosetPtr& dom, const PosetPtr& cod,
                       std::initializer_list<std::pair<const char*, const char*>> sends) {
  std::vector<Elem> v(dom->size());
  for (auto [x, y] : sends) v[dom->index_of(x)] = cod->index_of(y);
  return PosetMap(dom, cod, std::move(v));
}

/// F(a) = {x1, x2}, F(b) = {y}, both restricting to y.
inline Presheaf lambda_presheaf() {
  return Presheaf::make(c2(), {{"x1", "x2"}, {"y"}}, {{0, 1, {0, 0}}});
}

/// F(x) = {*} everywhere with identity-like restrictions.
inline Presheaf singleton_presheaf(const PosetPtr& x) {
  std::vector<std::vector<std::string>> fibers(x->size(), {"*"});
  std::vector<Presheaf::Restriction> r;
  for (auto [lo, hi] : x->covers()) r.push_back({lo, hi, {0}});
  return Presheaf::make(x, fibers, r);
}

/// A 3-element chain 0 < m < 1 as an abstract lattice.
inline AlgebraPtr chain3_algebra() {
  const std::vector<std::pair<std::string, std::string>> covers = {{"0", "m"}, {"m", "1"}};
  return share(FiniteHeytingAlgebra::from_lattice_order(FinitePoset::from_covers({"0", "m", "1"}, covers)));
}

/// The Boolean algebra with 2^atoms elements, as Up of an antichain.
inline AlgebraPtr boolean_algebra(std::size_t atoms) { return upset_algebra_ptr(share(antichain_poset(atoms))); }

}  // namespace fixtures
