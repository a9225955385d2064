#include "esakia/etale.hpp"

namespace esakia {

HAlgebra::HAlgebra(HeytingHom structure) : structure_(std::move(structure)) {
  if (!is_homomorphism(structure_)) throw NotAHomomorphism("structure map is not a Heyting homomorphism");
}

HAlgebra identity_halgebra(const AlgebraPtr& h) { return HAlgebra(identity_hom(h)); }

Elem etale_axiom_value(const HAlgebra& c, Elem a) {
  const auto& alg = *c.carrier();
  Elem acc = alg.bottom();
  for (Elem h = 0; h < c.base()->size(); ++h) {
    acc = alg.join(acc, biconditional(alg, a, c.constant(h)));
    if (acc == alg.top()) break;
  }
  return acc;
}

std::optional<Elem> failure_witness(const HAlgebra& c) {
  const auto& alg = *c.carrier();
  for (Elem a = 0; a < alg.size(); ++a) {
    if (etale_axiom_value(c, a) != alg.top()) return a;
  }
  return std::nullopt;
}

bool etale_axiom_holds(const HAlgebra& c) { return !failure_witness(c); }

bool is_etale(const HAlgebra& c) { return etale_axiom_holds(c); }

Subset strictness_witness(const PosetMap& f, Subset u, Elem y) {
  return direct_image(f, f.domain->up(y) & u);
}

bool join_cover_condition(const HAlgebra& c, Elem a, std::span<const Elem> cover) {
  const auto& alg = *c.carrier();
  Elem joined = alg.bottom();
  for (Elem y : cover) joined = alg.join(joined, y);
  if (joined != alg.top()) return false;
  for (Elem y : cover) {
    bool found = false;
    for (Elem h = 0; h < c.base()->size() && !found; ++h) {
      found = alg.meet(y, a) == alg.meet(y, c.constant(h));
    }
    if (!found) return false;
  }
  return true;
}

}  // namespace esakia
