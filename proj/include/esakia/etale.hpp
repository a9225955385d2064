#pragma once

#include <optional>
#include <span>

#include "esakia/duality.hpp"
#include "esakia/heyting.hpp"

namespace esakia {

/// A Heyting homomorphism c: H -> A seen as an algebra in the signature
/// expanded by one constant c_h = c(h) for every h in H.
class HAlgebra {
 public:
  /// Throws NotAHomomorphism.
  explicit HAlgebra(HeytingHom structure);

  const AlgebraPtr& base() const { return structure_.domain; }
  const AlgebraPtr& carrier() const { return structure_.codomain; }
  const HeytingHom& structure() const { return structure_; }
  Elem constant(Elem h) const { return structure_(h); }

 private:
  HeytingHom structure_;
};

/// The identity homomorphism on H as an H-algebra.
HAlgebra identity_halgebra(const AlgebraPtr& h);

/// The join over h in H of (a <=> c_h), computed in the carrier.
Elem etale_axiom_value(const HAlgebra& c, Elem a);

/// The axiom holds at every element of the carrier.
bool etale_axiom_holds(const HAlgebra& c);

/// Some a where the axiom evaluates below top.
std::optional<Elem> failure_witness(const HAlgebra& c);

/// Membership in the variety generated by the identity H-algebra. For finite
/// H and A this is decided by the axiom above.
bool is_etale(const HAlgebra& c);

/// For y in the domain and an upset U of the domain of a p-morphism f, the
/// upset W = f_!(up(y) n U) of the codomain. When f is strict,
/// up(y) n U = up(y) n f^*(W).
Subset strictness_witness(const PosetMap& f, Subset u, Elem y);

/// Sufficient condition for the axiom at `a`: the elements of `cover` join to
/// top and each y in it has some h with y and a = y and c_h.
bool join_cover_condition(const HAlgebra& c, Elem a, std::span<const Elem> cover);

}  // namespace esakia
