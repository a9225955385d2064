#pragma once

#include <vector>

#include "esakia/heyting.hpp"
#include "esakia/poset.hpp"

namespace esakia {

/// A prime filter of a finite lattice. Finite filters are principal, so the
/// filter is stored as its least element: it is the set of all a >= generator.
struct PrimeFilter {
  Elem generator;

  bool contains(const FiniteHeytingAlgebra& a, Elem x) const { return a.leq(generator, x); }
};

/// The prime filters of an algebra together with the poset they form under
/// inclusion. Filters are listed by ascending generator index; the poset
/// labels them "^" + generator label.
struct Spectrum {
  AlgebraPtr algebra;
  std::vector<PrimeFilter> filters;
  PosetPtr poset;
  std::vector<Elem> point_of;  // generator element -> point, or kNoPoint

  static constexpr Elem kNoPoint = ~Elem{0};

  /// Point of the filter {a | x <= a} if that filter is prime.
  Elem point_of_generator(Elem x) const { return point_of[x]; }
};

/// Candidate filters {a | a >= x}, x != bottom, kept when they satisfy
/// "b or c in F implies b in F or c in F". Degenerate algebras have none.
std::vector<PrimeFilter> prime_filters(const FiniteHeytingAlgebra& a);

Spectrum spectrum(const AlgebraPtr& a);

/// Prime filters ordered by inclusion.
PosetPtr dual_poset(const AlgebraPtr& a);

/// Preimage map Up(codomain) -> Up(domain). Throws NotAPMorphism.
HeytingHom dual_of_pmorphism(const PosetMap& f);
/// Same with the upset algebras supplied; they must be upset_algebra of the
/// codomain and the domain respectively.
HeytingHom dual_of_pmorphism(const PosetMap& f, const AlgebraPtr& up_codomain,
                             const AlgebraPtr& up_domain);

/// F |-> h^{-1}(F), from the spectrum of the codomain to the spectrum of the
/// domain. Throws NotAHomomorphism.
PosetMap dual_of_homomorphism(const HeytingHom& h);
PosetMap dual_of_homomorphism(const HeytingHom& h, const Spectrum& codomain, const Spectrum& domain);

/// Same construction for bounded-lattice homomorphisms; the result is only
/// guaranteed monotone.
PosetMap dual_of_lattice_homomorphism(const HeytingHom& h, const Spectrum& codomain,
                                      const Spectrum& domain);

/// x |-> {U in Up(X) | x in U}, as a map X -> dual_poset(Up(X)).
PosetMap unit_iso(const PosetPtr& x);
PosetMap unit_iso(const PosetPtr& x, const AlgebraPtr& up, const Spectrum& spec);

/// a |-> {F prime | a in F}, as a map A -> Up(dual_poset(A)).
/// Throws NotDistributive when the result is not an isomorphism.
HeytingHom counit_iso(const AlgebraPtr& a);
HeytingHom counit_iso(const Spectrum& spec, const AlgebraPtr& up_of_spectrum);

}  // namespace esakia
