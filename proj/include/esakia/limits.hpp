#pragma once

#include <optional>

#include "esakia/duality.hpp"
#include "esakia/etale.hpp"
#include "esakia/heyting.hpp"
#include "esakia/poset.hpp"
#include "esakia/presheaf.hpp"

namespace esakia {

/// The identity over x, terminal among bundles over x.
Bundle terminal_bundle(const PosetPtr& x);

struct PosetPullback {
  PosetPtr poset;
  PosetMap left;   // to the domain of g
  PosetMap right;  // to the domain of h
};

/// {(a, b) | g(a) = h(b)} with the componentwise order, in lexicographic
/// order of pairs, labeled "(a,b)". Throws CodomainMismatch, or InvalidMap
/// for a leg that is not monotone.
PosetPullback poset_pullback(const PosetMap& g, const PosetMap& h);

struct BundleProduct {
  Bundle bundle;
  PosetMap left;
  PosetMap right;
};

/// Fibre product of two bundles over a common base. Throws BaseMismatch.
BundleProduct bundle_product(const Bundle& b1, const Bundle& b2);

/// Pullback in the category of bundles over a base of two maps over the base
/// alpha: b2 -> b1 and beta: b3 -> b1; projected to the base through b1.
/// Throws InvalidMap if either leg does not commute with the projections.
BundleProduct bundle_pullback(const PosetMap& alpha, const PosetMap& beta, const Bundle& b1,
                              const Bundle& b2, const Bundle& b3);

/// A pushout of distributive lattices with its two legs.
struct DlPushout {
  AlgebraPtr algebra;
  HeytingHom left;
  HeytingHom right;
  PosetPullback dual;  // the pullback of spectra the algebra is built from
};

/// Pushout of two bounded-lattice homomorphisms out of a common algebra,
/// computed on spectra: pull back the dual maps, take upsets, and send
/// a in A_i to the points whose i-th filter contains a.
/// Throws DomainMismatch or NotAHomomorphism.
DlPushout dl_pushout(const HeytingHom& c1, const HeytingHom& c2);

struct EtaleCoproduct {
  HAlgebra algebra;
  HeytingHom left;
  HeytingHom right;
};

/// Dual bundle of an H-algebra: the spectrum of its carrier over the
/// spectrum of its base. Throws NotStrict when c is not etale.
Bundle dual_bundle(const HAlgebra& c, const Spectrum& base, const Spectrum& carrier);

/// Coproduct of etale H-algebras, built by taking the pointwise product of
/// the fiber presheaves of their dual bundles, forming its Grothendieck
/// bundle and returning to algebras. Throws DomainMismatch or NotEtale.
EtaleCoproduct etale_coproduct(const HAlgebra& c1, const HAlgebra& c2);

/// The isomorphism pushout -> coproduct commuting with both pairs of legs,
/// if there is one.
std::optional<HeytingHom> coproduct_comparison(const DlPushout& pushout, const EtaleCoproduct& coproduct);

}  // namespace esakia
