#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "esakia/heyting.hpp"
#include "esakia/poset.hpp"
#include "esakia/presheaf.hpp"

// Exhaustive generators. Every generator visits its instances in a fixed
// order, so two runs produce identical streams; the vector-returning forms
// collect the same stream.
namespace esakia::oracle {

/// Every partial order on {0..n-1} (labels "0".."n-1"), each exactly once.
/// Each unordered pair is below, above or incomparable; candidates are
/// filtered for transitivity.
void for_each_labeled_poset(std::size_t n, const std::function<void(const PosetPtr&)>& visit);
std::vector<PosetPtr> all_labeled_posets(std::size_t n);

/// Monotone maps p -> q in lexicographic order of assignments (element 0
/// most significant), built by backtracking.
void for_each_monotone_map(const PosetPtr& p, const PosetPtr& q,
                           const std::function<void(const PosetMap&)>& visit);
std::vector<PosetMap> all_monotone_maps(const PosetPtr& p, const PosetPtr& q);
std::vector<PosetMap> all_p_morphisms(const PosetPtr& p, const PosetPtr& q);
std::vector<PosetMap> all_strict_p_morphisms(const PosetPtr& p, const PosetPtr& q);

/// Heyting homomorphisms a -> b.
std::vector<HeytingHom> all_homomorphisms(const AlgebraPtr& a, const AlgebraPtr& b);
/// Bounded-lattice homomorphisms a -> b.
std::vector<HeytingHom> all_lattice_homomorphisms(const AlgebraPtr& a, const AlgebraPtr& b);

/// Every presheaf on x with fibers of size at most max_fiber (labels
/// "0".."k-1"): fiber sizes vary fastest at the last base element, then the
/// restriction maps along covers vary in lexicographic order. Only
/// functorial families are kept.
void for_each_presheaf(const PosetPtr& x, std::size_t max_fiber,
                       const std::function<void(const Presheaf&)>& visit);
std::vector<Presheaf> all_presheaves(const PosetPtr& x, std::size_t max_fiber);

/// Every natural transformation f -> g.
std::vector<PresheafMorphism> all_presheaf_morphisms(const PresheafPtr& f, const PresheafPtr& g);

/// FNV-1a fold over a poset's size and order relation.
std::uint64_t fingerprint(const FinitePoset& p, std::uint64_t seed = 1469598103934665603ULL);

}  // namespace esakia::oracle
