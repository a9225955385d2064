#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "esakia/poset.hpp"

namespace esakia {

class FiniteHeytingAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteHeytingAlgebra>;

/// A finite Heyting algebra with eagerly materialized operation tables.
///
/// Elements are dense indices. Construction through `from_tables` performs no
/// validation so that broken tables can be fed to `verify_heyting`; the other
/// factories only produce genuine Heyting algebras. When the algebra is the
/// upset algebra of a poset, the index-to-upset correspondence is retained.
class FiniteHeytingAlgebra {
 public:
  /// Table cells are 16-bit, which bounds the carrier size.
  static constexpr std::size_t kMaxSize = 65535;

  struct Tables {
    std::vector<std::string> labels;
    std::vector<bool> leq;  // row-major n*n
    std::vector<Elem> meet, join, implies;  // row-major n*n
    Elem bottom = 0;
    Elem top = 0;
  };

  /// Unchecked; see verify_heyting. Throws TooLarge or InvalidMap on shape errors.
  static FiniteHeytingAlgebra from_tables(const Tables& t);

  /// Derives meet, join and implication from a lattice order.
  /// Throws NotALattice or NotDistributive.
  static FiniteHeytingAlgebra from_lattice_order(const FinitePoset& order);

  std::size_t size() const { return labels_.size(); }
  Elem bottom() const { return bottom_; }
  Elem top() const { return top_; }
  bool leq(Elem a, Elem b) const { return leq_[idx(a, b)]; }
  Elem meet(Elem a, Elem b) const { return meet_[idx(a, b)]; }
  Elem join(Elem a, Elem b) const { return join_[idx(a, b)]; }
  Elem implies(Elem a, Elem b) const { return implies_[idx(a, b)]; }
  const std::string& label(Elem a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const;

  /// Set when the algebra was built by upset_algebra.
  const PosetPtr& upset_base() const { return base_; }
  Subset upset(Elem a) const { return upsets_[a]; }
  const std::vector<Subset>& upsets() const { return upsets_; }
  std::optional<Elem> index_of_upset(Subset u) const;

  /// Identical tables.
  bool operator==(const FiniteHeytingAlgebra& other) const;

 private:
  friend FiniteHeytingAlgebra upset_algebra(const PosetPtr& x);
  friend FiniteHeytingAlgebra product_algebra(std::span<const AlgebraPtr> factors);
  friend FiniteHeytingAlgebra permute(const FiniteHeytingAlgebra& a, std::span<const Elem> perm);

  explicit FiniteHeytingAlgebra(std::vector<std::string> labels);
  void set_cell(Elem a, Elem b, bool le, Elem m, Elem j, Elem i) {
    const auto k = idx(a, b);
    leq_[k] = le;
    meet_[k] = static_cast<std::uint16_t>(m);
    join_[k] = static_cast<std::uint16_t>(j);
    implies_[k] = static_cast<std::uint16_t>(i);
  }

  std::size_t idx(Elem a, Elem b) const { return static_cast<std::size_t>(a) * labels_.size() + b; }

  std::vector<std::string> labels_;
  std::vector<bool> leq_;
  std::vector<std::uint16_t> meet_, join_, implies_;
  Elem bottom_ = 0;
  Elem top_ = 0;

  PosetPtr base_;
  std::vector<Subset> upsets_;
  // Open-addressing table from bit pattern to index + 1 (0 marks a free slot).
  std::vector<std::uint64_t> lookup_keys_;
  std::vector<std::uint16_t> lookup_slots_;
  unsigned lookup_shift_ = 64;

  std::size_t lookup_home(std::uint64_t bits) const {
    return static_cast<std::size_t>((bits * 0x9E3779B97F4A7C15ULL) >> lookup_shift_);
  }
  void build_lookup();
};

inline AlgebraPtr share(FiniteHeytingAlgebra a) {
  return std::make_shared<const FiniteHeytingAlgebra>(std::move(a));
}

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) { return a == b || *a == *b; }

/// Up(X): upsets under intersection and union, with U => V the largest upset
/// inside (X \ U) u V. Labels render upsets, e.g. "{a,b}".
FiniteHeytingAlgebra upset_algebra(const PosetPtr& x);
inline AlgebraPtr upset_algebra_ptr(const PosetPtr& x) { return share(upset_algebra(x)); }

/// Full axiom check: partial order, meet/join as glb/lub, bounds,
/// distributivity and residuation.
bool verify_heyting(const FiniteHeytingAlgebra& a);

/// (a => b) and (b => a).
Elem biconditional(const FiniteHeytingAlgebra& a, Elem x, Elem y);

/// Elements a != bottom that are not the join of two strictly smaller ones.
std::vector<Elem> join_irreducibles(const FiniteHeytingAlgebra& a);

/// Product algebra with componentwise operations; index is mixed radix with
/// the first factor most significant. Throws TooLarge.
FiniteHeytingAlgebra product_algebra(std::span<const AlgebraPtr> factors);

/// Map between algebras. Serves for Heyting and bounded-lattice homomorphisms.
struct HeytingHom {
  AlgebraPtr domain;
  AlgebraPtr codomain;
  std::vector<Elem> assignment;

  /// Checks totality and range. Throws InvalidMap.
  HeytingHom(AlgebraPtr dom, AlgebraPtr cod, std::vector<Elem> assign);

  Elem operator()(Elem a) const { return assignment[a]; }
};

HeytingHom identity_hom(const AlgebraPtr& a);
/// g after f. Throws DomainMismatch.
HeytingHom compose(const HeytingHom& g, const HeytingHom& f);

/// Preserves meet, join, implication, bottom and top.
bool is_homomorphism(const HeytingHom& h);
/// Preserves meet, join, bottom and top.
bool is_lattice_homomorphism(const HeytingHom& h);
bool is_injective(const HeytingHom& h);
bool is_isomorphism(const HeytingHom& h);
/// Same domain, codomain and assignment.
bool same_hom(const HeytingHom& f, const HeytingHom& g);

/// Isomorphism search: matches the posets of join-irreducibles and extends
/// by joins. Returns a verified Heyting isomorphism, if any.
std::optional<HeytingHom> find_isomorphism(const AlgebraPtr& a, const AlgebraPtr& b);

/// The unique homomorphism a -> b sending each seed's first component to its
/// second, provided the seeds generate `a` as a lattice and the closure is a
/// Heyting isomorphism. Otherwise nullopt.
std::optional<HeytingHom> isomorphism_from_generators(const AlgebraPtr& a, const AlgebraPtr& b,
                                                      std::span<const std::pair<Elem, Elem>> seeds);

/// Relabels the carrier by a permutation (new index = perm[old index]).
FiniteHeytingAlgebra permute(const FiniteHeytingAlgebra& a, std::span<const Elem> perm);

}  // namespace esakia
