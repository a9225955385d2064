#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "esakia/heyting.hpp"
#include "esakia/poset.hpp"

namespace esakia {

/// A functor from a finite poset to finite sets. Fiber elements are local
/// indices 0..|F(x)|-1; the restriction for every comparable pair x <= y is
/// materialized.
class Presheaf {
 public:
  /// A restriction map F(from) -> F(to) for from <= to, in fiber indices.
  struct Restriction {
    Elem from;
    Elem to;
    std::vector<Elem> map;
  };

  /// Restrictions must be given along every cover x < y with F(x) nonempty;
  /// the remaining comparable pairs are composed along covers, and any pair
  /// given explicitly must agree with the composite. Throws InvalidPresheaf.
  static Presheaf make(PosetPtr base, std::vector<std::vector<std::string>> fibers,
                       std::span<const Restriction> restrictions);
  static Presheaf make(PosetPtr base, std::vector<std::vector<std::string>> fibers,
                       std::initializer_list<Restriction> restrictions) {
    return make(std::move(base), std::move(fibers), std::span<const Restriction>(restrictions.begin(), restrictions.size()));
  }

  /// Like make, but returns nullopt instead of throwing.
  static std::optional<Presheaf> try_make(PosetPtr base, std::vector<std::vector<std::string>> fibers,
                                          std::span<const Restriction> restrictions);

  /// Fibers labeled "0".."k-1".
  static std::vector<std::vector<std::string>> numbered_fibers(std::span<const std::size_t> sizes);

  const PosetPtr& base() const { return base_; }
  std::size_t fiber_size(Elem x) const { return fibers_[x].size(); }
  const std::vector<std::string>& fiber_labels(Elem x) const { return fibers_[x]; }
  const std::string& fiber_label(Elem x, Elem xi) const { return fibers_[x][xi]; }

  /// F_{xy}; requires x <= y.
  const std::vector<Elem>& restriction(Elem x, Elem y) const { return maps_[x * base_->size() + y]; }
  Elem restrict(Elem x, Elem y, Elem xi) const { return restriction(x, y)[xi]; }

  /// Total number of fiber elements, and the position of (x, 0) when the
  /// fibers are laid out x-major.
  std::size_t total_size() const { return offsets_.empty() ? 0 : offsets_.back(); }
  std::size_t offset(Elem x) const { return offsets_[x]; }

 private:
  static std::optional<Presheaf> build(PosetPtr base, std::vector<std::vector<std::string>> fibers,
                                       std::span<const Restriction> restrictions, std::string& error);

  PosetPtr base_;
  std::vector<std::vector<std::string>> fibers_;
  std::vector<std::vector<Elem>> maps_;  // x * n + y, empty unless x <= y
  std::vector<std::size_t> offsets_;     // n + 1 entries
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

/// A space over a base: a strict p-morphism total -> base.
class Bundle {
 public:
  /// Throws NotStrict.
  explicit Bundle(PosetMap projection);

  const PosetPtr& total() const { return projection_.domain; }
  const PosetPtr& base() const { return projection_.codomain; }
  const PosetMap& projection() const { return projection_; }
  /// Elements over x, ascending.
  std::vector<Elem> fiber(Elem x) const;

 private:
  PosetMap projection_;
};

/// Componentwise subsets closed under restriction.
struct Subfunctor {
  std::vector<Subset> parts;
  bool operator==(const Subfunctor&) const = default;
};

/// The Grothendieck construction: total = disjoint union of the fibers laid
/// out x-major, (x, s) <= (y, t) iff x <= y and F_{xy}(s) = t. Total labels
/// are "x.s". Throws TooLarge past 64 total elements.
Bundle grothendieck(const Presheaf& f);

/// Fibers of the projection with restrictions given by the unique lift above
/// each element. Fiber labels are the total's labels.
Presheaf fiber_presheaf(const Bundle& b);

/// Order isomorphism total -> grothendieck(fiber_presheaf(b)).total over the
/// base, if one exists.
bool round_trip_total(const Bundle& b);

/// Fiber bijections f(x) -> g(x) commuting with all restrictions, if any.
std::optional<std::vector<std::vector<Elem>>> find_presheaf_isomorphism(const Presheaf& f,
                                                                        const Presheaf& g);

/// fiber_presheaf(grothendieck(f)) is isomorphic to f.
bool round_trip_presheaf(const Presheaf& f);

/// All subfunctors, ordered by the bit pattern of the corresponding upset of
/// the Grothendieck total.
std::vector<Subfunctor> subfunctor_upsets(const Presheaf& f);

/// The subset of the Grothendieck total occupied by a subfunctor.
Subset subfunctor_to_upset(const Presheaf& f, const Subfunctor& s);

/// Subfunctors under pointwise intersection and union, with implication
/// (S => T)(x) = {s in F(x) | for all y >= x, F_{xy}(s) in S(y) implies F_{xy}(s) in T(y)}.
struct SubfunctorAlgebra {
  std::vector<Subfunctor> elements;
  AlgebraPtr algebra;
};
SubfunctorAlgebra subfunctor_algebra(const Presheaf& f);

/// S |-> {y >= x | F_{xy}(xi) in S(y)}, into the upsets of the principal
/// upset of x taken as an induced subposet.
HeytingHom m_component(const Presheaf& f, const SubfunctorAlgebra& hf, Elem x, Elem xi);
HeytingHom m_component(const Presheaf& f, Elem x, Elem xi);

/// Tupling of every m_component, ordered by (x, xi), into the product of
/// their codomains.
HeytingHom product_embedding(const Presheaf& f, const SubfunctorAlgebra& hf);
HeytingHom product_embedding(const Presheaf& f);

/// Pointwise product; fiber (s, t) has index s * |G(x)| + t and label "(s,t)".
/// Throws BaseMismatch.
Presheaf presheaf_product(const Presheaf& f, const Presheaf& g);

/// Natural transformation between presheaves on the same base.
struct PresheafMorphism {
  PresheafPtr source;
  PresheafPtr target;
  std::vector<std::vector<Elem>> components;
};

bool is_natural(const PresheafMorphism& m);

/// The induced map of Grothendieck totals; `source` and `target` must be
/// grothendieck of the morphism's endpoints.
PosetMap grothendieck_map(const PresheafMorphism& m, const Bundle& source, const Bundle& target);

/// A monotone map over the base restricted fiberwise. Throws InvalidMap when
/// g does not commute with the projections.
PresheafMorphism fiber_morphism(const PosetMap& g, const Bundle& source, const Bundle& target);

}  // namespace esakia
