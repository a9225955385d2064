#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "esakia/error.hpp"
#include "esakia/subset.hpp"

namespace esakia {

/// A finite partial order on dense indices 0..n-1 with user labels kept on the
/// side. The full order relation is materialized as one up-set word per
/// element. Doubles as a finite Esakia space with the discrete topology.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Builds the reflexive-transitive closure of `covers`.
  /// Throws DuplicateElement, UnknownElement, AntisymmetryViolation, TooLarge.
  static FinitePoset from_covers(std::vector<std::string> labels,
                                 std::span<const std::pair<std::string, std::string>> covers);

  /// Index-based variant of from_covers.
  static FinitePoset from_cover_indices(std::vector<std::string> labels,
                                        std::span<const std::pair<Elem, Elem>> covers);

  /// Takes the full order as `up[x] = {y | x <= y}` and checks the three
  /// order axioms.
  static FinitePoset from_relation(std::vector<std::string> labels, std::vector<Subset> up);

  /// Poset with labels "0".."n-1" from a full relation; used by generators.
  static FinitePoset from_relation(std::vector<Subset> up);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  Subset carrier() const { return Subset::full(size()); }

  bool leq(Elem x, Elem y) const { return up_[x].contains(y); }
  Subset up(Elem x) const { return up_[x]; }
  Subset down(Elem x) const { return down_[x]; }

  const std::string& label(Elem x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Elem> find(std::string_view label) const;
  /// Throws UnknownElement.
  Elem index_of(std::string_view label) const;

  /// Pairs x < y with nothing strictly in between, in lexicographic order.
  std::vector<std::pair<Elem, Elem>> covers() const;

  /// Equality of labels and order; two posets built independently from the
  /// same data compare equal.
  bool operator==(const FinitePoset& other) const {
    return labels_ == other.labels_ && up_ == other.up_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Subset> up_;
  std::vector<Subset> down_;
};

using PosetPtr = std::shared_ptr<const FinitePoset>;

inline PosetPtr share(FinitePoset p) { return std::make_shared<const FinitePoset>(std::move(p)); }

/// Same poset object, or equal by value.
inline bool same_poset(const PosetPtr& a, const PosetPtr& b) { return a == b || *a == *b; }

/// Names used throughout the tests and examples.
FinitePoset point_poset();
FinitePoset chain_poset(std::size_t n);
FinitePoset antichain_poset(std::size_t n);

Subset principal_upset(const FinitePoset& p, Elem x);
Subset principal_downset(const FinitePoset& p, Elem x);
bool is_upset(const FinitePoset& p, Subset s);
bool is_downset(const FinitePoset& p, Subset s);

/// All upward-closed subsets, ascending by characteristic bit pattern.
std::vector<Subset> all_upsets(const FinitePoset& p);

/// Smallest upset containing `s`.
Subset upward_closure(const FinitePoset& p, Subset s);

/// Largest upset contained in `s`.
Subset upset_interior(const FinitePoset& p, Subset s);

/// Sub-poset induced on `s`, relabeled densely in increasing index order,
/// together with the inclusion map's assignment.
std::pair<FinitePoset, std::vector<Elem>> induced_subposet(const FinitePoset& p, Subset s);

/// Renders a subset with the poset's labels, e.g. "{a,b}".
std::string format_subset(const FinitePoset& p, Subset s);

/// Total function between finite posets.
struct PosetMap {
  PosetPtr domain;
  PosetPtr codomain;
  std::vector<Elem> assignment;

  /// Checks totality and range. Throws InvalidMap.
  PosetMap(PosetPtr dom, PosetPtr cod, std::vector<Elem> assign);

  Elem operator()(Elem x) const { return assignment[x]; }
  bool operator==(const PosetMap& o) const {
    return same_poset(domain, o.domain) && same_poset(codomain, o.codomain) &&
           assignment == o.assignment;
  }
};

PosetMap identity_map(const PosetPtr& p);
PosetMap constant_map(const PosetPtr& dom, const PosetPtr& cod, Elem value);
/// g after f. Throws CodomainMismatch.
PosetMap compose(const PosetMap& g, const PosetMap& f);

/// f_!
Subset direct_image(const PosetMap& f, Subset u);
/// f^*
Subset inverse_image(const PosetMap& f, Subset v);

struct OrderViolation {
  Elem lower, upper;  // lower <= upper but f(lower) is not <= f(upper)
};
struct BackViolation {
  Elem source;  // x
  Elem target;  // y >= f(x) with no preimage above x
};
struct UniquenessViolation {
  Elem source;        // x
  Elem first, second;  // distinct elements above x with the same image
};

std::optional<OrderViolation> find_order_violation(const PosetMap& f);
std::optional<BackViolation> find_back_violation(const PosetMap& f);
std::optional<UniquenessViolation> find_uniqueness_violation(const PosetMap& f);

bool is_monotone(const PosetMap& f);
bool is_p_morphism(const PosetMap& f);
/// p-morphism whose restriction to every principal upset is injective, i.e.
/// a bijection onto the principal upset of the image.
bool is_strict_p_morphism(const PosetMap& f);

bool is_bijective(const PosetMap& f);
/// Bijective with x <= y iff f(x) <= f(y).
bool is_order_isomorphism(const PosetMap& f);

/// Backtracking search for an order isomorphism p -> q. `compatible(x, y)`
/// restricts which targets x may take; `accept` may reject a complete
/// candidate, in which case the search continues.
std::optional<PosetMap> find_order_isomorphism(
    const PosetPtr& p, const PosetPtr& q,
    const std::function<bool(Elem, Elem)>& compatible = {},
    const std::function<bool(const PosetMap&)>& accept = {});

}  // namespace esakia
