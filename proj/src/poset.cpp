#include "esakia/poset.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace esakia {

namespace {

void check_size(std::size_t n) {
  if (n > kMaxPosetSize) {
    throw TooLarge("poset has " + std::to_string(n) + " elements; at most " +
                   std::to_string(kMaxPosetSize) + " are supported");
  }
}

std::vector<Subset> transpose(const std::vector<Subset>& up) {
  std::vector<Subset> down(up.size());
  for (Elem x = 0; x < up.size(); ++x) {
    for (Elem y : up[x]) down[y].insert(x);
  }
  return down;
}

}  // namespace

FinitePoset FinitePoset::from_cover_indices(std::vector<std::string> labels,
                                            std::span<const std::pair<Elem, Elem>> covers) {
  const std::size_t n = labels.size();
  check_size(n);
  std::vector<Subset> up(n);
  for (Elem x = 0; x < n; ++x) up[x] = Subset::singleton(x);
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw UnknownElement("cover refers to an element out of range");
    up[lo].insert(hi);
  }
  // Warshall on bit rows.
  for (Elem k = 0; k < n; ++k) {
    for (Elem x = 0; x < n; ++x) {
      if (up[x].contains(k)) up[x] |= up[k];
    }
  }
  for (Elem x = 0; x < n; ++x) {
    for (Elem y : up[x]) {
      if (y != x && up[y].contains(x)) {
        throw AntisymmetryViolation("order closure makes '" + labels[x] + "' and '" + labels[y] +
                                    "' mutually comparable");
      }
    }
  }
  FinitePoset p;
  p.labels_ = std::move(labels);
  p.down_ = transpose(up);
  p.up_ = std::move(up);
  return p;
}

FinitePoset FinitePoset::from_covers(std::vector<std::string> labels,
                                     std::span<const std::pair<std::string, std::string>> covers) {
  check_size(labels.size());
  std::unordered_map<std::string, Elem> index;
  for (Elem x = 0; x < labels.size(); ++x) {
    if (!index.emplace(labels[x], x).second) {
      throw DuplicateElement("element '" + labels[x] + "' declared twice");
    }
  }
  std::vector<std::pair<Elem, Elem>> idx;
  idx.reserve(covers.size());
  for (const auto& [lo, hi] : covers) {
    auto a = index.find(lo);
    auto b = index.find(hi);
    if (a == index.end()) throw UnknownElement("unknown element '" + lo + "'");
    if (b == index.end()) throw UnknownElement("unknown element '" + hi + "'");
    idx.emplace_back(a->second, b->second);
  }
  return from_cover_indices(std::move(labels), idx);
}

FinitePoset FinitePoset::from_relation(std::vector<std::string> labels, std::vector<Subset> up) {
  const std::size_t n = labels.size();
  check_size(n);
  if (up.size() != n) throw InvalidMap("relation size does not match the label count");
  for (Elem x = 0; x < n; ++x) {
    if (!up[x].subset_of(Subset::full(n))) throw UnknownElement("relation leaves the carrier");
    if (!up[x].contains(x)) throw AntisymmetryViolation("relation is not reflexive at '" + labels[x] + "'");
    for (Elem y : up[x]) {
      if (y != x && up[y].contains(x)) {
        throw AntisymmetryViolation("'" + labels[x] + "' and '" + labels[y] + "' are mutually comparable");
      }
      if (!up[y].subset_of(up[x])) {
        throw AntisymmetryViolation("relation is not transitive through '" + labels[y] + "'");
      }
    }
  }
  FinitePoset p;
  p.labels_ = std::move(labels);
  p.down_ = transpose(up);
  p.up_ = std::move(up);
  return p;
}

FinitePoset FinitePoset::from_relation(std::vector<Subset> up) {
  std::vector<std::string> labels(up.size());
  for (std::size_t i = 0; i < up.size(); ++i) labels[i] = std::to_string(i);
  return from_relation(std::move(labels), std::move(up));
}

std::optional<Elem> FinitePoset::find(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<Elem>(it - labels_.begin());
}

Elem FinitePoset::index_of(std::string_view label) const {
  if (auto x = find(label)) return *x;
  throw UnknownElement("unknown element '" + std::string(label) + "'");
}

std::vector<std::pair<Elem, Elem>> FinitePoset::covers() const {
  std::vector<std::pair<Elem, Elem>> out;
  for (Elem x = 0; x < size(); ++x) {
    for (Elem y : up_[x]) {
      if (y == x) continue;
      // y covers x iff no z with x < z < y.
      Subset between = (up_[x] & down_[y]) - Subset::singleton(x) - Subset::singleton(y);
      if (between.empty()) out.emplace_back(x, y);
    }
  }
  return out;
}

FinitePoset point_poset() { return FinitePoset::from_cover_indices({"pt"}, {}); }

FinitePoset chain_poset(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<std::pair<Elem, Elem>> covers;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
    if (i > 0) covers.emplace_back(static_cast<Elem>(i - 1), static_cast<Elem>(i));
  }
  return FinitePoset::from_cover_indices(std::move(labels), covers);
}

FinitePoset antichain_poset(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i));
  }
  return FinitePoset::from_cover_indices(std::move(labels), {});
}

Subset principal_upset(const FinitePoset& p, Elem x) {
  if (x >= p.size()) throw UnknownElement("element index out of range");
  return p.up(x);
}

Subset principal_downset(const FinitePoset& p, Elem x) {
  if (x >= p.size()) throw UnknownElement("element index out of range");
  return p.down(x);
}

bool is_upset(const FinitePoset& p, Subset s) {
  for (Elem x : s) {
    if (!p.up(x).subset_of(s)) return false;
  }
  return true;
}

bool is_downset(const FinitePoset& p, Subset s) {
  for (Elem x : s) {
    if (!p.down(x).subset_of(s)) return false;
  }
  return true;
}

std::vector<Subset> all_upsets(const FinitePoset& p) {
  // Decide elements from the top down: when x is reached, every element
  // strictly above it has been decided, so x may join only if they all did.
  std::vector<Elem> order(p.size());
  std::iota(order.begin(), order.end(), Elem{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Elem a, Elem b) { return p.up(a).size() < p.up(b).size(); });

  std::vector<Subset> out;
  std::vector<std::pair<std::size_t, Subset>> stack{{0, Subset{}}};
  while (!stack.empty()) {
    auto [depth, current] = stack.back();
    stack.pop_back();
    if (depth == order.size()) {
      out.push_back(current);
      continue;
    }
    const Elem x = order[depth];
    stack.emplace_back(depth + 1, current);
    if ((p.up(x) - Subset::singleton(x)).subset_of(current)) {
      Subset with = current;
      with.insert(x);
      stack.emplace_back(depth + 1, with);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subset upward_closure(const FinitePoset& p, Subset s) {
  Subset out;
  for (Elem x : s) out |= p.up(x);
  return out;
}

Subset upset_interior(const FinitePoset& p, Subset s) {
  Subset out;
  for (Elem x : s) {
    if (p.up(x).subset_of(s)) out.insert(x);
  }
  return out;
}

std::pair<FinitePoset, std::vector<Elem>> induced_subposet(const FinitePoset& p, Subset s) {
  std::vector<Elem> members(s.begin(), s.end());
  std::vector<std::string> labels;
  std::vector<Subset> up(members.size());
  for (Elem i = 0; i < members.size(); ++i) {
    labels.push_back(p.label(members[i]));
    for (Elem j = 0; j < members.size(); ++j) {
      if (p.leq(members[i], members[j])) up[i].insert(j);
    }
  }
  return {FinitePoset::from_relation(std::move(labels), std::move(up)), std::move(members)};
}

std::string format_subset(const FinitePoset& p, Subset s) {
  std::string out = "{";
  bool first = true;
  for (Elem x : s) {
    if (!first) out += ',';
    out += p.label(x);
    first = false;
  }
  out += '}';
  return out;
}

PosetMap::PosetMap(PosetPtr dom, PosetPtr cod, std::vector<Elem> assign)
    : domain(std::move(dom)), codomain(std::move(cod)), assignment(std::move(assign)) {
  if (!domain || !codomain) throw InvalidMap("map requires a domain and a codomain");
  if (assignment.size() != domain->size()) throw InvalidMap("map is not total on its domain");
  for (Elem y : assignment) {
    if (y >= codomain->size()) throw InvalidMap("map sends an element outside its codomain");
  }
}

PosetMap identity_map(const PosetPtr& p) {
  std::vector<Elem> a(p->size());
  std::iota(a.begin(), a.end(), Elem{0});
  return PosetMap(p, p, std::move(a));
}

PosetMap constant_map(const PosetPtr& dom, const PosetPtr& cod, Elem value) {
  return PosetMap(dom, cod, std::vector<Elem>(dom->size(), value));
}

PosetMap compose(const PosetMap& g, const PosetMap& f) {
  if (!same_poset(f.codomain, g.domain)) throw CodomainMismatch("cannot compose: codomain and domain differ");
  std::vector<Elem> a(f.assignment.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(static_cast<Elem>(i)));
  return PosetMap(f.domain, g.codomain, std::move(a));
}

Subset direct_image(const PosetMap& f, Subset u) {
  Subset out;
  for (Elem x : u) out.insert(f(x));
  return out;
}

Subset inverse_image(const PosetMap& f, Subset v) {
  Subset out;
  for (Elem x = 0; x < f.assignment.size(); ++x) {
    if (v.contains(f(x))) out.insert(x);
  }
  return out;
}

std::optional<OrderViolation> find_order_violation(const PosetMap& f) {
  const auto& p = *f.domain;
  const auto& q = *f.codomain;
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem y : p.up(x)) {
      if (!q.leq(f(x), f(y))) return OrderViolation{x, y};
    }
  }
  return std::nullopt;
}

std::optional<BackViolation> find_back_violation(const PosetMap& f) {
  const auto& p = *f.domain;
  const auto& q = *f.codomain;
  for (Elem x = 0; x < p.size(); ++x) {
    Subset reached = direct_image(f, p.up(x));
    Subset missing = q.up(f(x)) - reached;
    if (!missing.empty()) return BackViolation{x, *missing.begin()};
  }
  return std::nullopt;
}

std::optional<UniquenessViolation> find_uniqueness_violation(const PosetMap& f) {
  const auto& p = *f.domain;
  for (Elem x = 0; x < p.size(); ++x) {
    Subset above = p.up(x);
    for (Elem a : above) {
      for (Elem b : above) {
        if (a < b && f(a) == f(b)) return UniquenessViolation{x, a, b};
      }
    }
  }
  return std::nullopt;
}

bool is_monotone(const PosetMap& f) { return !find_order_violation(f); }

bool is_p_morphism(const PosetMap& f) { return is_monotone(f) && !find_back_violation(f); }

bool is_strict_p_morphism(const PosetMap& f) {
  return is_p_morphism(f) && !find_uniqueness_violation(f);
}

bool is_bijective(const PosetMap& f) {
  if (f.domain->size() != f.codomain->size()) return false;
  Subset hit;
  for (Elem y : f.assignment) hit.insert(y);
  return hit == f.codomain->carrier();
}

bool is_order_isomorphism(const PosetMap& f) {
  if (!is_bijective(f)) return false;
  const auto& p = *f.domain;
  const auto& q = *f.codomain;
  for (Elem x = 0; x < p.size(); ++x) {
    for (Elem y = 0; y < p.size(); ++y) {
      if (p.leq(x, y) != q.leq(f(x), f(y))) return false;
    }
  }
  return true;
}

std::optional<PosetMap> find_order_isomorphism(const PosetPtr& p, const PosetPtr& q,
                                               const std::function<bool(Elem, Elem)>& compatible,
                                               const std::function<bool(const PosetMap&)>& accept) {
  const std::size_t n = p->size();
  if (q->size() != n) return std::nullopt;

  auto signature = [](const FinitePoset& s, Elem x) {
    return std::pair{s.up(x).size(), s.down(x).size()};
  };
  std::vector<std::vector<Elem>> candidates(n);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      if (signature(*p, x) == signature(*q, y) && (!compatible || compatible(x, y))) {
        candidates[x].push_back(y);
      }
    }
    if (candidates[x].empty()) return std::nullopt;
  }

  std::vector<Elem> image(n);
  Subset used;
  std::optional<PosetMap> found;

  std::function<bool(Elem)> extend = [&](Elem x) -> bool {
    if (x == n) {
      PosetMap candidate(p, q, image);
      if (!accept || accept(candidate)) {
        found.emplace(std::move(candidate));
        return true;
      }
      return false;
    }
    for (Elem y : candidates[x]) {
      if (used.contains(y)) continue;
      bool consistent = true;
      for (Elem z = 0; z < x && consistent; ++z) {
        consistent = p->leq(z, x) == q->leq(image[z], y) && p->leq(x, z) == q->leq(y, image[z]);
      }
      if (!consistent) continue;
      image[x] = y;
      used.insert(y);
      if (extend(x + 1)) return true;
      used.erase(y);
    }
    return false;
  };
  extend(0);
  return found;
}

}  // namespace esakia
