#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>

namespace esakia {

/// Dense element index inside a finite carrier.
using Elem = std::uint32_t;

/// Upper bound on poset carriers; subsets are single 64-bit words.
inline constexpr std::size_t kMaxPosetSize = 64;

/// A subset of a carrier of at most 64 elements, stored as its characteristic
/// bit pattern. Ordering compares bit patterns, which is the canonical order
/// used for upset enumeration.
class Subset {
 public:
  class iterator {
   public:
    using value_type = Elem;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::forward_iterator_tag;

    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr Elem operator*() const { return static_cast<Elem>(std::countr_zero(rest_)); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };

  constexpr Subset() = default;
  constexpr explicit Subset(std::uint64_t bits) : bits_(bits) {}

  static constexpr Subset singleton(Elem x) { return Subset{std::uint64_t{1} << x}; }
  static constexpr Subset full(std::size_t n) {
    return Subset{n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1};
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(Elem x) const { return (bits_ >> x) & 1U; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(Subset other) const { return (bits_ & ~other.bits_) == 0; }

  constexpr void insert(Elem x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void erase(Elem x) { bits_ &= ~(std::uint64_t{1} << x); }

  constexpr iterator begin() const { return iterator{bits_}; }
  constexpr iterator end() const { return iterator{}; }

  constexpr Subset operator|(Subset o) const { return Subset{bits_ | o.bits_}; }
  constexpr Subset operator&(Subset o) const { return Subset{bits_ & o.bits_}; }
  /// Set difference.
  constexpr Subset operator-(Subset o) const { return Subset{bits_ & ~o.bits_}; }
  constexpr Subset& operator|=(Subset o) {
    bits_ |= o.bits_;
    return *this;
  }
  constexpr Subset& operator&=(Subset o) {
    bits_ &= o.bits_;
    return *this;
  }

  constexpr bool operator==(const Subset&) const = default;
  constexpr auto operator<=>(const Subset&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace esakia
