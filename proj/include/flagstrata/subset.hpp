#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace flagstrata {

/// A subset of the simple-root index set I, stored as a bitmask. Indices are
/// 0-based internally; text I/O is 1-based.
class ParabolicSubset {
 public:
  static constexpr int kMaxRank = 32;

  constexpr ParabolicSubset() = default;
  constexpr explicit ParabolicSubset(std::uint32_t bits) : bits_(bits) {}
  ParabolicSubset(std::initializer_list<int> indices) {
    for (int i : indices) insert(i);
  }

  static constexpr ParabolicSubset full(int rank) {
    return ParabolicSubset(rank >= 32 ? ~0u : ((1u << rank) - 1u));
  }
  static ParabolicSubset from_indices(const std::vector<int>& indices) {
    ParabolicSubset s;
    for (int i : indices) s.insert(i);
    return s;
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr void insert(int i) { bits_ |= (1u << i); }
  constexpr void erase(int i) { bits_ &= ~(1u << i); }

  constexpr bool is_subset_of(ParabolicSubset other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (std::uint32_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr ParabolicSubset operator&(ParabolicSubset a, ParabolicSubset b) {
    return ParabolicSubset(a.bits_ & b.bits_);
  }
  friend constexpr ParabolicSubset operator|(ParabolicSubset a, ParabolicSubset b) {
    return ParabolicSubset(a.bits_ | b.bits_);
  }
  friend constexpr ParabolicSubset operator-(ParabolicSubset a, ParabolicSubset b) {
    return ParabolicSubset(a.bits_ & ~b.bits_);
  }
  friend constexpr bool operator==(ParabolicSubset, ParabolicSubset) = default;
  friend constexpr auto operator<=>(ParabolicSubset, ParabolicSubset) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// All subsets of {0..rank-1}, in increasing bitmask order.
inline std::vector<ParabolicSubset> all_subsets(int rank) {
  std::vector<ParabolicSubset> out;
  for (std::uint32_t b = 0; b < (1u << rank); ++b) out.emplace_back(b);
  return out;
}

/// All subsets of `s`, in increasing bitmask order.
inline std::vector<ParabolicSubset> subsets_of(ParabolicSubset s) {
  std::vector<ParabolicSubset> out;
  std::uint32_t b = 0;
  do {
    out.emplace_back(b);
    b = (b - s.bits()) & s.bits();
  } while (b != 0);
  return out;
}

}  // namespace flagstrata
