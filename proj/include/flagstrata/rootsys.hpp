#pragma once

// Finite crystallographic root systems, built from Cartan data by closing the
// simple roots under simple reflections.
//
// Conventions: simple roots are labeled 1..rank after Bourbaki (0..rank-1 in
// code). The Cartan matrix entry a(i, j) is <alpha_j, alpha_i^vee>, so
// s_i(alpha_j) = alpha_j - a(i, j) alpha_i.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagstrata/subset.hpp"

namespace flagstrata {

using RootIndex = std::uint16_t;

struct CartanDatum {
  char family = 'A';  // one of A B C D E F G
  int rank = 1;
  std::vector<std::vector<int>> matrix;

  int operator()(int i, int j) const { return matrix[i][j]; }
  std::string name() const { return std::string(1, family) + std::to_string(rank); }
  friend bool operator==(const CartanDatum&, const CartanDatum&) = default;
};

/// The standard Cartan datum of a simple type, e.g. ('B', 3).
CartanDatum cartan_datum(char family, int rank);

/// Parses "A3", "d4", "G2", ...
CartanDatum parse_cartan(std::string_view text);

/// Throws PreconditionError naming the first violated condition.
void validate_cartan(const CartanDatum& datum);

/// A root as an integer vector in the simple-root basis.
struct Root {
  std::vector<int> coords;

  int height() const;
  bool is_positive() const;
  bool is_negative() const;
  ParabolicSubset support() const;
  friend bool operator==(const Root&, const Root&) = default;
};

class RootSystem {
 public:
  const CartanDatum& cartan() const { return cartan_; }
  int rank() const { return cartan_.rank; }

  /// |Phi|
  std::size_t size() const { return roots_.size(); }
  /// |Phi+|
  std::size_t num_positive() const { return roots_.size() / 2; }

  const Root& root(RootIndex r) const;
  const std::vector<Root>& roots() const { return roots_; }

  /// Simple roots occupy indices 0..rank-1.
  RootIndex simple(int i) const;
  bool is_positive(RootIndex r) const { return r < num_positive(); }
  bool is_simple(RootIndex r) const { return r < static_cast<std::size_t>(rank()); }
  RootIndex negate(RootIndex r) const {
    const auto n = num_positive();
    return static_cast<RootIndex>(r < n ? r + n : r - n);
  }

  /// Index of s_i(alpha_r). Throws std::out_of_range on bad indices.
  RootIndex reflect(int i, RootIndex r) const;

  /// <alpha_r, alpha_s^vee>.
  int coroot_pairing(RootIndex r, RootIndex s) const;

  std::optional<RootIndex> find(const Root& root) const;

  /// Squared lengths of the simple roots, as coprime positive integers.
  const std::vector<int>& simple_norms() const { return norms_; }

 private:
  friend std::shared_ptr<const RootSystem> build_root_system(const CartanDatum& datum);
  RootSystem() = default;

  // Twice the invariant form, evaluated on coordinate vectors.
  long form(const Root& a, const Root& b) const;

  CartanDatum cartan_;
  std::vector<Root> roots_;
  std::vector<int> norms_;
  std::vector<std::vector<RootIndex>> reflection_;  // [i][r]
};

std::shared_ptr<const RootSystem> build_root_system(const CartanDatum& datum);

}  // namespace flagstrata
