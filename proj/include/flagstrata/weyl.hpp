#pragma once

// Weyl group elements as permutations of the root index set, the fully
// enumerated group table with Bruhat order, and parabolic coset
// representatives.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "flagstrata/rootsys.hpp"
#include "flagstrata/subset.hpp"

namespace flagstrata {

/// A Weyl group element, stored as the induced permutation of the roots.
class WeylElement {
 public:
  WeylElement(std::shared_ptr<const RootSystem> rs, std::vector<RootIndex> perm);

  static WeylElement identity(std::shared_ptr<const RootSystem> rs);
  static WeylElement simple_reflection(std::shared_ptr<const RootSystem> rs, int i);
  /// Product s_{word[0]} s_{word[1]} ... (0-based indices, need not be reduced).
  static WeylElement from_word(std::shared_ptr<const RootSystem> rs, std::span<const int> word);

  const RootSystem& roots() const { return *rs_; }
  const std::shared_ptr<const RootSystem>& root_system() const { return rs_; }
  std::span<const RootIndex> perm() const { return perm_; }
  RootIndex operator()(RootIndex r) const { return perm_[r]; }

  /// Packs the images of the simple roots, which determine the element.
  std::string key() const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.rs_ == b.rs_ && a.perm_ == b.perm_;
  }

 private:
  std::shared_ptr<const RootSystem> rs_;
  std::vector<RootIndex> perm_;
};

/// Composition a*b (apply b first). Throws PreconditionError on mismatched root systems.
WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement inverse(const WeylElement& a);
/// Number of positive roots sent to negative roots.
int length(const WeylElement& w);
/// Lexicographically smallest reduced word (0-based indices).
std::vector<int> canonical_word(const WeylElement& w);

using ElementId = std::uint32_t;

enum class Side { left, right };
enum class CosetKind {
  right_reps,   // W^J: minimal in w W_J
  left_reps,    // ^J W: minimal in W_J w
  double_reps,  // ^J W^K
};

/// The Weyl group enumerated in full. Element ids follow the global order:
/// by length, then by canonical word. Immutable after construction except
/// for the lazily built Bruhat closure, which is guarded by a once-flag.
class GroupTable {
 public:
  static constexpr std::size_t kDefaultCeiling = 2'000'000;

  explicit GroupTable(std::shared_ptr<const RootSystem> rs,
                      std::size_t ceiling = kDefaultCeiling);

  const RootSystem& roots() const { return *rs_; }
  const std::shared_ptr<const RootSystem>& root_system() const { return rs_; }
  int rank() const { return rs_->rank(); }
  std::size_t size() const { return elements_.size(); }

  const WeylElement& element(ElementId w) const { return elements_.at(w); }
  std::optional<ElementId> find(const WeylElement& w) const;
  ElementId id_of(const WeylElement& w) const;
  /// Element of a (not necessarily reduced) 0-based word.
  ElementId from_word(std::span<const int> word) const;

  ElementId identity() const { return 0; }
  ElementId generator(int i) const { return left_mul_[i][0]; }
  ElementId longest() const { return static_cast<ElementId>(size() - 1); }

  ElementId left_mul(int i, ElementId w) const { return left_mul_[i][w]; }   // s_i w
  ElementId right_mul(ElementId w, int i) const { return right_mul_[i][w]; }  // w s_i
  ElementId multiply(ElementId a, ElementId b) const;
  ElementId inverse(ElementId w) const { return inverse_[w]; }
  int length(ElementId w) const { return length_[w]; }
  const std::vector<int>& word(ElementId w) const { return words_[w]; }

  /// w(alpha_r)
  RootIndex apply(ElementId w, RootIndex r) const { return elements_[w](r); }
  bool has_right_descent(ElementId w, int i) const { return !rs_->is_positive(apply(w, rs_->simple(i))); }
  bool has_left_descent(ElementId w, int i) const { return has_right_descent(inverse_[w], i); }

  /// Lower Bruhat covers u of v (l(u) = l(v) - 1, u = v t for a reflection t).
  const std::vector<ElementId>& lower_covers(ElementId v) const { return covers_[v]; }

  bool bruhat_leq(ElementId u, ElementId v) const;

  /// Groups above this size answer Bruhat queries by descent recursion
  /// instead of a materialized closure.
  static constexpr std::size_t kClosureLimit = 20'000;

 private:
  void build_closure() const;

  std::shared_ptr<const RootSystem> rs_;
  std::vector<WeylElement> elements_;
  std::unordered_map<std::string, ElementId> index_;
  std::vector<std::vector<ElementId>> left_mul_;
  std::vector<std::vector<ElementId>> right_mul_;
  std::vector<ElementId> inverse_;
  std::vector<int> length_;
  std::vector<std::vector<int>> words_;
  std::vector<std::vector<ElementId>> covers_;

  mutable std::once_flag closure_once_;
  mutable std::size_t closure_words_ = 0;
  mutable std::vector<std::uint64_t> below_;  // row v: bitset of u <= v
};

/// Descent-recursion Bruhat test (lifting property); independent of the closure.
bool bruhat_leq_by_descent(const GroupTable& g, ElementId u, ElementId v);

/// x in W_J, i.e. every reduced word of x uses only letters of J.
bool in_parabolic(const GroupTable& g, ElementId x, ParabolicSubset J);
/// Elements of W_J in global order.
std::vector<ElementId> parabolic_elements(const GroupTable& g, ParabolicSubset J);

/// Minimal-length element of w W_J (right) or W_J w (left).
ElementId min_coset_rep(const GroupTable& g, ElementId w, ParabolicSubset J, Side side);
bool is_min_rep(const GroupTable& g, ElementId w, ParabolicSubset J, Side side);

/// W^J, ^J W, or ^J W^K in global order. For right_reps the subset used is J;
/// for left_reps it is J; for double_reps the left subset is J and the right is K.
std::vector<ElementId> enumerate_min_reps(const GroupTable& g, ParabolicSubset J,
                                          ParabolicSubset K, CosetKind kind);

/// The unique element of ^J W^K in W_J w W_K.
ElementId double_coset_rep(const GroupTable& g, ElementId w, ParabolicSubset J, ParabolicSubset K);

/// Ad(w)(K) = { i : w(alpha_k) = alpha_i for some k in K }.
ParabolicSubset adjoint_image(const GroupTable& g, ElementId w, ParabolicSubset K);

/// Roots of the Levi subsystem Phi_J (positive and negative), as a membership mask.
std::vector<bool> levi_roots(const RootSystem& rs, ParabolicSubset J);

}  // namespace flagstrata
