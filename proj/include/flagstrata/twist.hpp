#pragma once

// Diagram automorphisms and the twisted W_J-action x . y = delta(x) y x^{-1}
// on W: orbits, their minimal elements, stabilizer types, the class
// decomposition of W, the length-nonincreasing arrow relation, strong
// conjugacy and cyclic-shift classes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flagstrata/rootsys.hpp"
#include "flagstrata/subset.hpp"
#include "flagstrata/weyl.hpp"

namespace flagstrata {

/// Cartan-preserving permutation of the simple-root index set.
class DiagramAutomorphism {
 public:
  static DiagramAutomorphism identity(int rank);
  /// Throws PreconditionError unless `perm` is a permutation with
  /// a(perm[i], perm[j]) = a(i, j).
  DiagramAutomorphism(const CartanDatum& cartan, std::vector<int> perm, std::string name = {});

  int operator()(int i) const { return perm_[i]; }
  ParabolicSubset operator()(ParabolicSubset s) const;
  int rank() const { return static_cast<int>(perm_.size()); }
  const std::vector<int>& perm() const { return perm_; }
  bool is_identity() const;
  DiagramAutomorphism inverse() const;
  /// "id", "flip", "tri", "tri2" for the named ones, else "2,1,3"-style.
  const std::string& name() const { return name_; }

  friend bool operator==(const DiagramAutomorphism& a, const DiagramAutomorphism& b) {
    return a.perm_ == b.perm_;
  }

 private:
  DiagramAutomorphism() = default;
  std::vector<int> perm_;
  std::string name_;
};

/// Accepts "id", "flip" (A_n n>=2, D_n, E6), "tri"/"tri2" (D4), or an
/// explicit 1-based image list "2,1,3".
DiagramAutomorphism parse_automorphism(std::string_view text, const CartanDatum& cartan);

/// Every named automorphism valid for the type: id, then flip, tri, tri2 as applicable.
std::vector<DiagramAutomorphism> named_automorphisms(const CartanDatum& cartan);

/// Group table together with the induced automorphism delta of W.
class TwistedGroup {
 public:
  TwistedGroup(const GroupTable& group, DiagramAutomorphism delta);

  const GroupTable& group() const { return *group_; }
  const DiagramAutomorphism& automorphism() const { return delta_; }
  int rank() const { return group_->rank(); }

  ElementId delta(ElementId w) const { return delta_table_[w]; }
  RootIndex delta_root(RootIndex r) const { return root_map_[r]; }
  ElementId delta_inverse(ElementId w) const { return delta_inverse_table_[w]; }

 private:
  const GroupTable* group_;
  DiagramAutomorphism delta_;
  std::vector<RootIndex> root_map_;
  std::vector<ElementId> delta_table_;
  std::vector<ElementId> delta_inverse_table_;
};

/// delta(w): conjugate the root permutation of w by the root relabeling
/// alpha_i -> alpha_{delta(i)}. Throws PreconditionError if the automorphism is
/// not Cartan-preserving for w's root system.
WeylElement delta_on_element(const DiagramAutomorphism& delta, const WeylElement& w);

/// One W_J-orbit under the twisted action, members in global order.
struct TwistedOrbit {
  std::vector<ElementId> members;
  std::vector<ElementId> min_elements;  // members of minimal length
};

/// The set [w]_J = W_J . (w W_K), K the stabilizer type of w.
struct TwistClass {
  ElementId base;  // in W^J
  ParabolicSubset stabilizer_set;
  std::vector<ElementId> members;  // global order
};

/// A partition of W; blocks in order of their smallest member, members sorted.
struct Partition {
  std::vector<std::vector<ElementId>> blocks;
  std::vector<std::size_t> block_of;

  bool same_block(ElementId a, ElementId b) const { return block_of[a] == block_of[b]; }
};

/// Twisted action of W_J for fixed (J, delta). Precomputes the orbit
/// partition of W; keeps a reference to the TwistedGroup.
class TwistedAction {
 public:
  TwistedAction(const TwistedGroup& twisted, ParabolicSubset J);

  const TwistedGroup& twisted() const { return *twisted_; }
  const GroupTable& group() const { return twisted_->group(); }
  ParabolicSubset J() const { return J_; }

  const std::vector<ElementId>& parabolic() const { return parabolic_; }  // W_J
  const Partition& orbits() const { return orbits_; }
  const std::vector<ElementId>& orbit_min(ElementId w) const { return orbit_min_[orbits_.block_of[w]]; }
  /// One generator step s_{delta(j)} y s_j.
  ElementId step(ElementId y, int j) const;

 private:
  const TwistedGroup* twisted_;
  ParabolicSubset J_;
  std::vector<ElementId> parabolic_;
  Partition orbits_;
  std::vector<std::vector<ElementId>> orbit_min_;
};

/// delta(x) y x^{-1}; throws PreconditionError if x is not in W_J.
ElementId twisted_conjugate(const TwistedAction& action, ElementId x, ElementId y);

/// Orbit of y by closure under the generators of W_J.
TwistedOrbit orbit(const TwistedAction& action, ElementId y);

/// Largest K in J with Ad(w)(K) = delta(K). Requires w in W^J.
ParabolicSubset stabilizer_type(const TwistedGroup& twisted, ParabolicSubset J, ElementId w);

enum class Verify { no, yes };

/// One class per w in W^J, in the global order of the bases. With
/// Verify::yes, disjointness and covering of W are asserted.
std::vector<TwistClass> class_decomposition(const TwistedAction& action, Verify verify = Verify::no);

/// s_{delta(j)} w s_j when its length does not exceed l(w). Requires j in J.
std::optional<ElementId> arrow_step(const TwistedAction& action, ElementId w, int j);

struct ArrowEdge {
  int j;
  ElementId to;
};

struct Reduction {
  ElementId distinguished;  // w1 in W^J
  ElementId parabolic_part; // v in W_{I(J,delta;w1)}
  std::vector<ArrowEdge> path;  // w -> ... -> w1 v
};

/// Breadth-first search along arrow steps, strict length drops explored
/// first, until an element w1 v is reached.
Reduction reduce_to_distinguished(const TwistedAction& action, ElementId w);

/// True when `to` is reachable from `from` by arrow steps (reflexive).
bool arrow_reachable(const TwistedAction& action, ElementId from, ElementId to);

/// Strong (J, delta)-conjugacy: transitive closure of elementary steps with
/// x ranging over all of W_J.
bool strongly_conjugate(const TwistedAction& action, ElementId w, ElementId w2);
Partition strong_conjugacy_classes(const TwistedAction& action);

/// Cyclic-shift classes: strongly connected components of the arrow digraph.
Partition cyclic_shift_classes(const TwistedAction& action);

/// { i : s_i <= w } in Bruhat order.
ParabolicSubset support(const GroupTable& group, ElementId w);
/// Smallest delta-stable subset containing support(w).
ParabolicSubset twisted_support(const TwistedGroup& twisted, ElementId w);
/// Smallest delta-stable superset of s.
ParabolicSubset delta_closure(const DiagramAutomorphism& delta, ParabolicSubset s);

}  // namespace flagstrata
