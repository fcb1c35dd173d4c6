#pragma once

// Stabilizing sequences and their bijection with W^J, the partial order on
// W^J governing closures of G_F-stable pieces, the closure poset of the
// partition of a partial flag variety into pieces indexed by ^J W, the
// irreducibility criterion, and the parabolic-restriction type.
//
// Pieces are labeled by ^J W. Everything phrased on the W^J side is applied
// to the inverse of the label, and both are stored on each record.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flagstrata/twist.hpp"

namespace flagstrata {

struct SequenceStep {
  ParabolicSubset J;
  ElementId w;
  friend bool operator==(const SequenceStep&, const SequenceStep&) = default;
};

/// (J_n, w_n) up to and including the first pair that repeats.
struct TwistedSequence {
  std::vector<SequenceStep> steps;
  ParabolicSubset stable_J;
  ElementId stable_w = 0;
  friend bool operator==(const TwistedSequence&, const TwistedSequence&) = default;
};

/// J_0 = J, w_n = min(w^{-1} W_{delta(J_n)}), J_{n+1} = J_n cap Ad(w_n) delta(J_n).
/// Requires w in W^J.
TwistedSequence sequence_for(const TwistedGroup& twisted, ParabolicSubset J, ElementId w);

/// Empty when the sequence satisfies the four defining conditions and is
/// stabilized; otherwise a description of the first violation.
std::optional<std::string> sequence_violation(const TwistedGroup& twisted, ParabolicSubset J,
                                              const TwistedSequence& seq);

/// Inverse of the stable w_n. Throws PreconditionError on an invalid sequence.
ElementId sequence_to_label(const TwistedGroup& twisted, ParabolicSubset J, const TwistedSequence& seq);

/// w <=_{J,delta} w2 for w in W^J. When w2 is in W^J the minimal orbit
/// elements of both sides are compared; otherwise w2 itself is the upper
/// bound. Verify::yes checks every choice of representative for w2.
bool twisted_leq(const TwistedAction& action, ElementId w, ElementId w2, Verify verify = Verify::no);

struct PieceRecord {
  ElementId index_w;   // in ^J W
  ElementId inv_w;     // in W^J
  ParabolicSubset stabilizer_set;
  std::vector<ElementId> orbit_min;
  std::optional<bool> irreducible;  // empty when J = I
};

struct ClosurePoset {
  std::vector<PieceRecord> nodes;                        // global order of index_w
  std::vector<std::vector<char>> leq;                    // leq[a][b]: node a lies in closure of b
  std::vector<std::pair<std::size_t, std::size_t>> hasse;  // (smaller, larger), sorted

  bool below(std::size_t a, std::size_t b) const { return leq[a][b] != 0; }
};

ClosurePoset closure_poset(const TwistedAction& action);

/// Transitive reduction of a partial order given as a relation matrix.
std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<std::vector<char>>& leq);

/// Labels w2 in ^J W with w2^{-1} <=_{J,delta} w^{-1}, for arbitrary w in W.
std::vector<ElementId> piece_closure(const TwistedAction& action, ElementId w);

/// twisted_support(w) == I, for w in ^J W. Empty when J = I.
std::optional<bool> is_irreducible(const TwistedAction& action, ElementId w);

/// J cap Ad(w1) K with w1 = min(w W_K), for w in ^J W. With Verify::yes the
/// Levi root identity Phi_{J1} = Phi_J cap w1 Phi_K is asserted.
ParabolicSubset parabolic_restriction_type(const GroupTable& group, ParabolicSubset J, ParabolicSubset K,
                                           ElementId w, Verify verify = Verify::no);

struct RootCheckReport {
  bool passed = true;
  std::vector<std::string> witnesses;
};

/// Root-level inclusions along the stabilizing sequence of w in W^J:
///   w(Phi+_J \ Phi_{J_1}) in Phi+ \ Phi_{delta(J)},
///   w(Phi+_{J_i} \ Phi_{J_{i+1}}) in Phi+_{delta(J_{i-1})} \ Phi_{delta(J_i)}  (i >= 1).
RootCheckReport radical_root_check(const TwistedGroup& twisted, ParabolicSubset J, ElementId w);

}  // namespace flagstrata
