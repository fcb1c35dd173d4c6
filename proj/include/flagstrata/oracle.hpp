#pragma once

// Brute-force reference implementations. Each one follows its definition
// literally (quantifiers over explicit sets, no shared caches) and relies
// only on the group table's multiplication, inverse and length.

#include <string>
#include <vector>

#include "flagstrata/pieces.hpp"

namespace flagstrata {

struct OracleFailure {
  std::string input;
  std::string expected;
  std::string got;
};

struct OracleReport {
  std::string check_name;
  std::size_t instances_checked = 0;
  std::vector<OracleFailure> failures;
  std::string note;  // e.g. why part of the check was skipped

  bool passed() const { return failures.empty(); }
  void fail(std::string input, std::string expected, std::string got) {
    failures.push_back({std::move(input), std::move(expected), std::move(got)});
  }
};

/// Reduced words longer than this are refused by the subword oracle.
inline constexpr int kSubwordLengthGuard = 20;

/// u <= v iff some subword of a fixed reduced word of v multiplies to u.
bool bruhat_oracle(const GroupTable& g, ElementId u, ElementId v);
/// All subword products of the canonical word of v, as a membership mask.
std::vector<bool> subword_products(const GroupTable& g, ElementId v);

/// Scans every subset of J; asserts that valid subsets are closed under
/// union before returning the maximal one.
ParabolicSubset stabilizer_type_oracle(const TwistedGroup& twisted, ParabolicSubset J, ElementId w);

/// Every sequence satisfying the four defining conditions, enumerated to
/// stabilization without using the minimal-coset recipe.
std::vector<TwistedSequence> enumerate_stabilizing_sequences(const TwistedGroup& twisted, ParabolicSubset J);

/// The order on W^J (rows/columns in global order of W^J), evaluated with
/// explicit quantifiers over full minimal-orbit sets and the subword oracle.
std::vector<std::vector<char>> closure_oracle(const TwistedGroup& twisted, ParabolicSubset J);

/// For w in ^J W: irreducible iff w W_K (K = stabilizer type of w^{-1}) lies
/// in no W_{J'} with J' a delta-stable proper subset of I.
bool irreducibility_oracle(const TwistedGroup& twisted, ParabolicSubset J, ElementId w);

}  // namespace flagstrata
