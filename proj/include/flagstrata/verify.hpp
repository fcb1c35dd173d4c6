#pragma once

// Agreement checks between the fast paths and the brute-force oracles, plus
// the structural invariants of each module. Used by the CLI's verify
// command and by the acceptance suite.

#include <cstdint>
#include <optional>
#include <vector>

#include "flagstrata/oracle.hpp"

namespace flagstrata {

/// |W| from the closed-form product formula for the type; nullopt if unknown.
std::optional<std::uint64_t> closed_form_group_order(char family, int rank);

OracleReport check_root_system(const RootSystem& rs);
OracleReport check_group_order(const GroupTable& g);
/// Closure, descent recursion and subword oracle on all pairs.
OracleReport check_bruhat(const GroupTable& g);
/// J = empty: closure poset relation and Hasse edges equal Bruhat order and covers.
OracleReport check_specialization(const TwistedGroup& twisted);

OracleReport check_action_axiom(const TwistedAction& action);
OracleReport check_partition(const TwistedAction& action);
OracleReport check_min_equivalence(const TwistedAction& action);
OracleReport check_stabilizer_type(const TwistedAction& action);
OracleReport check_order_axioms(const TwistedAction& action);
OracleReport check_closure_oracle(const TwistedAction& action);
OracleReport check_reduction(const TwistedAction& action);
OracleReport check_strong_conjugacy(const TwistedAction& action);
OracleReport check_bijection(const TwistedAction& action);
OracleReport check_radical_roots(const TwistedAction& action);
OracleReport check_parabolic_restriction(const GroupTable& g, ParabolicSubset J);
OracleReport check_irreducibility(const TwistedAction& action);

/// Every per-J check for one action, in a fixed order.
std::vector<OracleReport> check_all_for_subset(const TwistedAction& action);

struct VerifyOptions {
  unsigned parallelism = 1;
};

/// Global checks, then the per-J checks over every J in I, merged by check
/// name in a fixed order. Per-J jobs run on up to `parallelism` threads.
std::vector<OracleReport> run_verification(const TwistedGroup& twisted, const VerifyOptions& options = {});

}  // namespace flagstrata
