#include "flagstrata/verify.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <thread>

#include "flagstrata/error.hpp"
#include "flagstrata/words.hpp"

namespace flagstrata {

namespace {

std::string label(const GroupTable& g, ParabolicSubset J, ElementId w) {
  return "J=" + format_subset_braced(J) + " w=" + format_element(g, w);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::vector<ElementId> right_reps(const GroupTable& g, ParabolicSubset J) {
  return enumerate_min_reps(g, J, {}, CosetKind::right_reps);
}

std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

}  // namespace

std::optional<std::uint64_t> closed_form_group_order(char family, int rank) {
  switch (family) {
    case 'A': return factorial(rank + 1);
    case 'B':
    case 'C': return (std::uint64_t{1} << rank) * factorial(rank);
    case 'D': return (std::uint64_t{1} << (rank - 1)) * factorial(rank);
    case 'E':
      if (rank == 6) return 51840;
      if (rank == 7) return 2903040;
      if (rank == 8) return 696729600;
      return std::nullopt;
    case 'F': return rank == 4 ? std::optional<std::uint64_t>(1152) : std::nullopt;
    case 'G': return rank == 2 ? std::optional<std::uint64_t>(12) : std::nullopt;
    default: return std::nullopt;
  }
}

OracleReport check_root_system(const RootSystem& rs) {
  OracleReport rep;
  rep.check_name = "root system invariants";
  const std::size_t np = rs.num_positive();
  if (rs.size() != 2 * np) rep.fail("|Phi|", "2|Phi+|", std::to_string(rs.size()));
  for (RootIndex r = 0; r < rs.size(); ++r) {
    ++rep.instances_checked;
    const Root& root = rs.root(r);
    if (!root.is_positive() && !root.is_negative()) rep.fail("root " + std::to_string(r), "uniform sign", "mixed");
    if (rs.is_positive(r) != root.is_positive()) rep.fail("root " + std::to_string(r), "positives first", "misplaced");
    Root neg = root;
    for (int& c : neg.coords) c = -c;
    if (rs.root(rs.negate(r)) != neg) rep.fail("root " + std::to_string(r), "negation is index shift", "mismatch");
    for (int i = 0; i < rs.rank(); ++i) {
      if (rs.reflect(i, rs.reflect(i, r)) != r) rep.fail("root " + std::to_string(r), "s_i involutive", "not");
    }
  }
  for (int i = 0; i < rs.rank(); ++i) {
    if (rs.reflect(i, rs.simple(i)) != rs.negate(rs.simple(i))) rep.fail("s_i alpha_i", "-alpha_i", "other");
    if (rs.coroot_pairing(rs.simple(i), rs.simple(i)) != 2) rep.fail("<alpha_i, alpha_i^vee>", "2", "other");
    for (int j = 0; j < rs.rank(); ++j) {
      if (rs.coroot_pairing(rs.simple(j), rs.simple(i)) != rs.cartan()(i, j)) {
        rep.fail("pairing " + std::to_string(j + 1) + "," + std::to_string(i + 1), "Cartan entry", "other");
      }
    }
  }
  return rep;
}

OracleReport check_group_order(const GroupTable& g) {
  OracleReport rep;
  rep.check_name = "group order";
  rep.instances_checked = 1;
  const auto& c = g.roots().cartan();
  const auto expected = closed_form_group_order(c.family, c.rank);
  if (!expected) {
    rep.note = "no closed form";
  } else if (*expected != g.size()) {
    rep.fail(c.name(), std::to_string(*expected), std::to_string(g.size()));
  }
  if (g.length(g.longest()) != static_cast<int>(g.roots().num_positive())) {
    rep.fail("l(w0)", std::to_string(g.roots().num_positive()), std::to_string(g.length(g.longest())));
  }
  return rep;
}

OracleReport check_bruhat(const GroupTable& g) {
  OracleReport rep;
  rep.check_name = "bruhat order vs subword oracle";
  const bool oracle_ok = g.length(g.longest()) <= kSubwordLengthGuard;
  if (!oracle_ok) rep.note = "subword oracle skipped (word length guard); closure vs descent only";
  for (ElementId v = 0; v < g.size(); ++v) {
    std::vector<bool> below;
    if (oracle_ok) below = subword_products(g, v);
    for (ElementId u = 0; u < g.size(); ++u) {
      ++rep.instances_checked;
      const bool fast = g.bruhat_leq(u, v);
      const bool descent = bruhat_leq_by_descent(g, u, v);
      if (fast != descent) {
        rep.fail(format_element(g, u) + " <= " + format_element(g, v), "descent:" + yes_no(descent), yes_no(fast));
      }
      if (oracle_ok && fast != below[u]) {
        rep.fail(format_element(g, u) + " <= " + format_element(g, v), "subword:" + yes_no(below[u]), yes_no(fast));
      }
    }
  }
  return rep;
}

OracleReport check_specialization(const TwistedGroup& twisted) {
  OracleReport rep;
  rep.check_name = "closure poset at J=empty equals Bruhat order";
  const GroupTable& g = twisted.group();
  const TwistedAction action(twisted, {});
  const ClosurePoset poset = closure_poset(action);
  if (poset.nodes.size() != g.size()) {
    rep.fail("node count", std::to_string(g.size()), std::to_string(poset.nodes.size()));
    return rep;
  }
  for (std::size_t a = 0; a < g.size(); ++a) {
    if (poset.nodes[a].index_w != a) rep.fail("node order", std::to_string(a), std::to_string(poset.nodes[a].index_w));
    for (std::size_t b = 0; b < g.size(); ++b) {
      ++rep.instances_checked;
      const bool br = g.bruhat_leq(static_cast<ElementId>(a), static_cast<ElementId>(b));
      if (poset.below(a, b) != br) {
        rep.fail(format_element(g, static_cast<ElementId>(a)) + " vs " + format_element(g, static_cast<ElementId>(b)),
                 yes_no(br), yes_no(poset.below(a, b)));
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (ElementId v = 0; v < g.size(); ++v) {
    for (ElementId u : g.lower_covers(v)) covers.emplace_back(u, v);
  }
  std::sort(covers.begin(), covers.end());
  if (covers != poset.hasse) {
    rep.fail("hasse edges", std::to_string(covers.size()) + " Bruhat covers", std::to_string(poset.hasse.size()));
  }
  return rep;
}

OracleReport check_action_axiom(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "twisted action axiom";
  const GroupTable& g = action.group();
  const auto& WJ = action.parabolic();
  const std::uint64_t total = static_cast<std::uint64_t>(WJ.size()) * WJ.size() * g.size();
  constexpr std::uint64_t kBudget = 20'000'000;
  const std::size_t stride = total > kBudget ? static_cast<std::size_t>((total + kBudget - 1) / kBudget) : 1;
  if (stride > 1) rep.note = "sampled every " + std::to_string(stride) + "th y";
  for (ElementId y = 0; y < g.size(); y += static_cast<ElementId>(stride)) {
    for (ElementId x2 : WJ) {
      const ElementId inner = twisted_conjugate(action, x2, y);
      for (ElementId x1 : WJ) {
        ++rep.instances_checked;
        const ElementId lhs = twisted_conjugate(action, g.multiply(x1, x2), y);
        const ElementId rhs = twisted_conjugate(action, x1, inner);
        if (lhs != rhs) {
          rep.fail(label(g, action.J(), y) + " x1=" + format_element(g, x1) + " x2=" + format_element(g, x2),
                   format_element(g, rhs), format_element(g, lhs));
        }
      }
    }
  }
  return rep;
}

OracleReport check_partition(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "class decomposition partitions W";
  const GroupTable& g = action.group();
  std::vector<int> hits(g.size(), 0);
  for (const TwistClass& c : class_decomposition(action)) {
    ++rep.instances_checked;
    if (!std::binary_search(c.members.begin(), c.members.end(), c.base)) {
      rep.fail(label(g, action.J(), c.base), "base in its class", "missing");
    }
    for (ElementId m : c.members) ++hits[m];
  }
  for (ElementId w = 0; w < g.size(); ++w) {
    if (hits[w] != 1) rep.fail(label(g, action.J(), w), "covered once", std::to_string(hits[w]));
  }
  return rep;
}

OracleReport check_min_equivalence(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "Bruhat-minimal = length-minimal in orbits";
  const GroupTable& g = action.group();
  for (const auto& block : action.orbits().blocks) {
    ++rep.instances_checked;
    std::vector<ElementId> bruhat_min;
    for (ElementId v : block) {
      const bool minimal = std::none_of(block.begin(), block.end(), [&](ElementId u) { return u != v && g.bruhat_leq(u, v); });
      if (minimal) bruhat_min.push_back(v);
    }
    const auto& length_min = action.orbit_min(block.front());
    const TwistedOrbit direct = orbit(action, block.front());
    if (direct.members != block) rep.fail(label(g, action.J(), block.front()), "orbit by closure", "differs");
    if (bruhat_min != length_min) {
      rep.fail(label(g, action.J(), block.front()), std::to_string(length_min.size()) + " length-minimal",
               std::to_string(bruhat_min.size()) + " Bruhat-minimal");
    }
  }
  return rep;
}

OracleReport check_stabilizer_type(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "stabilizer type vs subset scan";
  const GroupTable& g = action.group();
  for (ElementId w : right_reps(g, action.J())) {
    ++rep.instances_checked;
    const ParabolicSubset fast = stabilizer_type(action.twisted(), action.J(), w);
    const ParabolicSubset slow = stabilizer_type_oracle(action.twisted(), action.J(), w);
    if (fast != slow) rep.fail(label(g, action.J(), w), format_subset_braced(slow), format_subset_braced(fast));
  }
  return rep;
}

OracleReport check_order_axioms(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "order on W^J: well-defined partial order";
  const GroupTable& g = action.group();
  const auto reps = right_reps(g, action.J());
  const std::size_t n = reps.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      ++rep.instances_checked;
      try {
        leq[a][b] = twisted_leq(action, reps[a], reps[b], Verify::yes);
      } catch (const InternalError& e) {
        rep.fail(label(g, action.J(), reps[a]) + " vs " + format_element(g, reps[b]), "representative-independent",
                 e.what());
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq[a][a]) rep.fail(label(g, action.J(), reps[a]), "reflexive", "not");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b] && leq[b][a]) {
        rep.fail(label(g, action.J(), reps[a]) + " vs " + format_element(g, reps[b]), "antisymmetric", "both ways");
      }
      if (!leq[a][b]) continue;
      const int la = g.length(action.orbit_min(reps[a]).front());
      const int lb = g.length(action.orbit_min(reps[b]).front());
      if (la > lb) rep.fail(label(g, action.J(), reps[a]) + " vs " + format_element(g, reps[b]), "monotone length", "decreases");
      for (std::size_t c = 0; c < n; ++c) {
        if (leq[b][c] && !leq[a][c]) {
          rep.fail(label(g, action.J(), reps[a]) + " < " + format_element(g, reps[b]) + " < " + format_element(g, reps[c]),
                   "transitive", "not");
        }
      }
    }
  }
  return rep;
}

OracleReport check_closure_oracle(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "order vs definition-literal oracle";
  const GroupTable& g = action.group();
  if (g.length(g.longest()) > kSubwordLengthGuard) {
    rep.note = "skipped (word length guard)";
    return rep;
  }
  const auto reps = right_reps(g, action.J());
  const auto oracle = closure_oracle(action.twisted(), action.J());
  if (oracle.size() != reps.size()) {
    rep.fail(format_subset_braced(action.J()), std::to_string(reps.size()) + " reps", std::to_string(oracle.size()));
    return rep;
  }
  for (std::size_t a = 0; a < reps.size(); ++a) {
    for (std::size_t b = 0; b < reps.size(); ++b) {
      ++rep.instances_checked;
      const bool fast = twisted_leq(action, reps[a], reps[b]);
      if (fast != (oracle[a][b] != 0)) {
        rep.fail(label(g, action.J(), reps[a]) + " vs " + format_element(g, reps[b]), yes_no(oracle[a][b]), yes_no(fast));
      }
    }
  }
  return rep;
}

OracleReport check_reduction(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "arrow reduction to w1 v";
  const GroupTable& g = action.group();
  for (ElementId w = 0; w < g.size(); ++w) {
    ++rep.instances_checked;
    Reduction red;
    try {
      red = reduce_to_distinguished(action, w);
    } catch (const InternalError& e) {
      rep.fail(label(g, action.J(), w), "reduction exists", e.what());
      continue;
    }
    ElementId cur = w;
    bool path_ok = true;
    for (const ArrowEdge& e : red.path) {
      const auto next = arrow_step(action, cur, e.j);
      if (!next || *next != e.to) path_ok = false;
      cur = e.to;
    }
    if (!path_ok) rep.fail(label(g, action.J(), w), "valid arrow path", "invalid step");
    if (!is_min_rep(g, red.distinguished, action.J(), Side::right)) rep.fail(label(g, action.J(), w), "w1 in W^J", "not");
    const ParabolicSubset K = stabilizer_type(action.twisted(), action.J(), red.distinguished);
    if (!in_parabolic(g, red.parabolic_part, K)) rep.fail(label(g, action.J(), w), "v in W_K", "not");
    if (g.multiply(red.distinguished, red.parabolic_part) != cur) {
      rep.fail(label(g, action.J(), w), "path ends at w1 v", format_element(g, cur));
    }
  }
  return rep;
}

OracleReport check_strong_conjugacy(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "minimal orbit elements strongly conjugate / cyclic shift";
  const GroupTable& g = action.group();
  const Partition strong = strong_conjugacy_classes(action);
  const Partition shift = cyclic_shift_classes(action);
  for (const auto& block : shift.blocks) {
    for (ElementId u : block) {
      if (!strong.same_block(u, block.front())) {
        rep.fail(label(g, action.J(), u), "cyclic-shift class inside strong class", "escapes");
      }
    }
  }
  for (const auto& block : action.orbits().blocks) {
    ++rep.instances_checked;
    const auto& mins = action.orbit_min(block.front());
    const bool meets_reps = std::any_of(block.begin(), block.end(),
                                        [&](ElementId y) { return is_min_rep(g, y, action.J(), Side::right); });
    for (ElementId v : mins) {
      if (!strong.same_block(v, mins.front())) {
        rep.fail(label(g, action.J(), v), "~ " + format_element(g, mins.front()), "not strongly conjugate");
      }
      if (meets_reps && !shift.same_block(v, mins.front())) {
        rep.fail(label(g, action.J(), v), "cyclic shift of " + format_element(g, mins.front()), "not");
      }
    }
  }
  return rep;
}

OracleReport check_bijection(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "stabilizing sequences biject onto W^J";
  const GroupTable& g = action.group();
  const TwistedGroup& tw = action.twisted();
  const auto reps = right_reps(g, action.J());
  for (ElementId w : reps) {
    ++rep.instances_checked;
    try {
      const TwistedSequence seq = sequence_for(tw, action.J(), w);
      if (sequence_to_label(tw, action.J(), seq) != w) rep.fail(label(g, action.J(), w), "round trip", "differs");
    } catch (const std::exception& e) {
      rep.fail(label(g, action.J(), w), "sequence", e.what());
    }
  }
  const auto all = enumerate_stabilizing_sequences(tw, action.J());
  if (all.size() != reps.size()) {
    rep.fail(format_subset_braced(action.J()), std::to_string(reps.size()) + " sequences", std::to_string(all.size()));
  }
  std::vector<ElementId> labels;
  for (const auto& seq : all) {
    ++rep.instances_checked;
    const ElementId lab = sequence_to_label(tw, action.J(), seq);
    labels.push_back(lab);
    if (sequence_for(tw, action.J(), lab) != seq) rep.fail(label(g, action.J(), lab), "sequence_for(label)", "differs");
  }
  std::sort(labels.begin(), labels.end());
  if (labels != reps) rep.fail(format_subset_braced(action.J()), "labels = W^J", "differ");
  return rep;
}

OracleReport check_radical_roots(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "root inclusions along the sequence";
  const GroupTable& g = action.group();
  for (ElementId w : right_reps(g, action.J())) {
    ++rep.instances_checked;
    const RootCheckReport r = radical_root_check(action.twisted(), action.J(), w);
    if (!r.passed) rep.fail(label(g, action.J(), w), "inclusions hold", r.witnesses.front());
  }
  return rep;
}

OracleReport check_parabolic_restriction(const GroupTable& g, ParabolicSubset J) {
  OracleReport rep;
  rep.check_name = "parabolic restriction Levi identity";
  for (ParabolicSubset K : all_subsets(g.rank())) {
    for (ElementId w : enumerate_min_reps(g, J, {}, CosetKind::left_reps)) {
      ++rep.instances_checked;
      try {
        parabolic_restriction_type(g, J, K, w, Verify::yes);
      } catch (const InternalError& e) {
        rep.fail(label(g, J, w) + " K=" + format_subset_braced(K), "Phi_J1 = Phi_J cap w1 Phi_K", e.what());
      }
    }
  }
  return rep;
}

OracleReport check_irreducibility(const TwistedAction& action) {
  OracleReport rep;
  rep.check_name = "irreducibility criterion vs subgroup-containment oracle";
  const GroupTable& g = action.group();
  const bool full = action.J() == ParabolicSubset::full(g.rank());
  for (ElementId w : enumerate_min_reps(g, action.J(), {}, CosetKind::left_reps)) {
    ++rep.instances_checked;
    const auto fast = is_irreducible(action, w);
    if (full) {
      if (fast) rep.fail(label(g, action.J(), w), "not applicable", yes_no(*fast));
      continue;
    }
    const bool slow = irreducibility_oracle(action.twisted(), action.J(), w);
    if (!fast || *fast != slow) rep.fail(label(g, action.J(), w), yes_no(slow), fast ? yes_no(*fast) : "n/a");
  }
  return rep;
}

std::vector<OracleReport> check_all_for_subset(const TwistedAction& action) {
  std::vector<OracleReport> out;
  out.push_back(check_action_axiom(action));
  out.push_back(check_partition(action));
  out.push_back(check_min_equivalence(action));
  out.push_back(check_stabilizer_type(action));
  out.push_back(check_order_axioms(action));
  out.push_back(check_closure_oracle(action));
  out.push_back(check_reduction(action));
  out.push_back(check_strong_conjugacy(action));
  out.push_back(check_bijection(action));
  out.push_back(check_radical_roots(action));
  out.push_back(check_parabolic_restriction(action.group(), action.J()));
  out.push_back(check_irreducibility(action));
  return out;
}

std::vector<OracleReport> run_verification(const TwistedGroup& twisted, const VerifyOptions& options) {
  const GroupTable& g = twisted.group();
  std::vector<OracleReport> out;
  out.push_back(check_root_system(g.roots()));
  out.push_back(check_group_order(g));
  out.push_back(check_bruhat(g));
  out.push_back(check_specialization(twisted));

  const auto subsets = all_subsets(g.rank());
  std::vector<std::vector<OracleReport>> per_subset(subsets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < subsets.size(); k = next++) {
      const TwistedAction action(twisted, subsets[k]);
      per_subset[k] = check_all_for_subset(action);
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.parallelism, static_cast<unsigned>(subsets.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Merge by check name in the fixed check order, subsets in bitmask order.
  for (std::size_t c = 0; c < per_subset.front().size(); ++c) {
    OracleReport merged;
    merged.check_name = per_subset.front()[c].check_name;
    for (const auto& reports : per_subset) {
      const OracleReport& r = reports[c];
      merged.instances_checked += r.instances_checked;
      merged.failures.insert(merged.failures.end(), r.failures.begin(), r.failures.end());
      if (!r.note.empty() && merged.note.find(r.note) == std::string::npos) {
        merged.note += (merged.note.empty() ? "" : "; ") + r.note;
      }
    }
    out.push_back(std::move(merged));
  }
  return out;
}

}  // namespace flagstrata
