#include "flagstrata/pieces.hpp"

#include <algorithm>
#include <cstdint>

#include "flagstrata/error.hpp"

namespace flagstrata {

namespace {

std::string coords_text(const Root& r) {
  std::string out = "(";
  for (std::size_t i = 0; i < r.coords.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(r.coords[i]);
  }
  return out + ")";
}

// w in W_A u W_B, by scanning a over W_A.
bool in_double_coset(const GroupTable& g, ElementId w, ParabolicSubset A, ElementId u, ParabolicSubset B) {
  const ElementId target = min_coset_rep(g, u, B, Side::right);
  for (ElementId a : parabolic_elements(g, A)) {
    if (min_coset_rep(g, g.multiply(g.inverse(a), w), B, Side::right) == target) return true;
  }
  return false;
}

bool any_below(const GroupTable& g, const std::vector<ElementId>& lows, ElementId high) {
  return std::any_of(lows.begin(), lows.end(), [&](ElementId v) { return g.bruhat_leq(v, high); });
}

}  // namespace

TwistedSequence sequence_for(const TwistedGroup& twisted, ParabolicSubset J, ElementId w) {
  const GroupTable& g = twisted.group();
  const auto& delta = twisted.automorphism();
  if (!is_min_rep(g, w, J, Side::right)) throw PreconditionError("element is not in W^J");
  const ElementId w_inv = g.inverse(w);

  TwistedSequence seq;
  ParabolicSubset current = J;
  while (true) {
    const ElementId wn = min_coset_rep(g, w_inv, delta(current), Side::right);
    seq.steps.push_back({current, wn});
    const ParabolicSubset next = current & adjoint_image(g, wn, delta(current));
    if (next == current) break;
    if (static_cast<int>(seq.steps.size()) > J.size() + 1) {
      throw InternalError("stabilizing sequence did not stabilize within |J|+1 steps");
    }
    current = next;
  }
  seq.stable_J = seq.steps.back().J;
  seq.stable_w = seq.steps.back().w;

  if (seq.stable_w != w_inv) throw InternalError("stable term of the sequence is not w^{-1}");
  if (seq.stable_J != stabilizer_type(twisted, J, w)) {
    throw InternalError("stable subset of the sequence differs from the stabilizer type");
  }
  if (auto bad = sequence_violation(twisted, J, seq)) throw InternalError("generated sequence invalid: " + *bad);
  return seq;
}

std::optional<std::string> sequence_violation(const TwistedGroup& twisted, ParabolicSubset J,
                                              const TwistedSequence& seq) {
  const GroupTable& g = twisted.group();
  const auto& delta = twisted.automorphism();
  const auto& s = seq.steps;
  if (s.empty()) return "empty sequence";
  if (s[0].J != J) return "(a) J_0 != J";
  for (std::size_t n = 0; n < s.size(); ++n) {
    const std::string at = " at n=" + std::to_string(n);
    if (s[n].w >= g.size()) return "element out of range" + at;
    if (!is_min_rep(g, s[n].w, s[n].J, Side::left) || !is_min_rep(g, s[n].w, delta(s[n].J), Side::right)) {
      return "(c) w_n not a double coset minimum" + at;
    }
    if (n == 0) continue;
    const auto& prev = s[n - 1];
    if (s[n].J != (prev.J & adjoint_image(g, prev.w, delta(prev.J)))) return "(b) J_n mismatch" + at;
    if (!in_double_coset(g, s[n].w, s[n].J, prev.w, delta(prev.J))) return "(d) w_n outside double coset" + at;
    if (s[n].J == prev.J) return "repeated pair before the end" + at;
  }
  const auto& last = s.back();
  if ((last.J & adjoint_image(g, last.w, delta(last.J))) != last.J) return "sequence is not stabilized";
  if (seq.stable_J != last.J || seq.stable_w != last.w) return "stable fields disagree with the last step";
  return std::nullopt;
}

ElementId sequence_to_label(const TwistedGroup& twisted, ParabolicSubset J, const TwistedSequence& seq) {
  if (auto bad = sequence_violation(twisted, J, seq)) throw PreconditionError("invalid sequence: " + *bad);
  const GroupTable& g = twisted.group();
  const ElementId label = g.inverse(seq.stable_w);
  if (!is_min_rep(g, label, J, Side::right)) throw InternalError("sequence label is not in W^J");
  return label;
}

bool twisted_leq(const TwistedAction& action, ElementId w, ElementId w2, Verify verify) {
  const GroupTable& g = action.group();
  if (!is_min_rep(g, w, action.J(), Side::right)) throw PreconditionError("left argument is not in W^J");
  const auto& lows = action.orbit_min(w);
  if (!is_min_rep(g, w2, action.J(), Side::right)) return any_below(g, lows, w2);

  const auto& highs = action.orbit_min(w2);
  const bool result = any_below(g, lows, highs.front());
  if (verify == Verify::yes) {
    for (ElementId v : highs) {
      if (any_below(g, lows, v) != result) {
        throw InternalError("order depends on the choice of minimal representative");
      }
    }
  }
  return result;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<std::vector<char>>& leq) {
  const std::size_t n = leq.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<std::uint64_t>> strict_below(n, std::vector<std::uint64_t>(words, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq[a][b]) strict_below[b][a / 64] |= std::uint64_t{1} << (a % 64);
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t b = 0; b < n; ++b) {
    std::vector<std::uint64_t> shadow(words, 0);
    for (std::size_t c = 0; c < n; ++c) {
      if ((strict_below[b][c / 64] >> (c % 64)) & 1u) {
        for (std::size_t k = 0; k < words; ++k) shadow[k] |= strict_below[c][k];
      }
    }
    for (std::size_t a = 0; a < n; ++a) {
      const bool below = (strict_below[b][a / 64] >> (a % 64)) & 1u;
      const bool shadowed = (shadow[a / 64] >> (a % 64)) & 1u;
      if (below && !shadowed) edges.emplace_back(a, b);
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

ClosurePoset closure_poset(const TwistedAction& action) {
  const GroupTable& g = action.group();
  ClosurePoset poset;
  for (ElementId label : enumerate_min_reps(g, action.J(), {}, CosetKind::left_reps)) {
    PieceRecord rec;
    rec.index_w = label;
    rec.inv_w = g.inverse(label);
    rec.stabilizer_set = stabilizer_type(action.twisted(), action.J(), rec.inv_w);
    rec.orbit_min = action.orbit_min(rec.inv_w);
    rec.irreducible = is_irreducible(action, label);
    poset.nodes.push_back(std::move(rec));
  }
  const std::size_t n = poset.nodes.size();
  poset.leq.assign(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      poset.leq[a][b] = twisted_leq(action, poset.nodes[a].inv_w, poset.nodes[b].inv_w) ? 1 : 0;
    }
  }
  poset.hasse = hasse_edges(poset.leq);
  return poset;
}

std::vector<ElementId> piece_closure(const TwistedAction& action, ElementId w) {
  const GroupTable& g = action.group();
  const ElementId top = g.inverse(w);
  std::vector<ElementId> out;
  for (ElementId label : enumerate_min_reps(g, action.J(), {}, CosetKind::left_reps)) {
    if (any_below(g, action.orbit_min(g.inverse(label)), top)) out.push_back(label);
  }
  return out;
}

std::optional<bool> is_irreducible(const TwistedAction& action, ElementId w) {
  const GroupTable& g = action.group();
  if (!is_min_rep(g, w, action.J(), Side::left)) throw PreconditionError("element is not in ^J W");
  const ParabolicSubset all = ParabolicSubset::full(g.rank());
  if (action.J() == all) return std::nullopt;
  return twisted_support(action.twisted(), w) == all;
}

ParabolicSubset parabolic_restriction_type(const GroupTable& group, ParabolicSubset J, ParabolicSubset K,
                                           ElementId w, Verify verify) {
  if (!is_min_rep(group, w, J, Side::left)) throw PreconditionError("element is not in ^J W");
  const ElementId w1 = min_coset_rep(group, w, K, Side::right);
  const ParabolicSubset J1 = J & adjoint_image(group, w1, K);
  if (verify == Verify::yes) {
    const RootSystem& rs = group.roots();
    const auto phi_J1 = levi_roots(rs, J1);
    const auto phi_J = levi_roots(rs, J);
    const auto phi_K = levi_roots(rs, K);
    std::vector<bool> image_K(rs.size(), false);
    for (std::size_t r = 0; r < rs.size(); ++r) {
      if (phi_K[r]) image_K[group.apply(w1, static_cast<RootIndex>(r))] = true;
    }
    for (std::size_t r = 0; r < rs.size(); ++r) {
      if (phi_J1[r] != (phi_J[r] && image_K[r])) throw InternalError("Levi root identity fails");
    }
  }
  return J1;
}

RootCheckReport radical_root_check(const TwistedGroup& twisted, ParabolicSubset J, ElementId w) {
  const GroupTable& g = twisted.group();
  const RootSystem& rs = g.roots();
  const auto& delta = twisted.automorphism();
  const TwistedSequence seq = sequence_for(twisted, J, w);
  auto J_at = [&](std::size_t n) { return n < seq.steps.size() ? seq.steps[n].J : seq.stable_J; };

  RootCheckReport report;
  // (source, excluded) -> (target positive part, target excluded)
  auto check = [&](std::size_t i, ParabolicSubset source, ParabolicSubset excluded, std::optional<ParabolicSubset> within,
                   ParabolicSubset forbidden) {
    for (RootIndex r = 0; r < rs.num_positive(); ++r) {
      const ParabolicSubset supp = rs.root(r).support();
      if (!supp.is_subset_of(source) || supp.is_subset_of(excluded)) continue;
      const RootIndex img = g.apply(w, r);
      const ParabolicSubset img_supp = rs.root(img).support();
      const bool ok = rs.is_positive(img) && (!within || img_supp.is_subset_of(*within)) &&
                      !img_supp.is_subset_of(forbidden);
      if (!ok) {
        report.passed = false;
        report.witnesses.push_back("i=" + std::to_string(i) + ": " + coords_text(rs.root(r)) + " -> " +
                                   coords_text(rs.root(img)));
      }
    }
  };
  check(0, J, J_at(1), std::nullopt, delta(J));
  for (std::size_t i = 1; i <= seq.steps.size(); ++i) {
    check(i, J_at(i), J_at(i + 1), delta(J_at(i - 1)), delta(J_at(i)));
  }
  return report;
}

}  // namespace flagstrata
