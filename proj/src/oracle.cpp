#include "flagstrata/oracle.hpp"

#include <algorithm>
#include <set>

#include "flagstrata/error.hpp"

namespace flagstrata {

namespace {

// W_J by closure under right multiplication by generators.
std::vector<ElementId> subgroup(const GroupTable& g, ParabolicSubset J) {
  std::set<ElementId> seen{g.identity()};
  std::vector<ElementId> queue{g.identity()};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (int j : J.indices()) {
      const ElementId next = g.multiply(queue[head], g.generator(j));
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return {seen.begin(), seen.end()};
}

// w has minimal length in w W_J, checked against every coset element.
bool minimal_in_right_coset(const GroupTable& g, ElementId w, const std::vector<ElementId>& WJ) {
  return std::all_of(WJ.begin(), WJ.end(), [&](ElementId x) { return g.length(g.multiply(w, x)) >= g.length(w); });
}

bool minimal_in_left_coset(const GroupTable& g, ElementId w, const std::vector<ElementId>& WJ) {
  return std::all_of(WJ.begin(), WJ.end(), [&](ElementId x) { return g.length(g.multiply(x, w)) >= g.length(w); });
}

// Ad(w)(K) = delta(K) as sets of simple roots.
bool adjoint_matches(const TwistedGroup& tw, ElementId w, ParabolicSubset K) {
  const GroupTable& g = tw.group();
  const RootSystem& rs = g.roots();
  ParabolicSubset image;
  for (int k : K.indices()) {
    const RootIndex r = g.apply(w, rs.simple(k));
    if (!rs.is_simple(r)) return false;
    image.insert(static_cast<int>(r));
  }
  return image == tw.automorphism()(K);
}

ParabolicSubset adjoint_simple_image(const GroupTable& g, ElementId w, ParabolicSubset K) {
  const RootSystem& rs = g.roots();
  ParabolicSubset out;
  for (int k : K.indices()) {
    const RootIndex r = g.apply(w, rs.simple(k));
    if (rs.is_simple(r)) out.insert(static_cast<int>(r));
  }
  return out;
}

std::vector<ElementId> literal_orbit_min(const TwistedGroup& tw, const std::vector<ElementId>& WJ, ElementId w) {
  const GroupTable& g = tw.group();
  std::set<ElementId> orbit;
  for (ElementId x : WJ) orbit.insert(g.multiply(g.multiply(tw.delta(x), w), g.inverse(x)));
  int best = g.length(w);
  for (ElementId y : orbit) best = std::min(best, g.length(y));
  std::vector<ElementId> out;
  for (ElementId y : orbit) {
    if (g.length(y) == best) out.push_back(y);
  }
  return out;
}

}  // namespace

std::vector<bool> subword_products(const GroupTable& g, ElementId v) {
  const auto& word = g.word(v);
  if (static_cast<int>(word.size()) > kSubwordLengthGuard) {
    throw LimitError("subword oracle refuses words longer than " + std::to_string(kSubwordLengthGuard));
  }
  // Products of all 2^l subwords; each prefix step keeps or drops one letter.
  std::vector<bool> mask(g.size(), false);
  std::vector<ElementId> current{g.identity()};
  mask[g.identity()] = true;
  for (int letter : word) {
    std::vector<ElementId> next = current;
    for (ElementId u : current) next.push_back(g.multiply(u, g.generator(letter)));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    current = std::move(next);
  }
  std::fill(mask.begin(), mask.end(), false);
  for (ElementId u : current) mask[u] = true;
  return mask;
}

bool bruhat_oracle(const GroupTable& g, ElementId u, ElementId v) { return subword_products(g, v)[u]; }

ParabolicSubset stabilizer_type_oracle(const TwistedGroup& twisted, ParabolicSubset J, ElementId w) {
  if (J.size() > 12) throw LimitError("stabilizer oracle refuses |J| > 12");
  std::vector<ParabolicSubset> valid;
  for (ParabolicSubset K : subsets_of(J)) {
    if (adjoint_matches(twisted, w, K)) valid.push_back(K);
  }
  ParabolicSubset best;
  for (ParabolicSubset a : valid) {
    for (ParabolicSubset b : valid) {
      if (!adjoint_matches(twisted, w, a | b)) throw InternalError("valid subsets are not closed under union");
    }
    if (a.size() > best.size()) best = a;
  }
  for (ParabolicSubset a : valid) {
    if (!a.is_subset_of(best)) throw InternalError("no unique maximal valid subset");
  }
  return best;
}

std::vector<TwistedSequence> enumerate_stabilizing_sequences(const TwistedGroup& twisted, ParabolicSubset J) {
  const GroupTable& g = twisted.group();
  const auto& delta = twisted.automorphism();
  std::vector<TwistedSequence> out;
  const std::size_t depth_cap = static_cast<std::size_t>(J.size()) + 3;

  // Candidates for w_n: double coset minima for (J_n, delta(J_n)), optionally
  // restricted to W_{J_n} prev W_{delta(J_prev)}.
  auto candidates = [&](ParabolicSubset Jn, const SequenceStep* prev) {
    const auto left = subgroup(g, Jn);
    const auto right = subgroup(g, delta(Jn));
    std::set<ElementId> allowed;
    if (prev) {
      const auto prev_right = subgroup(g, delta(prev->J));
      for (ElementId a : left) {
        for (ElementId b : prev_right) allowed.insert(g.multiply(g.multiply(a, prev->w), b));
      }
    }
    std::vector<ElementId> out_c;
    for (ElementId w = 0; w < g.size(); ++w) {
      if (prev && !allowed.count(w)) continue;
      if (minimal_in_left_coset(g, w, left) && minimal_in_right_coset(g, w, right)) out_c.push_back(w);
    }
    return out_c;
  };

  std::vector<SequenceStep> path;
  auto recurse = [&](auto&& self) -> void {
    const SequenceStep& last = path.back();
    const ParabolicSubset next_J = last.J & adjoint_simple_image(g, last.w, delta(last.J));
    for (ElementId next_w : candidates(next_J, &last)) {
      if (next_J == last.J && next_w == last.w) {
        TwistedSequence seq;
        seq.steps = path;
        seq.stable_J = last.J;
        seq.stable_w = last.w;
        out.push_back(std::move(seq));
        continue;
      }
      if (path.size() >= depth_cap) throw InternalError("sequence enumeration did not stabilize");
      path.push_back({next_J, next_w});
      self(self);
      path.pop_back();
    }
  };
  for (ElementId w0 : candidates(J, nullptr)) {
    path.assign(1, {J, w0});
    recurse(recurse);
  }
  return out;
}

std::vector<std::vector<char>> closure_oracle(const TwistedGroup& twisted, ParabolicSubset J) {
  const GroupTable& g = twisted.group();
  const auto WJ = subgroup(g, J);
  std::vector<ElementId> reps;
  for (ElementId w = 0; w < g.size(); ++w) {
    if (minimal_in_right_coset(g, w, WJ)) reps.push_back(w);
  }
  std::vector<std::vector<ElementId>> mins;
  for (ElementId w : reps) mins.push_back(literal_orbit_min(twisted, WJ, w));

  const std::size_t n = reps.size();
  std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
  for (std::size_t b = 0; b < n; ++b) {
    // "for any v' in the upper orbit minimum there is some v below it"
    std::vector<std::vector<bool>> lower_sets;
    for (ElementId v2 : mins[b]) lower_sets.push_back(subword_products(g, v2));
    for (std::size_t a = 0; a < n; ++a) {
      bool all = true;
      for (const auto& below : lower_sets) {
        bool some = false;
        for (ElementId v : mins[a]) some = some || below[v];
        all = all && some;
      }
      leq[a][b] = all ? 1 : 0;
    }
  }
  return leq;
}

bool irreducibility_oracle(const TwistedGroup& twisted, ParabolicSubset J, ElementId w) {
  const GroupTable& g = twisted.group();
  const int n = g.rank();
  const ElementId w_inv = g.inverse(w);
  const ParabolicSubset K = stabilizer_type_oracle(twisted, J, w_inv);
  std::vector<ElementId> coset;
  for (ElementId x : subgroup(g, K)) coset.push_back(g.multiply(w, x));
  const ParabolicSubset all = ParabolicSubset::full(n);
  for (ParabolicSubset Jp : all_subsets(n)) {
    if (Jp == all || twisted.automorphism()(Jp) != Jp) continue;
    const auto WJp = subgroup(g, Jp);
    const bool contained = std::all_of(coset.begin(), coset.end(), [&](ElementId y) {
      return std::binary_search(WJp.begin(), WJp.end(), y);
    });
    if (contained) return false;
  }
  return true;
}

}  // namespace flagstrata
