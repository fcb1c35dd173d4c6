#include "flagstrata/twist.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <limits>
#include <map>
#include <numeric>

#include "flagstrata/error.hpp"

namespace flagstrata {

namespace {

std::string join_one_based(const std::vector<int>& perm) {
  std::string out;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(perm[i] + 1);
  }
  return out;
}

void check_cartan_preserving(const CartanDatum& cartan, const std::vector<int>& perm) {
  const int n = cartan.rank;
  if (static_cast<int>(perm.size()) != n) {
    throw PreconditionError("automorphism has " + std::to_string(perm.size()) + " entries, rank is " +
                            std::to_string(n));
  }
  std::vector<bool> hit(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || hit[p]) throw PreconditionError("automorphism is not a permutation of I");
    hit[p] = true;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (cartan(perm[i], perm[j]) != cartan(i, j)) {
        throw PreconditionError("automorphism does not preserve the Cartan matrix (a(" +
                                std::to_string(perm[i] + 1) + "," + std::to_string(perm[j] + 1) +
                                ") != a(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "))");
      }
    }
  }
}

std::vector<RootIndex> relabel_roots(const RootSystem& rs, const std::vector<int>& perm) {
  std::map<std::vector<int>, RootIndex> index;
  for (std::size_t r = 0; r < rs.size(); ++r) index.emplace(rs.root(static_cast<RootIndex>(r)).coords, static_cast<RootIndex>(r));
  std::vector<RootIndex> out(rs.size());
  for (std::size_t r = 0; r < rs.size(); ++r) {
    const auto& c = rs.root(static_cast<RootIndex>(r)).coords;
    std::vector<int> img(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) img[perm[i]] = c[i];
    auto it = index.find(img);
    if (it == index.end()) throw PreconditionError("automorphism does not map roots to roots");
    out[r] = it->second;
  }
  return out;
}

Partition make_partition(std::size_t n, const std::vector<std::size_t>& label) {
  Partition p;
  p.block_of.assign(n, 0);
  std::map<std::size_t, std::size_t> renumber;
  for (std::size_t w = 0; w < n; ++w) {
    auto [it, inserted] = renumber.emplace(label[w], p.blocks.size());
    if (inserted) p.blocks.emplace_back();
    p.blocks[it->second].push_back(static_cast<ElementId>(w));
    p.block_of[w] = it->second;
  }
  return p;
}

std::vector<ElementId> minimal_length(const GroupTable& g, const std::vector<ElementId>& members) {
  int best = std::numeric_limits<int>::max();
  for (ElementId m : members) best = std::min(best, g.length(m));
  std::vector<ElementId> out;
  for (ElementId m : members) {
    if (g.length(m) == best) out.push_back(m);
  }
  return out;
}

bool elementary_step(const TwistedAction& action, ElementId w, ElementId x, ElementId& out) {
  const GroupTable& g = action.group();
  const ElementId dx = action.twisted().delta(x);
  const ElementId dxw = g.multiply(dx, w);
  const ElementId wxi = g.multiply(w, g.inverse(x));
  const ElementId w2 = g.multiply(dxw, g.inverse(x));
  if (g.length(w2) != g.length(w)) return false;
  const int additive = g.length(x) + g.length(w);
  if (g.length(dxw) != additive && g.length(wxi) != additive) return false;
  out = w2;
  return true;
}

}  // namespace

DiagramAutomorphism DiagramAutomorphism::identity(int rank) {
  DiagramAutomorphism d;
  d.perm_.resize(rank);
  std::iota(d.perm_.begin(), d.perm_.end(), 0);
  d.name_ = "id";
  return d;
}

DiagramAutomorphism::DiagramAutomorphism(const CartanDatum& cartan, std::vector<int> perm, std::string name)
    : perm_(std::move(perm)), name_(std::move(name)) {
  check_cartan_preserving(cartan, perm_);
  if (name_.empty()) name_ = is_identity() ? "id" : join_one_based(perm_);
}

ParabolicSubset DiagramAutomorphism::operator()(ParabolicSubset s) const {
  ParabolicSubset out;
  for (int i : s.indices()) out.insert(perm_[i]);
  return out;
}

bool DiagramAutomorphism::is_identity() const {
  for (int i = 0; i < rank(); ++i) {
    if (perm_[i] != i) return false;
  }
  return true;
}

DiagramAutomorphism DiagramAutomorphism::inverse() const {
  DiagramAutomorphism d;
  d.perm_.resize(perm_.size());
  for (int i = 0; i < rank(); ++i) d.perm_[perm_[i]] = i;
  d.name_ = d.is_identity() ? "id" : join_one_based(d.perm_);
  return d;
}

DiagramAutomorphism parse_automorphism(std::string_view text, const CartanDatum& cartan) {
  const int n = cartan.rank;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const std::string name(text);
  if (text == "id") return DiagramAutomorphism::identity(n);
  if (text == "flip") {
    if (cartan.family == 'A' && n >= 2) {
      for (int i = 0; i < n; ++i) perm[i] = n - 1 - i;
    } else if (cartan.family == 'D') {
      std::swap(perm[n - 2], perm[n - 1]);
    } else if (cartan.family == 'E' && n == 6) {
      perm = {5, 1, 4, 3, 2, 0};
    } else {
      throw PreconditionError("no 'flip' automorphism for type " + cartan.name());
    }
    return DiagramAutomorphism(cartan, perm, name);
  }
  if (text == "tri" || text == "tri2") {
    if (cartan.family != 'D' || n != 4) {
      throw PreconditionError("triality is only defined for D4");
    }
    // 1 -> 3 -> 4 -> 1
    perm = {2, 1, 3, 0};
    DiagramAutomorphism tri(cartan, perm, "tri");
    if (text == "tri") return tri;
    return DiagramAutomorphism(cartan, tri.inverse().perm(), "tri2");
  }
  perm.clear();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const auto token = text.substr(pos, comma - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw PreconditionError("bad automorphism '" + name + "'");
    }
    perm.push_back(value - 1);
    pos = comma + 1;
  }
  return DiagramAutomorphism(cartan, perm);
}

std::vector<DiagramAutomorphism> named_automorphisms(const CartanDatum& cartan) {
  std::vector<DiagramAutomorphism> out{DiagramAutomorphism::identity(cartan.rank)};
  const bool has_flip = (cartan.family == 'A' && cartan.rank >= 2) || cartan.family == 'D' ||
                        (cartan.family == 'E' && cartan.rank == 6);
  if (has_flip) out.push_back(parse_automorphism("flip", cartan));
  if (cartan.family == 'D' && cartan.rank == 4) {
    out.push_back(parse_automorphism("tri", cartan));
    out.push_back(parse_automorphism("tri2", cartan));
  }
  return out;
}

TwistedGroup::TwistedGroup(const GroupTable& group, DiagramAutomorphism delta)
    : group_(&group), delta_(std::move(delta)) {
  const RootSystem& rs = group.roots();
  check_cartan_preserving(rs.cartan(), delta_.perm());
  root_map_ = relabel_roots(rs, delta_.perm());
  delta_table_.resize(group.size());
  delta_inverse_table_.resize(group.size());
  std::vector<int> word;
  for (ElementId w = 0; w < group.size(); ++w) {
    word = group.word(w);
    for (int& i : word) i = delta_(i);
    const ElementId image = group.from_word(word);
    delta_table_[w] = image;
    delta_inverse_table_[image] = w;
  }
}

WeylElement delta_on_element(const DiagramAutomorphism& delta, const WeylElement& w) {
  const RootSystem& rs = w.roots();
  check_cartan_preserving(rs.cartan(), delta.perm());
  const auto rho = relabel_roots(rs, delta.perm());
  std::vector<RootIndex> rho_inv(rho.size());
  for (std::size_t r = 0; r < rho.size(); ++r) rho_inv[rho[r]] = static_cast<RootIndex>(r);
  std::vector<RootIndex> perm(rho.size());
  for (std::size_t r = 0; r < rho.size(); ++r) perm[r] = rho[w(rho_inv[r])];
  return WeylElement(w.root_system(), std::move(perm));
}

TwistedAction::TwistedAction(const TwistedGroup& twisted, ParabolicSubset J)
    : twisted_(&twisted), J_(J) {
  const GroupTable& g = twisted.group();
  if (!J.is_subset_of(ParabolicSubset::full(g.rank()))) {
    throw PreconditionError("J is not a subset of I");
  }
  parabolic_ = parabolic_elements(g, J);
  const auto gens = J.indices();
  std::vector<std::size_t> label(g.size(), g.size());
  for (ElementId start = 0; start < g.size(); ++start) {
    if (label[start] != g.size()) continue;
    label[start] = start;
    std::vector<ElementId> queue{start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int j : gens) {
        const ElementId next = step(queue[head], j);
        if (label[next] == g.size()) {
          label[next] = start;
          queue.push_back(next);
        }
      }
    }
  }
  orbits_ = make_partition(g.size(), label);
  for (const auto& block : orbits_.blocks) orbit_min_.push_back(minimal_length(g, block));
}

ElementId TwistedAction::step(ElementId y, int j) const {
  const GroupTable& g = group();
  return g.left_mul(twisted_->automorphism()(j), g.right_mul(y, j));
}

ElementId twisted_conjugate(const TwistedAction& action, ElementId x, ElementId y) {
  const GroupTable& g = action.group();
  if (!in_parabolic(g, x, action.J())) throw PreconditionError("x is not in W_J");
  return g.multiply(g.multiply(action.twisted().delta(x), y), g.inverse(x));
}

TwistedOrbit orbit(const TwistedAction& action, ElementId y) {
  const GroupTable& g = action.group();
  const auto gens = action.J().indices();
  std::vector<ElementId> members{y};
  std::vector<bool> seen(g.size(), false);
  seen[y] = true;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (int j : gens) {
      const ElementId next = action.step(members[head], j);
      if (!seen[next]) {
        seen[next] = true;
        members.push_back(next);
      }
    }
  }
  std::sort(members.begin(), members.end());
  TwistedOrbit out;
  out.min_elements = minimal_length(g, members);
  out.members = std::move(members);
  return out;
}

ParabolicSubset stabilizer_type(const TwistedGroup& twisted, ParabolicSubset J, ElementId w) {
  const GroupTable& g = twisted.group();
  if (!is_min_rep(g, w, J, Side::right)) throw PreconditionError("element is not in W^J");
  const RootSystem& rs = g.roots();
  ParabolicSubset K = J;
  while (true) {
    const ParabolicSubset target = twisted.automorphism()(K);
    ParabolicSubset next;
    for (int i : K.indices()) {
      const RootIndex r = g.apply(w, rs.simple(i));
      if (rs.is_simple(r) && target.contains(static_cast<int>(r))) next.insert(i);
    }
    if (next == K) return K;
    K = next;
  }
}

std::vector<TwistClass> class_decomposition(const TwistedAction& action, Verify verify) {
  const GroupTable& g = action.group();
  const Partition& orbits = action.orbits();
  std::vector<TwistClass> classes;
  for (ElementId w : enumerate_min_reps(g, action.J(), {}, CosetKind::right_reps)) {
    TwistClass c;
    c.base = w;
    c.stabilizer_set = stabilizer_type(action.twisted(), action.J(), w);
    std::vector<bool> taken(orbits.blocks.size(), false);
    for (ElementId v : parabolic_elements(g, c.stabilizer_set)) {
      const std::size_t b = orbits.block_of[g.multiply(w, v)];
      if (taken[b]) continue;
      taken[b] = true;
      c.members.insert(c.members.end(), orbits.blocks[b].begin(), orbits.blocks[b].end());
    }
    std::sort(c.members.begin(), c.members.end());
    classes.push_back(std::move(c));
  }
  if (verify == Verify::yes) {
    std::vector<int> hits(g.size(), 0);
    for (const auto& c : classes) {
      for (ElementId m : c.members) ++hits[m];
    }
    for (ElementId w = 0; w < g.size(); ++w) {
      if (hits[w] != 1) {
        throw InternalError("class decomposition covers element " + std::to_string(w) + " " +
                            std::to_string(hits[w]) + " times");
      }
    }
  }
  return classes;
}

std::optional<ElementId> arrow_step(const TwistedAction& action, ElementId w, int j) {
  if (j < 0 || !action.J().contains(j)) throw PreconditionError("arrow step index is not in J");
  const ElementId next = action.step(w, j);
  if (action.group().length(next) <= action.group().length(w)) return next;
  return std::nullopt;
}

Reduction reduce_to_distinguished(const TwistedAction& action, ElementId w) {
  const GroupTable& g = action.group();
  const auto gens = action.J().indices();

  auto factor = [&](ElementId u) -> std::optional<std::pair<ElementId, ElementId>> {
    const ElementId w1 = min_coset_rep(g, u, action.J(), Side::right);
    const ParabolicSubset K = stabilizer_type(action.twisted(), action.J(), w1);
    const ElementId v = g.multiply(g.inverse(w1), u);
    if (!in_parabolic(g, v, K)) return std::nullopt;
    return std::make_pair(w1, v);
  };

  std::map<ElementId, ArrowEdge> parent;  // node -> edge that reached it
  std::vector<ElementId> queue{w};
  std::vector<bool> seen(g.size(), false);
  seen[w] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const ElementId u = queue[head];
    if (auto f = factor(u)) {
      Reduction out{f->first, f->second, {}};
      for (ElementId cur = u; cur != w;) {
        const ArrowEdge e = parent.at(cur);
        out.path.push_back({e.j, cur});
        cur = e.to;  // stored predecessor
      }
      std::reverse(out.path.begin(), out.path.end());
      return out;
    }
    std::vector<ArrowEdge> drops, level;
    for (int j : gens) {
      if (auto next = arrow_step(action, u, j)) {
        (g.length(*next) < g.length(u) ? drops : level).push_back({j, *next});
      }
    }
    drops.insert(drops.end(), level.begin(), level.end());
    for (const ArrowEdge& e : drops) {
      if (seen[e.to]) continue;
      seen[e.to] = true;
      parent.emplace(e.to, ArrowEdge{e.j, u});
      queue.push_back(e.to);
    }
  }
  throw InternalError("arrow search from element " + std::to_string(w) +
                      " exhausted without reaching a distinguished factorization");
}

bool arrow_reachable(const TwistedAction& action, ElementId from, ElementId to) {
  const GroupTable& g = action.group();
  std::vector<ElementId> queue{from};
  std::vector<bool> seen(g.size(), false);
  seen[from] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (queue[head] == to) return true;
    for (int j : action.J().indices()) {
      if (auto next = arrow_step(action, queue[head], j); next && !seen[*next]) {
        seen[*next] = true;
        queue.push_back(*next);
      }
    }
  }
  return false;
}

bool strongly_conjugate(const TwistedAction& action, ElementId w, ElementId w2) {
  const GroupTable& g = action.group();
  std::vector<ElementId> queue{w};
  std::vector<bool> seen(g.size(), false);
  seen[w] = true;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (queue[head] == w2) return true;
    for (ElementId x : action.parabolic()) {
      ElementId next;
      if (elementary_step(action, queue[head], x, next) && !seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return false;
}

Partition strong_conjugacy_classes(const TwistedAction& action) {
  const GroupTable& g = action.group();
  std::vector<std::size_t> label(g.size(), g.size());
  for (ElementId start = 0; start < g.size(); ++start) {
    if (label[start] != g.size()) continue;
    label[start] = start;
    std::vector<ElementId> queue{start};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (ElementId x : action.parabolic()) {
        ElementId next;
        if (elementary_step(action, queue[head], x, next) && label[next] == g.size()) {
          label[next] = start;
          queue.push_back(next);
        }
      }
    }
  }
  return make_partition(g.size(), label);
}

Partition cyclic_shift_classes(const TwistedAction& action) {
  // Iterative Tarjan over the arrow digraph.
  const GroupTable& g = action.group();
  const std::size_t n = g.size();
  const auto gens = action.J().indices();
  std::vector<std::vector<ElementId>> succ(n);
  for (ElementId w = 0; w < n; ++w) {
    for (int j : gens) {
      if (auto next = arrow_step(action, w, j)) succ[w].push_back(*next);
    }
  }
  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnset), low(n, 0), label(n, kUnset);
  std::vector<bool> on_stack(n, false);
  std::vector<ElementId> stack;
  std::size_t counter = 0;
  struct Frame {
    ElementId v;
    std::size_t next;
  };
  for (ElementId root = 0; root < n; ++root) {
    if (index[root] != kUnset) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next < succ[f.v].size()) {
        const ElementId u = succ[f.v][f.next++];
        if (index[u] == kUnset) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = true;
          frames.push_back({u, 0});
        } else if (on_stack[u]) {
          low[f.v] = std::min(low[f.v], index[u]);
        }
        continue;
      }
      const ElementId v = f.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        ElementId smallest = v;
        std::vector<ElementId> comp;
        while (true) {
          const ElementId u = stack.back();
          stack.pop_back();
          on_stack[u] = false;
          comp.push_back(u);
          smallest = std::min(smallest, u);
          if (u == v) break;
        }
        for (ElementId u : comp) label[u] = smallest;
      }
    }
  }
  return make_partition(n, label);
}

ParabolicSubset support(const GroupTable& group, ElementId w) {
  ParabolicSubset out;
  for (int i = 0; i < group.rank(); ++i) {
    if (group.bruhat_leq(group.generator(i), w)) out.insert(i);
  }
  return out;
}

ParabolicSubset delta_closure(const DiagramAutomorphism& delta, ParabolicSubset s) {
  while (true) {
    const ParabolicSubset next = s | delta(s);
    if (next == s) return s;
    s = next;
  }
}

ParabolicSubset twisted_support(const TwistedGroup& twisted, ElementId w) {
  return delta_closure(twisted.automorphism(), support(twisted.group(), w));
}

}  // namespace flagstrata
