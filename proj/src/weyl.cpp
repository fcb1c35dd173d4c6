#include "flagstrata/weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "flagstrata/error.hpp"

namespace flagstrata {

namespace {

std::string key_of(std::span<const RootIndex> perm, int rank) {
  std::string key(2 * rank, '\0');
  for (int i = 0; i < rank; ++i) {
    key[2 * i] = static_cast<char>(perm[i] & 0xFF);
    key[2 * i + 1] = static_cast<char>(perm[i] >> 8);
  }
  return key;
}

int count_length(std::span<const RootIndex> perm) {
  const std::size_t n = perm.size() / 2;
  int len = 0;
  for (std::size_t r = 0; r < n; ++r) len += perm[r] >= n;
  return len;
}

}  // namespace

WeylElement::WeylElement(std::shared_ptr<const RootSystem> rs, std::vector<RootIndex> perm)
    : rs_(std::move(rs)), perm_(std::move(perm)) {
  if (perm_.size() != rs_->size()) throw PreconditionError("permutation size does not match root system");
}

WeylElement WeylElement::identity(std::shared_ptr<const RootSystem> rs) {
  std::vector<RootIndex> perm(rs->size());
  std::iota(perm.begin(), perm.end(), RootIndex{0});
  return WeylElement(std::move(rs), std::move(perm));
}

WeylElement WeylElement::simple_reflection(std::shared_ptr<const RootSystem> rs, int i) {
  std::vector<RootIndex> perm(rs->size());
  for (std::size_t r = 0; r < perm.size(); ++r) perm[r] = rs->reflect(i, static_cast<RootIndex>(r));
  return WeylElement(std::move(rs), std::move(perm));
}

WeylElement WeylElement::from_word(std::shared_ptr<const RootSystem> rs, std::span<const int> word) {
  WeylElement w = identity(rs);
  for (int i : word) w = multiply(w, simple_reflection(rs, i));
  return w;
}

std::string WeylElement::key() const { return key_of(perm_, rs_->rank()); }

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  if (a.root_system() != b.root_system()) {
    throw PreconditionError("cannot multiply elements of different root systems");
  }
  std::vector<RootIndex> perm(b.perm().size());
  for (std::size_t r = 0; r < perm.size(); ++r) perm[r] = a(b(static_cast<RootIndex>(r)));
  return WeylElement(a.root_system(), std::move(perm));
}

WeylElement inverse(const WeylElement& a) {
  std::vector<RootIndex> perm(a.perm().size());
  for (std::size_t r = 0; r < perm.size(); ++r) perm[a(static_cast<RootIndex>(r))] = static_cast<RootIndex>(r);
  return WeylElement(a.root_system(), std::move(perm));
}

int length(const WeylElement& w) { return count_length(w.perm()); }

std::vector<int> canonical_word(const WeylElement& w) {
  const RootSystem& rs = w.roots();
  std::vector<int> word;
  WeylElement cur = w;
  while (true) {
    const WeylElement inv = inverse(cur);
    int descent = -1;
    for (int i = 0; i < rs.rank(); ++i) {
      if (!rs.is_positive(inv(rs.simple(i)))) {
        descent = i;
        break;
      }
    }
    if (descent < 0) break;
    word.push_back(descent);
    cur = multiply(WeylElement::simple_reflection(w.root_system(), descent), cur);
  }
  return word;
}

GroupTable::GroupTable(std::shared_ptr<const RootSystem> rs, std::size_t ceiling) : rs_(std::move(rs)) {
  const int n = rs_->rank();
  const std::size_t nroots = rs_->size();

  // Breadth-first by left multiplication; discovery order is by length.
  std::vector<std::vector<RootIndex>> perms;
  std::vector<int> lengths;
  std::unordered_map<std::string, ElementId> found;
  {
    std::vector<RootIndex> id(nroots);
    std::iota(id.begin(), id.end(), RootIndex{0});
    found.emplace(key_of(id, n), 0);
    perms.push_back(std::move(id));
    lengths.push_back(0);
  }
  for (std::size_t head = 0; head < perms.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      std::vector<RootIndex> next(nroots);
      for (std::size_t r = 0; r < nroots; ++r) next[r] = rs_->reflect(i, perms[head][r]);
      auto [it, inserted] = found.emplace(key_of(next, n), static_cast<ElementId>(perms.size()));
      if (!inserted) continue;
      if (perms.size() >= ceiling) {
        throw LimitError("group order exceeds the element-count ceiling of " + std::to_string(ceiling));
      }
      lengths.push_back(count_length(next));
      perms.push_back(std::move(next));
    }
  }
  const std::size_t order = perms.size();

  auto lookup_tmp = [&](const std::vector<RootIndex>& p) {
    auto it = found.find(key_of(p, n));
    if (it == found.end()) throw InternalError("group not closed under multiplication");
    return it->second;
  };

  std::vector<std::vector<ElementId>> left_tmp(n, std::vector<ElementId>(order));
  for (ElementId w = 0; w < order; ++w) {
    for (int i = 0; i < n; ++i) {
      std::vector<RootIndex> next(nroots);
      for (std::size_t r = 0; r < nroots; ++r) next[r] = rs_->reflect(i, perms[w][r]);
      left_tmp[i][w] = lookup_tmp(next);
    }
  }

  // Canonical word: smallest left descent, then recurse on s_i w.
  std::vector<std::vector<int>> words_tmp(order);
  for (ElementId w = 1; w < order; ++w) {
    for (int i = 0; i < n; ++i) {
      const ElementId sw = left_tmp[i][w];
      if (lengths[sw] < lengths[w]) {
        words_tmp[w].push_back(i);
        words_tmp[w].insert(words_tmp[w].end(), words_tmp[sw].begin(), words_tmp[sw].end());
        break;
      }
    }
  }

  std::vector<ElementId> order_ids(order);
  std::iota(order_ids.begin(), order_ids.end(), ElementId{0});
  std::sort(order_ids.begin(), order_ids.end(), [&](ElementId a, ElementId b) {
    if (lengths[a] != lengths[b]) return lengths[a] < lengths[b];
    return words_tmp[a] < words_tmp[b];
  });
  std::vector<ElementId> rank_of(order);
  for (ElementId k = 0; k < order; ++k) rank_of[order_ids[k]] = k;

  elements_.reserve(order);
  length_.resize(order);
  words_.resize(order);
  for (ElementId k = 0; k < order; ++k) {
    const ElementId old = order_ids[k];
    elements_.emplace_back(rs_, std::move(perms[old]));
    length_[k] = lengths[old];
    words_[k] = std::move(words_tmp[old]);
    index_.emplace(elements_[k].key(), k);
  }
  found.clear();

  left_mul_.assign(n, std::vector<ElementId>(order));
  for (int i = 0; i < n; ++i) {
    for (ElementId old = 0; old < order; ++old) left_mul_[i][rank_of[old]] = rank_of[left_tmp[i][old]];
  }

  right_mul_.assign(n, std::vector<ElementId>(order));
  inverse_.resize(order);
  std::vector<RootIndex> scratch(nroots);
  for (ElementId w = 0; w < order; ++w) {
    const WeylElement& e = elements_[w];
    for (int i = 0; i < n; ++i) {
      for (std::size_t r = 0; r < nroots; ++r) scratch[r] = e(rs_->reflect(i, static_cast<RootIndex>(r)));
      right_mul_[i][w] = index_.at(key_of(scratch, n));
    }
    for (std::size_t r = 0; r < nroots; ++r) scratch[e(static_cast<RootIndex>(r))] = static_cast<RootIndex>(r);
    inverse_[w] = index_.at(key_of(scratch, n));
  }

  // Reflections s_beta for positive beta, then covers u < u s_beta.
  std::map<std::vector<int>, RootIndex> coords_index;
  for (std::size_t r = 0; r < nroots; ++r) coords_index.emplace(rs_->root(static_cast<RootIndex>(r)).coords, static_cast<RootIndex>(r));
  std::vector<std::vector<RootIndex>> reflections;
  for (std::size_t b = 0; b < rs_->num_positive(); ++b) {
    std::vector<RootIndex> t(nroots);
    const Root& beta = rs_->root(static_cast<RootIndex>(b));
    for (std::size_t r = 0; r < nroots; ++r) {
      const int c = rs_->coroot_pairing(static_cast<RootIndex>(r), static_cast<RootIndex>(b));
      std::vector<int> img = rs_->root(static_cast<RootIndex>(r)).coords;
      for (int j = 0; j < n; ++j) img[j] -= c * beta.coords[j];
      t[r] = coords_index.at(img);
    }
    reflections.push_back(std::move(t));
  }
  covers_.assign(order, {});
  for (ElementId u = 0; u < order; ++u) {
    const WeylElement& e = elements_[u];
    for (const auto& t : reflections) {
      for (std::size_t r = 0; r < nroots; ++r) scratch[r] = e(t[r]);
      if (count_length(scratch) != length_[u] + 1) continue;
      covers_[index_.at(key_of(scratch, n))].push_back(u);
    }
  }
  for (auto& c : covers_) std::sort(c.begin(), c.end());
}

std::optional<ElementId> GroupTable::find(const WeylElement& w) const {
  if (w.root_system() != rs_) return std::nullopt;
  auto it = index_.find(w.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementId GroupTable::id_of(const WeylElement& w) const {
  auto id = find(w);
  if (!id) throw PreconditionError("element does not belong to this group");
  return *id;
}

ElementId GroupTable::from_word(std::span<const int> word) const {
  ElementId w = identity();
  for (int i : word) {
    if (i < 0 || i >= rank()) throw PreconditionError("simple index out of range in word");
    w = right_mul(w, i);
  }
  return w;
}

ElementId GroupTable::multiply(ElementId a, ElementId b) const {
  for (int i : words_[b]) a = right_mul_[i][a];
  return a;
}

void GroupTable::build_closure() const {
  closure_words_ = (size() + 63) / 64;
  below_.assign(size() * closure_words_, 0);
  for (ElementId v = 0; v < size(); ++v) {
    std::uint64_t* row = &below_[v * closure_words_];
    row[v / 64] |= std::uint64_t{1} << (v % 64);
    for (ElementId u : covers_[v]) {
      const std::uint64_t* sub = &below_[u * closure_words_];
      for (std::size_t k = 0; k < closure_words_; ++k) row[k] |= sub[k];
    }
  }
}

bool GroupTable::bruhat_leq(ElementId u, ElementId v) const {
  if (size() > kClosureLimit) return bruhat_leq_by_descent(*this, u, v);
  std::call_once(closure_once_, [this] { build_closure(); });
  return (below_[v * closure_words_ + u / 64] >> (u % 64)) & 1u;
}

bool bruhat_leq_by_descent(const GroupTable& g, ElementId u, ElementId v) {
  while (true) {
    if (u == v) return true;
    if (g.length(u) >= g.length(v)) return false;
    const int s = g.word(v).front();
    if (g.has_left_descent(u, s)) u = g.left_mul(s, u);
    v = g.left_mul(s, v);
  }
}

bool in_parabolic(const GroupTable& g, ElementId x, ParabolicSubset J) {
  const auto& word = g.word(x);
  return std::all_of(word.begin(), word.end(), [&](int i) { return J.contains(i); });
}

std::vector<ElementId> parabolic_elements(const GroupTable& g, ParabolicSubset J) {
  std::vector<ElementId> out{g.identity()};
  std::vector<bool> seen(g.size(), false);
  seen[g.identity()] = true;
  const auto gens = J.indices();
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (int j : gens) {
      const ElementId next = g.right_mul(out[head], j);
      if (!seen[next]) {
        seen[next] = true;
        out.push_back(next);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

ElementId min_coset_rep(const GroupTable& g, ElementId w, ParabolicSubset J, Side side) {
  const auto gens = J.indices();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int j : gens) {
      if (side == Side::right && g.has_right_descent(w, j)) {
        w = g.right_mul(w, j);
        changed = true;
      } else if (side == Side::left && g.has_left_descent(w, j)) {
        w = g.left_mul(j, w);
        changed = true;
      }
    }
  }
  return w;
}

bool is_min_rep(const GroupTable& g, ElementId w, ParabolicSubset J, Side side) {
  for (int j : J.indices()) {
    if (side == Side::right ? g.has_right_descent(w, j) : g.has_left_descent(w, j)) return false;
  }
  return true;
}

std::vector<ElementId> enumerate_min_reps(const GroupTable& g, ParabolicSubset J, ParabolicSubset K,
                                          CosetKind kind) {
  std::vector<ElementId> out;
  for (ElementId w = 0; w < g.size(); ++w) {
    bool keep = false;
    switch (kind) {
      case CosetKind::right_reps: keep = is_min_rep(g, w, J, Side::right); break;
      case CosetKind::left_reps: keep = is_min_rep(g, w, J, Side::left); break;
      case CosetKind::double_reps:
        keep = is_min_rep(g, w, J, Side::left) && is_min_rep(g, w, K, Side::right);
        break;
    }
    if (keep) out.push_back(w);
  }
  return out;
}

ElementId double_coset_rep(const GroupTable& g, ElementId w, ParabolicSubset J, ParabolicSubset K) {
  while (true) {
    const ElementId next = min_coset_rep(g, min_coset_rep(g, w, J, Side::left), K, Side::right);
    if (next == w) return w;
    w = next;
  }
}

ParabolicSubset adjoint_image(const GroupTable& g, ElementId w, ParabolicSubset K) {
  const RootSystem& rs = g.roots();
  ParabolicSubset out;
  for (int k : K.indices()) {
    const RootIndex r = g.apply(w, rs.simple(k));
    if (rs.is_simple(r)) out.insert(static_cast<int>(r));
  }
  return out;
}

std::vector<bool> levi_roots(const RootSystem& rs, ParabolicSubset J) {
  std::vector<bool> mask(rs.size());
  for (std::size_t r = 0; r < rs.size(); ++r) {
    mask[r] = rs.root(static_cast<RootIndex>(r)).support().is_subset_of(J);
  }
  return mask;
}

}  // namespace flagstrata
