#pragma once
// Fixtures and independent reference computations shared by the tests.
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "flagstrata/pieces.hpp"
#include "flagstrata/twist.hpp"
#include "flagstrata/words.hpp"

namespace testing_support {

using namespace flagstrata;

struct Fixture {
  CartanDatum cartan;
  std::shared_ptr<const RootSystem> rs;
  std::unique_ptr<GroupTable> group;
  std::unique_ptr<TwistedGroup> twisted;

  explicit Fixture(const std::string& type, const std::string& delta = "id")
      : cartan(parse_cartan(type)), rs(build_root_system(cartan)), group(std::make_unique<GroupTable>(rs)) {
    twisted = std::make_unique<TwistedGroup>(*group, parse_automorphism(delta, cartan));
  }
  const GroupTable& g() const { return *group; }
  ElementId el(const std::string& word) const { return parse_element(*group, word); }
  ParabolicSubset J(const std::string& text) const { return parse_subset(text, cartan.rank); }
  std::string str(ElementId w) const { return format_element(*group, w); }
};

inline std::vector<std::string> words_of(const Fixture& f, const std::vector<ElementId>& ws) {
  std::vector<std::string> out;
  for (ElementId w : ws) out.push_back(f.str(w));
  return out;
}

// Positive roots by the root-string rule: beta + alpha_i is a root iff
// p - <beta, alpha_i^vee> > 0, where p is how far beta - k alpha_i stays a root.
inline std::size_t count_positive_roots_by_strings(const CartanDatum& c) {
  const int n = c.rank;
  std::set<std::vector<int>> roots;
  std::vector<std::vector<int>> layer;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    roots.insert(e);
    layer.push_back(e);
  }
  while (!layer.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& beta : layer) {
      for (int i = 0; i < n; ++i) {
        int pairing = 0;  // <beta, alpha_i^vee> = sum_j beta_j a(i, j)
        for (int j = 0; j < n; ++j) pairing += beta[j] * c(i, j);
        int p = 0;
        for (std::vector<int> down = beta;;) {
          down[i] -= 1;
          if (!roots.count(down)) break;
          ++p;
        }
        if (p - pairing > 0) {
          std::vector<int> up = beta;
          up[i] += 1;
          if (roots.insert(up).second) next.push_back(up);
        }
      }
    }
    layer = std::move(next);
  }
  return roots.size();
}

inline std::uint64_t factorial(int n) {
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

// Group order by closed form, written independently of the library's table.
inline std::uint64_t expected_order(char family, int n) {
  switch (family) {
    case 'A': return factorial(n + 1);
    case 'B':
    case 'C': return (std::uint64_t{1} << n) * factorial(n);
    case 'D': return (std::uint64_t{1} << (n - 1)) * factorial(n);
    case 'F': return 1152;
    case 'G': return 12;
    default: return 0;
  }
}

// u <= v by brute force over all 2^l subwords of the reduced word of v.
inline bool subword_leq(const GroupTable& g, ElementId u, ElementId v) {
  const auto& word = g.word(v);
  const std::size_t l = word.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << l); ++mask) {
    ElementId x = g.identity();
    for (std::size_t k = 0; k < l; ++k) {
      if (mask >> k & 1) x = g.right_mul(x, word[k]);
    }
    if (x == u) return true;
  }
  return false;
}

inline std::mt19937& rng() {
  static std::mt19937 engine(20240517u);
  return engine;
}

inline ElementId random_element(const GroupTable& g) {
  return std::uniform_int_distribution<ElementId>(0, static_cast<ElementId>(g.size() - 1))(rng());
}

}  // namespace testing_support
