#include "flagstrata/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>

#include "flagstrata/error.hpp"

namespace flagstrata {

namespace {

void link(CartanDatum& d, int i, int j, int aij, int aji) {
  d.matrix[i][j] = aij;
  d.matrix[j][i] = aji;
}

void check_family_rank(char family, int rank) {
  bool ok = false;
  switch (family) {
    case 'A': ok = rank >= 1; break;
    case 'B':
    case 'C': ok = rank >= 2; break;
    case 'D': ok = rank >= 3; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default:
      throw PreconditionError(std::string("unknown Cartan family '") + family + "'");
  }
  if (!ok) {
    throw PreconditionError("rank " + std::to_string(rank) + " out of range for family " +
                            std::string(1, family));
  }
  if (rank > 16) throw PreconditionError("rank above 16 is not supported");
}

// Fraction-free Gaussian elimination; returns the leading principal minors.
std::vector<__int128> leading_minors(std::vector<std::vector<__int128>> m) {
  const std::size_t n = m.size();
  std::vector<__int128> minors;
  __int128 prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] == 0) {
      minors.push_back(0);
      return minors;
    }
    minors.push_back(m[k][k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return minors;
}

// Squared lengths of simple roots from the symmetrizability condition
// n_i a(i, j) = n_j a(j, i). Requires a connected diagram.
std::vector<int> symmetrizing_norms(const CartanDatum& d) {
  const int n = d.rank;
  std::vector<long> num(n, 0), den(n, 1);
  num[0] = 1;
  std::deque<int> queue{0};
  std::vector<bool> seen(n, false);
  seen[0] = true;
  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    for (int j = 0; j < n; ++j) {
      if (j == i || d(i, j) == 0) continue;
      // n_j = n_i a(i,j) / a(j,i)
      long nn = num[i] * d(i, j);
      long dd = den[i] * d(j, i);
      if (dd < 0) {
        nn = -nn;
        dd = -dd;
      }
      const long g = std::gcd(nn, dd);
      nn /= g;
      dd /= g;
      if (!seen[j]) {
        seen[j] = true;
        num[j] = nn;
        den[j] = dd;
        queue.push_back(j);
      } else if (num[j] != nn || den[j] != dd) {
        throw PreconditionError("Cartan matrix is not symmetrizable");
      }
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw PreconditionError("Dynkin diagram is not connected (only simple types are supported)");
  }
  long lcm = 1;
  for (long x : den) lcm = std::lcm(lcm, x);
  std::vector<int> norms(n);
  long g = 0;
  for (int i = 0; i < n; ++i) {
    norms[i] = static_cast<int>(num[i] * (lcm / den[i]));
    g = std::gcd(g, static_cast<long>(norms[i]));
  }
  for (int& x : norms) x = static_cast<int>(x / g);
  return norms;
}

}  // namespace

CartanDatum cartan_datum(char family, int rank) {
  family = static_cast<char>(std::toupper(static_cast<unsigned char>(family)));
  check_family_rank(family, rank);
  CartanDatum d;
  d.family = family;
  d.rank = rank;
  d.matrix.assign(rank, std::vector<int>(rank, 0));
  for (int i = 0; i < rank; ++i) d.matrix[i][i] = 2;

  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < rank; ++i) link(d, i, i + 1, -1, -1);
      break;
    case 'B':
      for (int i = 0; i + 2 < rank; ++i) link(d, i, i + 1, -1, -1);
      link(d, rank - 2, rank - 1, -1, -2);  // alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 2 < rank; ++i) link(d, i, i + 1, -1, -1);
      link(d, rank - 2, rank - 1, -2, -1);  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < rank; ++i) link(d, i, i + 1, -1, -1);
      link(d, rank - 3, rank - 1, -1, -1);
      break;
    case 'E': {
      // 1-3-4-5-6-7-8 with 2 attached to 4
      const int chain[] = {0, 2, 3, 4, 5, 6, 7};
      for (int k = 0; k + 1 < rank - 1; ++k) link(d, chain[k], chain[k + 1], -1, -1);
      link(d, 1, 3, -1, -1);
      break;
    }
    case 'F':
      link(d, 0, 1, -1, -1);
      link(d, 1, 2, -1, -2);  // alpha_1, alpha_2 long
      link(d, 2, 3, -1, -1);
      break;
    case 'G':
      link(d, 0, 1, -3, -1);  // alpha_1 short
      break;
  }
  return d;
}

CartanDatum parse_cartan(std::string_view text) {
  if (text.size() < 2) throw PreconditionError("bad Cartan type '" + std::string(text) + "'");
  int rank = 0;
  for (char c : text.substr(1)) {
    if (!std::isdigit(static_cast<unsigned char>(c)) || rank > 1000) {
      throw PreconditionError("bad Cartan type '" + std::string(text) + "'");
    }
    rank = rank * 10 + (c - '0');
  }
  return cartan_datum(text[0], rank);
}

void validate_cartan(const CartanDatum& d) {
  check_family_rank(d.family, d.rank);
  if (static_cast<int>(d.matrix.size()) != d.rank) {
    throw PreconditionError("Cartan matrix has wrong number of rows");
  }
  for (const auto& row : d.matrix) {
    if (static_cast<int>(row.size()) != d.rank) {
      throw PreconditionError("Cartan matrix has wrong number of columns");
    }
  }
  for (int i = 0; i < d.rank; ++i) {
    if (d(i, i) != 2) throw PreconditionError("Cartan matrix diagonal entry is not 2");
    for (int j = 0; j < d.rank; ++j) {
      if (i == j) continue;
      if (d(i, j) > 0) throw PreconditionError("Cartan matrix has a positive off-diagonal entry");
      if ((d(i, j) == 0) != (d(j, i) == 0)) {
        throw PreconditionError("Cartan matrix violates a(i,j)=0 iff a(j,i)=0");
      }
    }
  }
  const auto norms = symmetrizing_norms(d);
  std::vector<std::vector<__int128>> gram(d.rank, std::vector<__int128>(d.rank));
  for (int i = 0; i < d.rank; ++i) {
    for (int j = 0; j < d.rank; ++j) gram[i][j] = static_cast<__int128>(norms[i]) * d(i, j);
  }
  for (__int128 m : leading_minors(gram)) {
    if (m <= 0) throw PreconditionError("Cartan matrix is not of finite type");
  }
}

int Root::height() const { return std::accumulate(coords.begin(), coords.end(), 0); }

bool Root::is_positive() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c >= 0; }) &&
         std::any_of(coords.begin(), coords.end(), [](int c) { return c > 0; });
}

bool Root::is_negative() const {
  return std::all_of(coords.begin(), coords.end(), [](int c) { return c <= 0; }) &&
         std::any_of(coords.begin(), coords.end(), [](int c) { return c < 0; });
}

ParabolicSubset Root::support() const {
  ParabolicSubset s;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] != 0) s.insert(static_cast<int>(i));
  }
  return s;
}

const Root& RootSystem::root(RootIndex r) const {
  if (r >= roots_.size()) throw std::out_of_range("root index out of range");
  return roots_[r];
}

RootIndex RootSystem::simple(int i) const {
  if (i < 0 || i >= rank()) throw std::out_of_range("simple index out of range");
  return static_cast<RootIndex>(i);
}

RootIndex RootSystem::reflect(int i, RootIndex r) const {
  if (i < 0 || i >= rank()) throw std::out_of_range("simple index out of range");
  if (r >= roots_.size()) throw std::out_of_range("root index out of range");
  return reflection_[i][r];
}

long RootSystem::form(const Root& a, const Root& b) const {
  // 2 (alpha_i, alpha_j) = n_i a(i, j)
  long sum = 0;
  for (int i = 0; i < rank(); ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < rank(); ++j) {
      sum += static_cast<long>(a.coords[i]) * b.coords[j] * norms_[i] * cartan_(i, j);
    }
  }
  return sum;
}

int RootSystem::coroot_pairing(RootIndex r, RootIndex s) const {
  const Root& a = root(r);
  const Root& b = root(s);
  const long num = 2 * form(a, b);
  const long den = form(b, b);
  if (num % den != 0) throw InternalError("non-integral coroot pairing");
  return static_cast<int>(num / den);
}

std::optional<RootIndex> RootSystem::find(const Root& root) const {
  auto it = std::find(roots_.begin(), roots_.end(), root);
  if (it == roots_.end()) return std::nullopt;
  return static_cast<RootIndex>(it - roots_.begin());
}

std::shared_ptr<const RootSystem> build_root_system(const CartanDatum& datum) {
  validate_cartan(datum);
  const int n = datum.rank;

  auto reflect_coords = [&](int i, const std::vector<int>& beta) {
    int pairing = 0;  // <beta, alpha_i^vee>
    for (int j = 0; j < n; ++j) pairing += beta[j] * datum(i, j);
    std::vector<int> out = beta;
    out[i] -= pairing;
    return out;
  };

  // Positive roots by closure: s_i permutes Phi+ minus {alpha_i}.
  std::map<std::vector<int>, bool> seen;
  std::deque<std::vector<int>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen[e] = true;
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto beta = std::move(queue.front());
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      auto gamma = reflect_coords(i, beta);
      if (std::any_of(gamma.begin(), gamma.end(), [](int c) { return c < 0; })) continue;
      if (seen.emplace(gamma, true).second) {
        queue.push_back(std::move(gamma));
        if (seen.size() > 60000) throw InternalError("root closure did not terminate");
      }
    }
  }

  std::vector<Root> positive;
  positive.reserve(seen.size());
  for (const auto& [coords, _] : seen) positive.push_back(Root{coords});
  // Height first; within a height, descending coordinates so that alpha_i sits at index i.
  std::sort(positive.begin(), positive.end(), [](const Root& a, const Root& b) {
    const int ha = a.height(), hb = b.height();
    if (ha != hb) return ha < hb;
    return a.coords > b.coords;
  });

  std::shared_ptr<RootSystem> rs(new RootSystem());
  rs->cartan_ = datum;
  rs->norms_ = symmetrizing_norms(datum);
  rs->roots_ = positive;
  for (const Root& r : positive) {
    Root neg = r;
    for (int& c : neg.coords) c = -c;
    rs->roots_.push_back(std::move(neg));
  }
  if (rs->roots_.size() > 0xFFFF) throw LimitError("root system too large");

  std::map<std::vector<int>, RootIndex> index;
  for (std::size_t r = 0; r < rs->roots_.size(); ++r) {
    index.emplace(rs->roots_[r].coords, static_cast<RootIndex>(r));
  }
  rs->reflection_.assign(n, std::vector<RootIndex>(rs->roots_.size()));
  for (int i = 0; i < n; ++i) {
    for (std::size_t r = 0; r < rs->roots_.size(); ++r) {
      auto it = index.find(reflect_coords(i, rs->roots_[r].coords));
      if (it == index.end()) throw InternalError("root system not closed under reflection");
      rs->reflection_[i][r] = it->second;
    }
  }
  return rs;
}

}  // namespace flagstrata
