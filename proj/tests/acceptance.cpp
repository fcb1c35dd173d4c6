// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "flagstrata/oracle.hpp"
#include "flagstrata/verify.hpp"
#include "support.hpp"

using namespace flagstrata;
using testing_support::Fixture;

namespace {

struct Config {
  std::string type;
  std::string delta;
};

// A1-A4, B2, B3, C3, D4, G2 with id; flip for A_n (n >= 2) and D4; both triality rotations.
std::vector<Config> main_scope() {
  std::vector<Config> out;
  for (const char* t : {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"}) out.push_back({t, "id"});
  for (const char* t : {"A2", "A3", "A4", "D4"}) out.push_back({t, "flip"});
  out.push_back({"D4", "tri"});
  out.push_back({"D4", "tri2"});
  return out;
}

struct Outcome {
  bool ok = true;
  std::size_t instances = 0;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    ++instances;
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
  void absorb(const OracleReport& r, const std::string& where) {
    instances += r.instances_checked;
    if (!r.passed() && ok) {
      ok = false;
      const auto& f = r.failures.front();
      first_failure = where + " " + f.input + ": expected " + f.expected + ", got " + f.got;
    }
  }
};

// Runs body once per (config, J) in scope.
void for_each_subset(const std::vector<Config>& scope,
                     const std::function<void(const Fixture&, const TwistedAction&, const std::string&)>& body) {
  for (const Config& c : scope) {
    const Fixture f(c.type, c.delta);
    for (ParabolicSubset J : all_subsets(f.g().rank())) {
      const TwistedAction action(*f.twisted, J);
      body(f, action, c.type + "/" + c.delta + " J=" + format_subset_braced(J));
    }
  }
}

Outcome bijection() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture& f, const TwistedAction& action, const std::string& where) {
    const auto reps = enumerate_min_reps(f.g(), action.J(), {}, CosetKind::right_reps);
    const auto all = enumerate_stabilizing_sequences(*f.twisted, action.J());
    o.expect(all.size() == reps.size(), where + ": sequence count " + std::to_string(all.size()) + " vs |W^J| " +
                                            std::to_string(reps.size()));
    std::vector<ElementId> labels;
    for (const auto& seq : all) labels.push_back(sequence_to_label(*f.twisted, action.J(), seq));
    std::sort(labels.begin(), labels.end());
    o.expect(std::adjacent_find(labels.begin(), labels.end()) == labels.end(), where + ": labels not injective");
    o.expect(labels == reps, where + ": labels differ from W^J");
  });
  return o;
}

Outcome partition() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture& f, const TwistedAction& action, const std::string& where) {
    std::vector<int> hits(f.g().size(), 0);
    for (const TwistClass& c : class_decomposition(action)) {
      for (ElementId m : c.members) ++hits[m];
    }
    for (ElementId w = 0; w < f.g().size(); ++w) o.expect(hits[w] == 1, where + ": " + f.str(w) + " covered " + std::to_string(hits[w]) + " times");
  });
  return o;
}

Outcome minimality() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture&, const TwistedAction& action, const std::string& where) {
    o.absorb(check_min_equivalence(action), where);
  });
  return o;
}

Outcome order_axioms() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture&, const TwistedAction& action, const std::string& where) {
    o.absorb(check_order_axioms(action), where);
  });
  return o;
}

Outcome specialization() {
  Outcome o;
  std::vector<Config> scope = main_scope();
  scope.push_back({"B4", "id"});
  scope.push_back({"C4", "id"});
  scope.push_back({"F4", "id"});
  for (const Config& c : scope) {
    const Fixture f(c.type, c.delta);
    const TwistedAction action(*f.twisted, {});
    const ClosurePoset poset = closure_poset(action);
    o.expect(poset.nodes.size() == f.g().size(), c.type + ": node count");
    for (ElementId u = 0; u < f.g().size(); ++u) {
      for (ElementId v = 0; v < f.g().size(); ++v) {
        o.expect(poset.below(u, v) == bruhat_leq_by_descent(f.g(), u, v), c.type + "/" + c.delta + ": " + f.str(u) + " vs " + f.str(v));
      }
    }
  }
  return o;
}

Outcome reduction() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture&, const TwistedAction& action, const std::string& where) {
    o.absorb(check_reduction(action), where);
  });
  return o;
}

Outcome strong_conjugacy() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture&, const TwistedAction& action, const std::string& where) {
    o.absorb(check_strong_conjugacy(action), where);
  });
  return o;
}

Outcome root_inclusions() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture& f, const TwistedAction& action, const std::string& where) {
    for (ElementId w : enumerate_min_reps(f.g(), action.J(), {}, CosetKind::right_reps)) {
      const RootCheckReport r = radical_root_check(*f.twisted, action.J(), w);
      o.expect(r.passed, where + " w=" + f.str(w) + (r.witnesses.empty() ? "" : ": " + r.witnesses.front()));
    }
  });
  return o;
}

Outcome levi_identity() {
  Outcome o;
  for (const char* t : {"A1", "A2", "A3", "B2", "G2"}) {
    const Fixture f(t);
    for (ParabolicSubset J : all_subsets(f.g().rank())) o.absorb(check_parabolic_restriction(f.g(), J), t);
  }
  return o;
}

Outcome irreducibility() {
  Outcome o;
  for_each_subset(main_scope(), [&](const Fixture& f, const TwistedAction& action, const std::string& where) {
    if (action.J() == ParabolicSubset::full(f.g().rank())) return;
    for (ElementId w : enumerate_min_reps(f.g(), action.J(), {}, CosetKind::left_reps)) {
      const auto fast = is_irreducible(action, w);
      o.expect(fast.has_value() && *fast == irreducibility_oracle(*f.twisted, action.J(), w), where + " w=" + f.str(w));
    }
  });
  return o;
}

Outcome group_orders() {
  Outcome o;
  const std::vector<std::pair<char, std::vector<int>>> scope = {
      {'A', {1, 2, 3, 4, 5, 6}}, {'B', {2, 3, 4, 5}}, {'C', {2, 3, 4, 5}}, {'D', {4, 5, 6}}, {'G', {2}}, {'F', {4}}};
  for (const auto& [family, ranks] : scope) {
    for (int n : ranks) {
      const auto rs = build_root_system(cartan_datum(family, n));
      const GroupTable g(rs);
      const std::uint64_t expect = testing_support::expected_order(family, n);
      o.expect(g.size() == expect, std::string(1, family) + std::to_string(n) + ": " + std::to_string(g.size()) +
                                       " vs " + std::to_string(expect));
    }
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> configs = {
      {"--cartan", "D4", "--delta", "tri", "--j", "1,3", "poset", "--format", "json"},
      {"--cartan", "D4", "--delta", "tri", "--j", "1,3", "poset", "--format", "dot"},
      {"--cartan", "B3", "--delta", "id", "--j", "2", "poset", "--format", "json"},
      {"--cartan", "A4", "--delta", "flip", "--j", "", "poset", "--format", "dot"},
  };
  for (const auto& args : configs) {
    std::set<std::string> outputs;
    for (int run = 0; run < 3; ++run) {
      std::ostringstream out;
      std::ostringstream err;
      o.expect(cli::run(args, out, err) == 0, "poset exit status");
      outputs.insert(out.str());
    }
    o.expect(outputs.size() == 1, "poset output differs across runs");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0: no limit
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "stabilizing sequences biject onto W^J", 60, bijection},
      {2, "class decomposition partitions W", 30, partition},
      {3, "Bruhat-minimal = length-minimal in every orbit", 30, minimality},
      {4, "order well-defined, reflexive, antisymmetric, transitive", 60, order_axioms},
      {5, "closure poset at J=empty equals Bruhat order", 0, specialization},
      {6, "arrow reduction to w1 v with verified path", 0, reduction},
      {7, "minimal orbit elements strongly conjugate / cyclic-shift related", 0, strong_conjugacy},
      {8, "root inclusions along stabilizing sequences", 0, root_inclusions},
      {9, "Levi root identity for parabolic restriction", 0, levi_identity},
      {10, "irreducibility criterion matches subgroup oracle", 0, irreducibility},
      {11, "group orders match closed forms", 0, group_orders},
      {12, "poset output byte-identical across 3 runs", 0, determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_seconds == 0 || secs < c.limit_seconds;
    const bool pass = o.ok && in_time;
    failed += !pass;
    std::printf("%s criterion %2d: %s (%zu checks, %.2fs%s)\n", pass ? "PASS" : "FAIL", c.id, c.name, o.instances, secs,
                c.limit_seconds > 0 ? (", limit " + std::to_string(static_cast<int>(c.limit_seconds)) + "s").c_str() : "");
    if (!o.ok) std::printf("     first failure: %s\n", o.first_failure.c_str());
    if (!in_time) std::printf("     exceeded time limit\n");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
