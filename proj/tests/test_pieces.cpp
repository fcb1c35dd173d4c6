#include <doctest.h>

#include <algorithm>

#include "flagstrata/error.hpp"
#include "flagstrata/oracle.hpp"
#include "support.hpp"

using namespace flagstrata;
using testing_support::Fixture;
using testing_support::words_of;

namespace {

struct Case {
  const char* type;
  const char* delta;
};

const std::vector<Case> kCases = {{"A1", "id"}, {"A2", "id"}, {"A2", "flip"}, {"A3", "id"}, {"A3", "flip"},
                                  {"B2", "id"}, {"B3", "id"},  {"C3", "id"},   {"G2", "id"}, {"D4", "tri"}};

}  // namespace

TEST_CASE("stabilizing sequence of s1 s2 for A2, J={1}") {
  const Fixture f("A2");
  const TwistedSequence seq = sequence_for(*f.twisted, f.J("1"), f.el("1,2"));
  REQUIRE(seq.steps.size() == 2);
  CHECK(seq.steps[0].J == f.J("1"));
  CHECK(f.str(seq.steps[0].w) == "2");
  CHECK(seq.steps[1].J.empty());
  CHECK(f.str(seq.steps[1].w) == "2,1");
  CHECK(seq.stable_J.empty());
  CHECK(f.str(seq.stable_w) == "2,1");
  CHECK(sequence_to_label(*f.twisted, f.J("1"), seq) == f.el("1,2"));
  CHECK_FALSE(sequence_violation(*f.twisted, f.J("1"), seq).has_value());
}

TEST_CASE("tampered sequences are rejected") {
  const Fixture f("A2");
  TwistedSequence seq = sequence_for(*f.twisted, f.J("1"), f.el("1,2"));
  seq.steps[0].w = f.el("1,2");  // not minimal in its coset
  CHECK(sequence_violation(*f.twisted, f.J("1"), seq).has_value());
  TwistedSequence wrong_J = sequence_for(*f.twisted, f.J("1"), f.el("1,2"));
  wrong_J.steps[1].J = f.J("1");
  CHECK(sequence_violation(*f.twisted, f.J("1"), wrong_J).has_value());
}

TEST_CASE("sequence_for requires w in W^J") {
  const Fixture f("A2");
  CHECK_THROWS_AS(sequence_for(*f.twisted, f.J("1"), f.el("2,1")), PreconditionError);
}

TEST_CASE("A2, J={1}: the closure poset is a chain") {
  const Fixture f("A2");
  const TwistedAction action(*f.twisted, f.J("1"));
  const ClosurePoset poset = closure_poset(action);
  REQUIRE(poset.nodes.size() == 3);
  std::vector<ElementId> labels;
  for (const auto& n : poset.nodes) labels.push_back(n.index_w);
  CHECK(words_of(f, labels) == std::vector<std::string>{"e", "2", "2,1"});
  CHECK(poset.hasse == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
  CHECK(words_of(f, piece_closure(action, f.el("2"))) == std::vector<std::string>{"e", "2"});
  CHECK(words_of(f, piece_closure(action, f.el("e"))) == std::vector<std::string>{"e"});
  CHECK(words_of(f, piece_closure(action, f.el("1,2,1"))) == std::vector<std::string>{"e", "2", "2,1"});
}

TEST_CASE("twisted order on W^J for A2, J={1}") {
  const Fixture f("A2");
  const TwistedAction action(*f.twisted, f.J("1"));
  CHECK(twisted_leq(action, f.el("e"), f.el("2")));
  CHECK(twisted_leq(action, f.el("2"), f.el("1,2")));
  CHECK_FALSE(twisted_leq(action, f.el("1,2"), f.el("2")));
  // the second argument may lie outside W^J
  CHECK(twisted_leq(action, f.el("2"), f.el("2,1")));
  CHECK_THROWS_AS(twisted_leq(action, f.el("2,1"), f.el("2")), PreconditionError);
}

TEST_CASE("hasse_edges on a small relation") {
  // 0 < 1 < 3, 0 < 2 < 3
  std::vector<std::vector<char>> leq = {{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 1}};
  CHECK(hasse_edges(leq) == std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TEST_CASE("irreducibility examples") {
  const Fixture flip("A2", "flip");
  CHECK(is_irreducible(TwistedAction(*flip.twisted, flip.J("1")), flip.el("2")) == true);
  const Fixture a3("A3");
  CHECK(is_irreducible(TwistedAction(*a3.twisted, a3.J("1")), a3.el("2")) == false);
  CHECK_FALSE(is_irreducible(TwistedAction(*a3.twisted, a3.J("1,2,3")), a3.el("e")).has_value());
  CHECK_THROWS_AS(is_irreducible(TwistedAction(*a3.twisted, a3.J("1")), a3.el("1")), PreconditionError);
}

TEST_CASE("parabolic restriction type") {
  const Fixture f("A2");
  CHECK(parabolic_restriction_type(f.g(), f.J("1"), f.J("2"), f.el("2,1"), Verify::yes) == f.J("1"));
  CHECK(parabolic_restriction_type(f.g(), f.J("1"), f.J("2"), f.el("e"), Verify::yes).empty());
}

TEST_CASE("property: sequences biject onto W^J") {
  for (const auto& c : kCases) {
    const Fixture f(c.type, c.delta);
    for (ParabolicSubset J : all_subsets(f.g().rank())) {
      CAPTURE(c.type);
      CAPTURE(c.delta);
      CAPTURE(format_subset(J));
      const auto reps = enumerate_min_reps(f.g(), J, {}, CosetKind::right_reps);
      const auto all = enumerate_stabilizing_sequences(*f.twisted, J);
      CHECK(all.size() == reps.size());
      std::vector<ElementId> labels;
      for (const auto& seq : all) {
        CHECK_FALSE(sequence_violation(*f.twisted, J, seq).has_value());
        labels.push_back(sequence_to_label(*f.twisted, J, seq));
      }
      std::sort(labels.begin(), labels.end());
      CHECK(labels == reps);
      for (ElementId w : reps) {
        const TwistedSequence seq = sequence_for(*f.twisted, J, w);
        CHECK(sequence_to_label(*f.twisted, J, seq) == w);
        CHECK(seq.stable_J == stabilizer_type(*f.twisted, J, w));
        CHECK(seq.steps.size() <= static_cast<std::size_t>(J.size()) + 2);
        CHECK(radical_root_check(*f.twisted, J, w).passed);
      }
    }
  }
}

TEST_CASE("property: the order agrees with the literal oracle and is a partial order") {
  for (const auto& c : kCases) {
    const Fixture f(c.type, c.delta);
    for (ParabolicSubset J : all_subsets(f.g().rank())) {
      CAPTURE(c.type);
      CAPTURE(c.delta);
      CAPTURE(format_subset(J));
      const TwistedAction action(*f.twisted, J);
      const auto reps = enumerate_min_reps(f.g(), J, {}, CosetKind::right_reps);
      const auto oracle = closure_oracle(*f.twisted, J);
      const std::size_t n = reps.size();
      for (std::size_t a = 0; a < n; ++a) {
        CHECK(oracle[a][a]);
        for (std::size_t b = 0; b < n; ++b) {
          const bool fast = twisted_leq(action, reps[a], reps[b], Verify::yes);
          CHECK(fast == (oracle[a][b] != 0));
          if (a != b && oracle[a][b]) CHECK_FALSE(oracle[b][a]);
          for (std::size_t k = 0; k < n && oracle[a][b]; ++k) {
            if (oracle[b][k]) CHECK(oracle[a][k]);
          }
        }
      }
    }
  }
}

TEST_CASE("property: closure poset at J = empty is the Bruhat order") {
  for (const auto& c : kCases) {
    const Fixture f(c.type, c.delta);
    const TwistedAction action(*f.twisted, {});
    const ClosurePoset poset = closure_poset(action);
    REQUIRE(poset.nodes.size() == f.g().size());
    for (ElementId u = 0; u < f.g().size(); ++u) {
      for (ElementId v = 0; v < f.g().size(); ++v) {
        CHECK(poset.below(u, v) == testing_support::subword_leq(f.g(), u, v));
      }
    }
  }
}

TEST_CASE("property: irreducibility agrees with the subgroup-containment oracle") {
  for (const auto& c : kCases) {
    const Fixture f(c.type, c.delta);
    for (ParabolicSubset J : all_subsets(f.g().rank())) {
      if (J == ParabolicSubset::full(f.g().rank())) continue;
      const TwistedAction action(*f.twisted, J);
      for (ElementId w : enumerate_min_reps(f.g(), J, {}, CosetKind::left_reps)) {
        CAPTURE(c.type);
        CAPTURE(format_subset(J));
        CAPTURE(f.str(w));
        CHECK(is_irreducible(action, w) == irreducibility_oracle(*f.twisted, J, w));
      }
    }
  }
}

TEST_CASE("property: parabolic restriction satisfies the Levi root identity") {
  for (const char* t : {"A3", "B2", "G2"}) {
    const Fixture f(t);
    for (ParabolicSubset J : all_subsets(f.g().rank())) {
      for (ParabolicSubset K : all_subsets(f.g().rank())) {
        for (ElementId w : enumerate_min_reps(f.g(), J, {}, CosetKind::left_reps)) {
          CHECK_NOTHROW(parabolic_restriction_type(f.g(), J, K, w, Verify::yes));
        }
      }
    }
  }
}
