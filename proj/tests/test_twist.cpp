#include <doctest.h>

#include <algorithm>
#include <set>

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

const std::vector<Case> kCases = {{"A2", "id"}, {"A2", "flip"}, {"A3", "id"}, {"A3", "flip"}, {"B2", "id"},
                                  {"B3", "id"}, {"G2", "id"},   {"D4", "tri"}, {"D4", "flip"}};

}  // namespace

TEST_CASE("named automorphisms") {
  CHECK(parse_automorphism("flip", parse_cartan("A3")).perm() == std::vector<int>{2, 1, 0});
  CHECK(parse_automorphism("flip", parse_cartan("D5")).perm() == std::vector<int>{0, 1, 2, 4, 3});
  CHECK(parse_automorphism("flip", parse_cartan("E6")).perm() == std::vector<int>{5, 1, 4, 3, 2, 0});
  const auto tri = parse_automorphism("tri", parse_cartan("D4"));
  const auto tri2 = parse_automorphism("tri2", parse_cartan("D4"));
  CHECK(tri.perm() == std::vector<int>{2, 1, 3, 0});
  CHECK(tri.inverse() == tri2);
  CHECK(parse_automorphism("4,2,1,3", parse_cartan("D4")) == tri2);
  CHECK(parse_automorphism("id", parse_cartan("G2")).is_identity());
  CHECK(named_automorphisms(parse_cartan("D4")).size() == 4);
  CHECK(named_automorphisms(parse_cartan("B3")).size() == 1);
  CHECK(named_automorphisms(parse_cartan("A3")).size() == 2);
}

TEST_CASE("automorphisms that do not preserve the Cartan matrix are rejected") {
  CHECK_THROWS_AS(parse_automorphism("2,1,3", parse_cartan("A3")), PreconditionError);
  CHECK_THROWS_AS(parse_automorphism("2,1", parse_cartan("B2")), PreconditionError);
  CHECK_THROWS_AS(parse_automorphism("flip", parse_cartan("B2")), PreconditionError);
  CHECK_THROWS_AS(parse_automorphism("flip", parse_cartan("A1")), PreconditionError);
  CHECK_THROWS_AS(parse_automorphism("tri", parse_cartan("A3")), PreconditionError);
  CHECK_THROWS_AS(parse_automorphism("1,1,3", parse_cartan("A3")), PreconditionError);
  CHECK_THROWS_AS(parse_automorphism("1,2", parse_cartan("A3")), PreconditionError);
}

TEST_CASE("property: induced automorphism of W is a length-preserving homomorphism") {
  for (const auto& c : kCases) {
    CAPTURE(c.type);
    CAPTURE(c.delta);
    const Fixture f(c.type, c.delta);
    const GroupTable& g = f.g();
    const TwistedGroup& tw = *f.twisted;
    for (int i = 0; i < g.rank(); ++i) CHECK(tw.delta(g.generator(i)) == g.generator(tw.automorphism()(i)));
    for (int trial = 0; trial < 200; ++trial) {
      const ElementId a = testing_support::random_element(g);
      const ElementId b = testing_support::random_element(g);
      CHECK(tw.delta(g.multiply(a, b)) == g.multiply(tw.delta(a), tw.delta(b)));
      CHECK(g.length(tw.delta(a)) == g.length(a));
      CHECK(tw.delta_inverse(tw.delta(a)) == a);
      CHECK(g.element(tw.delta(a)) == delta_on_element(tw.automorphism(), g.element(a)));
    }
  }
}

TEST_CASE("A2, J={1}: orbits and class decomposition") {
  const Fixture f("A2");
  const TwistedAction action(*f.twisted, f.J("1"));
  std::vector<std::size_t> sizes;
  for (const auto& b : action.orbits().blocks) sizes.push_back(b.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2});

  const auto classes = class_decomposition(action, Verify::yes);
  REQUIRE(classes.size() == 3);
  CHECK(f.str(classes[0].base) == "e");
  CHECK(words_of(f, classes[0].members) == std::vector<std::string>{"e", "1"});
  CHECK(words_of(f, classes[1].members) == std::vector<std::string>{"2", "1,2,1"});
  CHECK(words_of(f, classes[2].members) == std::vector<std::string>{"1,2", "2,1"});
  CHECK(classes[0].stabilizer_set == f.J("1"));
  CHECK(classes[1].stabilizer_set.empty());
}

TEST_CASE("twisted conjugation requires x in W_J") {
  const Fixture f("A2");
  const TwistedAction action(*f.twisted, f.J("1"));
  CHECK_THROWS_AS(twisted_conjugate(action, f.el("2"), f.el("1")), PreconditionError);
  CHECK(twisted_conjugate(action, f.el("1"), f.el("2")) == f.el("1,2,1"));
}

TEST_CASE("arrow steps") {
  const Fixture f("A2");
  const TwistedAction action(*f.twisted, f.J("1"));
  CHECK(arrow_step(action, f.el("1,2,1"), 0) == f.el("2"));
  CHECK(arrow_step(action, f.el("1,2"), 0) == f.el("2,1"));
  CHECK_THROWS_AS(arrow_step(action, f.el("1,2"), 1), PreconditionError);

  const Fixture flip("A2", "flip");
  const TwistedAction twisted_action(*flip.twisted, flip.J("1"));
  CHECK_FALSE(arrow_step(twisted_action, flip.el("e"), 0).has_value());
}

TEST_CASE("reduction of s1 s2 s1 for J={1}") {
  const Fixture f("A2");
  const TwistedAction action(*f.twisted, f.J("1"));
  const Reduction r = reduce_to_distinguished(action, f.el("1,2,1"));
  CHECK(f.str(r.distinguished) == "2");
  CHECK(r.parabolic_part == f.g().identity());
  REQUIRE(r.path.size() == 1);
  CHECK(r.path[0].j == 0);
  CHECK(f.str(r.path[0].to) == "2");
}

TEST_CASE("property: action axiom, orbits, and stabilizer types") {
  for (const auto& c : kCases) {
    const Fixture f(c.type, c.delta);
    const GroupTable& g = f.g();
    for (ParabolicSubset J : all_subsets(g.rank())) {
      CAPTURE(c.type);
      CAPTURE(c.delta);
      CAPTURE(format_subset(J));
      const TwistedAction action(*f.twisted, J);
      const auto& WJ = action.parabolic();
      std::uniform_int_distribution<std::size_t> pick(0, WJ.size() - 1);
      for (int trial = 0; trial < 50; ++trial) {
        const ElementId x1 = WJ[pick(testing_support::rng())];
        const ElementId x2 = WJ[pick(testing_support::rng())];
        const ElementId y = testing_support::random_element(g);
        CHECK(twisted_conjugate(action, g.multiply(x1, x2), y) ==
              twisted_conjugate(action, x1, twisted_conjugate(action, x2, y)));
        CHECK(action.orbits().same_block(y, twisted_conjugate(action, x1, y)));
      }
      // orbits are exactly the sets {x . y}
      for (int trial = 0; trial < 10; ++trial) {
        const ElementId y = testing_support::random_element(g);
        std::set<ElementId> direct;
        for (ElementId x : WJ) direct.insert(twisted_conjugate(action, x, y));
        const auto& block = action.orbits().blocks[action.orbits().block_of[y]];
        CHECK(std::vector<ElementId>(direct.begin(), direct.end()) == block);
      }
      for (ElementId w : enumerate_min_reps(g, J, {}, CosetKind::right_reps)) {
        const ParabolicSubset K = stabilizer_type(*f.twisted, J, w);
        CHECK(K == stabilizer_type_oracle(*f.twisted, J, w));
        CHECK(adjoint_image(g, w, K) == f.twisted->automorphism()(K));
      }
    }
  }
}

TEST_CASE("property: strong conjugacy and cyclic shift classes") {
  for (const auto& c : kCases) {
    const Fixture f(c.type, c.delta);
    const GroupTable& g = f.g();
    for (ParabolicSubset J : all_subsets(g.rank())) {
      const TwistedAction action(*f.twisted, J);
      const Partition strong = strong_conjugacy_classes(action);
      const Partition shift = cyclic_shift_classes(action);
      for (int trial = 0; trial < 40; ++trial) {
        const ElementId a = testing_support::random_element(g);
        const ElementId b = testing_support::random_element(g);
        CHECK(strongly_conjugate(action, a, b) == strongly_conjugate(action, b, a));
        CHECK(strongly_conjugate(action, a, b) == strong.same_block(a, b));
        if (strong.same_block(a, b)) {
          CHECK(g.length(a) == g.length(b));
          CHECK(action.orbits().same_block(a, b));
        }
        if (shift.same_block(a, b)) {
          CHECK(arrow_reachable(action, a, b));
          CHECK(arrow_reachable(action, b, a));
          CHECK(strong.same_block(a, b));
        }
      }
    }
  }
}

TEST_CASE("support and twisted support") {
  const Fixture f("A3", "flip");
  CHECK(support(f.g(), f.el("1,2")) == f.J("1,2"));
  CHECK(support(f.g(), f.el("e")).empty());
  CHECK(twisted_support(*f.twisted, f.el("1")) == f.J("1,3"));
  CHECK(twisted_support(*f.twisted, f.el("2")) == f.J("2"));
  CHECK(delta_closure(f.twisted->automorphism(), f.J("1,2")) == f.J("1,2,3"));
}

TEST_CASE("property: support is the set of letters of a reduced word") {
  const Fixture f("D4");
  const GroupTable& g = f.g();
  for (ElementId w = 0; w < g.size(); ++w) {
    ParabolicSubset letters;
    for (int i : g.word(w)) letters.insert(i);
    CHECK(support(g, w) == letters);
  }
}
