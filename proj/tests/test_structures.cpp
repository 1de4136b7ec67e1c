#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "tempobridge/structures.hpp"

using namespace tempobridge;

TEST_CASE("fixtures validate cleanly") {
  CHECK(validate(fixtures::l0()).empty());
  CHECK(validate(fixtures::k0()).empty());
  CHECK(validate(fixtures::t0()).empty());
  CHECK(validate(fixtures::m0()).empty());
  for (const StructureKind k : {StructureKind::Ks, StructureKind::Lts, StructureKind::Kts,
                                StructureKind::Kmts}) {
    CHECK(validate(fixtures::dead(k)).empty());
  }
}

TEST_CASE("kind names") {
  CHECK(to_string(StructureKind::Ks) == "ks");
  CHECK(to_string(StructureKind::Lts) == "lts");
  CHECK(to_string(StructureKind::Kts) == "kts");
  CHECK(to_string(StructureKind::Kmts) == "kmts");
}

TEST_CASE("lookups") {
  const Structure m = fixtures::m0();
  CHECK(m.state_id("u1") == StateId{1});
  CHECK_FALSE(m.state_id("zz").has_value());
  CHECK(m.action_index("b") == std::size_t{1});
  CHECK_FALSE(m.action_index("c").has_value());
  CHECK(m.prop_index("p") == std::size_t{0});
  CHECK(m.action_token(0) == "a!");
  CHECK(m.action_token(1) == "b?");
  CHECK(fixtures::l0().action_token(0) == "a");
  CHECK(m.label_of(0, 0) == Truth3::Bot);
  CHECK(m.label_of(1, 0) == Truth3::True);
}

TEST_CASE("validate flags structural defects") {
  SUBCASE("duplicate state name") {
    Structure m = fixtures::k0();
    m.states[1] = "t0";
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("duplicate ordered pair") {
    Structure m = fixtures::l0();
    m.transitions.push_back({0, 1, 0b10});
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("label outside the alphabet") {
    Structure m = fixtures::l0();
    m.transitions[0].labels = 0b100;
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("state-labeled structures have unlabeled transitions") {
    Structure m = fixtures::k0();
    m.transitions[0].labels = 1;
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("endpoint out of range") {
    Structure m = fixtures::k0();
    m.transitions[0].dst = 9;
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("partial labeling") {
    Structure m = fixtures::k0();
    m.labeling.pop_back();
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("unknown entry in a two-valued labeling") {
    Structure m = fixtures::k0();
    m.labeling[0] = Truth3::Bot;
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("modifiers must pair with the alphabet") {
    Structure m = fixtures::m0();
    m.action_mods.pop_back();
    CHECK_FALSE(validate(m).empty());
    Structure k = fixtures::t0();
    k.action_mods = {ActMod::Must};
    CHECK_FALSE(validate(k).empty());
  }
  SUBCASE("alphabet cap") {
    Structure m = fixtures::l0();
    m.actions.clear();
    for (int i = 0; i < 65; ++i) m.actions.push_back("a" + std::to_string(i));
    m.transitions.clear();
    CHECK_FALSE(validate(m).empty());
  }
  SUBCASE("require_valid throws with context") {
    Structure m = fixtures::k0();
    m.labeling[0] = Truth3::Bot;
    CHECK_THROWS_AS(require_valid(m), std::invalid_argument);
  }
}

TEST_CASE("adjacency and deadlocks") {
  const Structure m = fixtures::l0();
  const Adjacency adj(m);
  REQUIRE(adj.out(0).size() == 1);
  CHECK(m.transitions[adj.out(0)[0]].dst == 1);
  CHECK_FALSE(deadlocked(m, 0));
  CHECK_FALSE(deadlocked(m, 1));
  CHECK(deadlocked(fixtures::t0(), 1));
  CHECK(adj.deadlocked(0) == deadlocked(m, 0));
}

TEST_CASE("label-set and labeling conversions") {
  const Structure l = fixtures::l0();
  SUBCASE("alpha_prime expands a mask to a row") {
    const auto row = alpha_prime(0b01, 2);
    REQUIRE(row.size() == 2);
    CHECK(row[0]);
    CHECK_FALSE(row[1]);
    CHECK_THROWS_AS((void)alpha_prime(0b100, 2), std::invalid_argument);
  }
  SUBCASE("omega_prime collects the true props") {
    const Structure k = fixtures::k0();
    CHECK(omega_prime(k, 0) == LabelMask{0});
    CHECK(omega_prime(k, 1) == LabelMask{1});
  }
  SUBCASE("three-valued variants carry modifiers") {
    const Structure m = fixtures::m0();
    const auto row = alpha_prime3(0b01, m);
    REQUIRE(row.size() == 2);
    CHECK(row[0] == Truth3::True);   // a! present
    CHECK(row[1] == Truth3::False);  // b absent
    const auto may = alpha_prime3(0b10, m);
    CHECK(may[1] == Truth3::Bot);  // b? present
    CHECK(omega_prime3(m, 0) == std::vector<std::string>{"p?"});
    CHECK(omega_prime3(m, 1) == std::vector<std::string>{"p!"});
  }
  SUBCASE("masks from tokens round-trip rendering") {
    CHECK(label_mask_of(l, {"a"}) == LabelMask{0b01});
    CHECK(label_mask_of(l, {"a", "b"}) == LabelMask{0b11});
    CHECK(render_labels(l, 0b11) == "{a,b}");
    CHECK(render_labels(l, 0) == "tau");
    CHECK_THROWS_AS((void)label_mask_of(l, {"zz"}), std::invalid_argument);
    const Structure m = fixtures::m0();
    CHECK(label_mask_of(m, {"a!"}) == LabelMask{0b01});
    CHECK_THROWS_AS((void)label_mask_of(m, {"a?"}), std::invalid_argument);
  }
}
