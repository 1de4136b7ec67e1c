#include <string>
#include <vector>

#include "doctest.h"
#include "fixtures.hpp"
#include "tempobridge/checker2.hpp"
#include "tempobridge/mappings.hpp"
#include "tempobridge/parser.hpp"
#include "tempobridge/testkit.hpp"

using namespace tempobridge;

namespace {

std::string mapped(MappingId id, const Structure& source, const std::string& text) {
  const MappingBundle b = apply_mapping(id, source);
  return render_formula(map_formula(b, parse_formula(text, source_logic(id))));
}

}  // namespace

TEST_CASE("identifier and table lookups") {
  CHECK(std::string(to_string(MappingId::Ks)) == "ks");
  CHECK(std::string(to_string(MappingId::Lts2Prime)) == "lts2'");
  const char* const spellings[] = {"ks",  "lts",  "ks2",  "lts2",
                                   "ks'", "lts'", "ks2'", "lts2'"};
  for (int i = 0; i < 8; ++i) {
    auto id = mapping_from_token(spellings[i]);
    REQUIRE(id.has_value());
    CHECK(static_cast<int>(*id) == i);
    CHECK(std::string(to_string(*id)) == spellings[i]);
  }
  CHECK(mapping_from_token("ksp") == MappingId::KsPrime);
  CHECK(mapping_from_token("lts2_prime") == MappingId::Lts2Prime);
  CHECK_FALSE(mapping_from_token("kss").has_value());

  CHECK(source_kind(MappingId::Ks) == StructureKind::Lts);
  CHECK(target_kind(MappingId::Ks) == StructureKind::Ks);
  CHECK(source_kind(MappingId::Lts) == StructureKind::Ks);
  CHECK(target_kind(MappingId::Lts) == StructureKind::Lts);
  CHECK(source_kind(MappingId::Ks2Prime) == StructureKind::Kts);
  CHECK(target_kind(MappingId::Ks2Prime) == StructureKind::Ks);
  CHECK(target_kind(MappingId::Lts2) == StructureKind::Lts);
  CHECK(source_logic(MappingId::Ks) == LogicId::ActlStar);
  CHECK(target_logic(MappingId::Ks) == LogicId::CtlStar);
  CHECK(source_logic(MappingId::KsPrime) == LogicId::Actl);
  CHECK(target_logic(MappingId::KsPrime) == LogicId::Ctl);
  CHECK(source_logic(MappingId::Ks2) == LogicId::UctlStar);
  CHECK(source_logic(MappingId::Lts2Prime) == LogicId::Uctl);
  CHECK(target_logic(MappingId::Lts2Prime) == LogicId::Actl);
}

TEST_CASE("action world to state world: structure") {
  const MappingBundle b = apply_mapping(MappingId::Ks, fixtures::l0());
  CHECK(b.target.kind == StructureKind::Ks);
  CHECK(b.target.states ==
        std::vector<std::string>{"s0", "s1", "(s0,s1)", "(s1,s1)"});
  CHECK(b.target.props == std::vector<std::string>{"F", "a", "b"});
  CHECK(b.target.transitions ==
        std::vector<Transition>{{0, 2, 0}, {2, 1, 0}, {1, 3, 0}, {3, 1, 0}});
  // Original states carry only the anchor atom; midpoints carry their labels.
  CHECK(b.target.label_of(0, 0) == Truth3::True);
  CHECK(b.target.label_of(0, 1) == Truth3::False);
  CHECK(b.target.label_of(2, 0) == Truth3::False);
  CHECK(b.target.label_of(2, 1) == Truth3::True);   // the a-step midpoint
  CHECK(b.target.label_of(3, 1) == Truth3::False);  // the silent-step midpoint
  CHECK(b.image == std::vector<StateId>{0, 1});
  REQUIRE(b.provenance.size() == 4);
  CHECK(b.provenance[0].kind == Provenance::Kind::Original);
  CHECK(b.provenance[2].kind == Provenance::Kind::TransitionPair);
  CHECK(b.provenance[2].state == 0);
  CHECK(b.provenance[2].other == 1);

  SUBCASE("paths double through the midpoints") {
    const Lasso img = map_path(b, Lasso{0, {0}, {1}});
    CHECK(img == Lasso{0, {0, 1}, {2, 3}});
    CHECK(lasso_violations(b.target, img).empty());
    CHECK(map_path(b, Lasso{1, {}, {1}}) == Lasso{1, {}, {2, 3}});
    CHECK_THROWS_AS((void)map_path(b, Lasso{0, {1}, {}}), std::invalid_argument);
  }
}

TEST_CASE("state world to action world: structure") {
  const MappingBundle b = apply_mapping(MappingId::Lts, fixtures::k0());
  CHECK(b.target.kind == StructureKind::Lts);
  CHECK(b.target.states == std::vector<std::string>{"t0", "t1", "t0_", "t1_"});
  CHECK(b.target.actions == std::vector<std::string>{"F", "p"});
  CHECK(b.target.transitions ==
        std::vector<Transition>{{0, 1, 0}, {1, 1, 0}, {0, 2, 1},
                                {2, 0, 0}, {1, 3, 1}, {3, 1, 2}});
  CHECK(b.image == std::vector<StateId>{0, 1});
  CHECK(b.provenance[2].kind == Provenance::Kind::Underline);
  CHECK(b.provenance[3].state == 1);

  SUBCASE("the direct image never enters the detour loop") {
    const Lasso img = map_path(b, Lasso{0, {0}, {1}});
    CHECK(img == Lasso{0, {0}, {1}});
    CHECK(lasso_violations(b.target, img).empty());
  }
}

TEST_CASE("hybrid sources split by labeling world") {
  const MappingBundle state_world = apply_mapping(MappingId::Ks2, fixtures::t0());
  CHECK(state_world.target.kind == StructureKind::Ks);
  CHECK(state_world.target.states == std::vector<std::string>{"s0", "s1", "(s0,s1)"});
  CHECK(state_world.target.props == std::vector<std::string>{"F", "p", "a"});
  const MappingBundle action_world = apply_mapping(MappingId::Lts2, fixtures::t0());
  CHECK(action_world.target.kind == StructureKind::Lts);
  CHECK(action_world.target.states ==
        std::vector<std::string>{"s0", "s1", "s0_", "s1_"});
  CHECK(action_world.target.actions == std::vector<std::string>{"F", "a", "p"});
}

TEST_CASE("star formula translations") {
  CHECK(mapped(MappingId::Ks, fixtures::l0(), "E[true U X true]") ==
        "E[!(F & !true) U (F & X X true)]");
  CHECK(mapped(MappingId::Ks, fixtures::l0(), "E X_a true") == "E (X a & X X true)");
  CHECK(mapped(MappingId::Lts, fixtures::k0(), "E X p") ==
        "E (![true U ((E X_F true & !!E X E X_F true) & X !E X_F true)]"
        " & X (E X_F true & E X_F X_p true))");
  CHECK(mapped(MappingId::Lts, fixtures::k0(), "E[!p U p]") ==
        "E (![true U ((E X_F true & !!E X E X_F true) & X !E X_F true)]"
        " & [(E X_F true & !E X_F X_p true) U (E X_F true & E X_F X_p true)])");
  CHECK(mapped(MappingId::Ks2, fixtures::t0(), "E[p U X_a p]") ==
        "E[!(F & !p) U (F & (X a & X X p))]");
  CHECK(mapped(MappingId::Lts2, fixtures::t0(), "E[p U X_a p]") ==
        "E (![true U ((E X_F true & !!E X E X_F true) & X !E X_F true)]"
        " & [(E X_F true & E X_F X_p true) U (E X_F true & X_a E X_F X_p true)])");
}

TEST_CASE("branching formula translations") {
  CHECK(mapped(MappingId::KsPrime, fixtures::l0(), "E X_{a} true") ==
        "E X ((!F & a) & E X (F & true))");
  CHECK(mapped(MappingId::KsPrime, fixtures::l0(), "E[true {a}U{tau} true]") ==
        "(true & E X (a & E X E[!(!(F & true) & !(!F & a)) U"
        " (!F & E[(!F & (!a & !b)) U (F & true)])]))");
  CHECK(mapped(MappingId::LtsPrime, fixtures::k0(), "E X p") ==
        "E X_{!F} E X_F E X_p true");
  CHECK(mapped(MappingId::LtsPrime, fixtures::k0(), "E[!p U p]") ==
        "E[(E X_F true & !E X_F E X_p true) U (E X_F true & E X_F E X_p true)]");
  CHECK(mapped(MappingId::LtsPrime, fixtures::k0(), "A X p") ==
        "!!(!!E X_{!F} true & !E X_{!F} !E X_F E X_p true)");
  CHECK(mapped(MappingId::Ks2Prime, fixtures::t0(), "E X_{a} p") ==
        "E X ((!F & a) & E X (F & p))");
  CHECK(mapped(MappingId::Lts2Prime, fixtures::t0(), "E X_{a} p") ==
        "E X_{a} (E X_F true & E X_F E X_p true)");
  CHECK(mapped(MappingId::Lts2Prime, fixtures::t0(), "E[p {a}U{tau} p]") ==
        "E[(E X_F true & E X_F E X_p true) {a}U{tau}"
        " (E X_F true & E X_F E X_p true)]");
}

TEST_CASE("translated formulas conform to the target grammar") {
  const struct {
    MappingId id;
    const Structure source;
    const char* text;
  } cases[] = {
      {MappingId::Ks, fixtures::l0(), "E[X_a true U X_b true]"},
      {MappingId::Lts, fixtures::k0(), "E(X p & [p U q])"},
      {MappingId::Ks2, fixtures::t0(), "E X X_a p"},
      {MappingId::Lts2, fixtures::t0(), "E[p U X_a p]"},
      {MappingId::KsPrime, fixtures::l0(), "E[true {a}W{b} true]"},
      {MappingId::LtsPrime, fixtures::k0(), "A[p W q]"},
      {MappingId::Ks2Prime, fixtures::t0(), "E[p {a}U{tau} p]"},
      {MappingId::Lts2Prime, fixtures::t0(), "E[p {!a}W{tau} p]"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.text);
    const MappingBundle b = apply_mapping(c.id, c.source);
    const StatePtr f = parse_formula(c.text, source_logic(c.id));
    CHECK(conforms(map_formula(b, f), target_logic(c.id)).empty());
  }
}

TEST_CASE("translation domain limits") {
  // The branching translators cover the native action-constrained clauses;
  // the state-operand spellings stay outside their catalog.
  const MappingBundle ksp = apply_mapping(MappingId::KsPrime, fixtures::l0());
  CHECK_THROWS_AS(
      (void)map_formula(ksp, parse_formula("E X true", LogicId::Actl)),
      std::invalid_argument);
  const MappingBundle ks2p = apply_mapping(MappingId::Ks2Prime, fixtures::t0());
  CHECK_THROWS_AS(
      (void)map_formula(ks2p, parse_formula("E[p U q]", LogicId::Uctl)),
      std::invalid_argument);
  // The state-world translator accepts its whole source logic.
  const MappingBundle ltsp = apply_mapping(MappingId::LtsPrime, fixtures::k0());
  CHECK_NOTHROW((void)map_formula(ltsp, parse_formula("E[p W q]", LogicId::Ctl)));

  // Path-level translation exists for the star directions only.
  const MappingBundle ks = apply_mapping(MappingId::Ks, fixtures::l0());
  CHECK_NOTHROW((void)map_path_formula(ks, mk_x(mk_embed(mk_true()))));
  CHECK_THROWS_AS((void)map_path_formula(ksp, mk_x(mk_embed(mk_true()))),
                  std::invalid_argument);
}

TEST_CASE("mutation switches are validated") {
  const MappingBundle ks = apply_mapping(MappingId::Ks, fixtures::l0());
  const StatePtr f = parse_formula("E X true", LogicId::ActlStar);
  CHECK(equals(map_formula_mutated(ks, f, 0), map_formula(ks, f)));
  CHECK_FALSE(equals(map_formula_mutated(ks, f, 1), map_formula(ks, f)));
  // Switch 1 alters the plain next-step clause only; a formula without one
  // translates identically.
  const StatePtr fa = parse_formula("E X_a true", LogicId::ActlStar);
  CHECK(equals(map_formula_mutated(ks, fa, 1), map_formula(ks, fa)));
  CHECK_THROWS_AS((void)map_formula_mutated(ks, f, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)map_formula_mutated(ks, f, 9), std::invalid_argument);
  CHECK_THROWS_AS((void)map_formula_mutated(ks, f, -1), std::invalid_argument);
}

TEST_CASE("source preconditions") {
  CHECK_THROWS_AS((void)apply_mapping(MappingId::Ks, fixtures::k0()),
                  std::invalid_argument);  // wrong labeling world
  Structure reserved = fixtures::l0();
  reserved.actions[0] = "F";
  CHECK_THROWS_AS((void)apply_mapping(MappingId::Ks, reserved),
                  std::invalid_argument);
  Structure reserved_prop = fixtures::k0();
  reserved_prop.props[0] = "F";
  CHECK_THROWS_AS((void)apply_mapping(MappingId::Lts, reserved_prop),
                  std::invalid_argument);
  Structure overlap = fixtures::t0();
  overlap.props[0] = "a";  // now both a proposition and an action
  CHECK_THROWS_AS((void)apply_mapping(MappingId::Ks2, overlap),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)apply_mapping(MappingId::Lts2Prime, overlap),
                  std::invalid_argument);
}

TEST_CASE("action predicates read as propositional tests") {
  const std::vector<std::string> ab = {"a", "b"};
  CHECK(render_formula(chi_to_prop(mk_tau(), ab)) == "(!a & !b)");
  CHECK(render_formula(chi_to_prop(mk_tau(), {})) == "true");
  CHECK(render_formula(chi_to_prop(mk_act("a"), ab)) == "a");
  CHECK(render_formula(chi_to_prop(mk_anda(mk_nota(mk_act("a")), mk_act("b")), ab)) ==
        "(!a & b)");
  CHECK_THROWS_AS((void)chi_to_prop(mk_act("z"), ab), std::invalid_argument);
}

TEST_CASE("image sizes follow the structure laws") {
  const MappingId ids[] = {MappingId::Ks,      MappingId::Lts,
                           MappingId::Ks2,     MappingId::Lts2,
                           MappingId::KsPrime, MappingId::LtsPrime,
                           MappingId::Ks2Prime, MappingId::Lts2Prime};
  GenParams params;
  params.seed = 41;
  params.max_states = 6;
  SplitMix64 rng(params.seed);
  for (MappingId id : ids) {
    const bool to_state_world = target_kind(id) == StructureKind::Ks;
    for (int i = 0; i < 50; ++i) {
      const Structure src = gen_structure(source_kind(id), params, rng);
      const MappingBundle b = apply_mapping(id, src);
      const std::size_t s = src.n_states();
      const std::size_t t = src.transitions.size();
      if (to_state_world) {
        CHECK(b.target.n_states() == s + t);
        CHECK(b.target.transitions.size() == 2 * t);
      } else {
        CHECK(b.target.n_states() == 2 * s);
        CHECK(b.target.transitions.size() == t + 2 * s);
      }
      CHECK(lasso_violations(b.target, Lasso{b.image[0], {}, {}}).empty());
    }
  }
}
