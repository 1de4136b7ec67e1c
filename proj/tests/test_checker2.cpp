#include "doctest.h"
#include "fixtures.hpp"
#include "tempobridge/checker2.hpp"
#include "tempobridge/parser.hpp"
#include "tempobridge/testkit.hpp"

using namespace tempobridge;

namespace {

bool holds(const Structure& m, StateId s, const std::string& text, LogicId logic) {
  const CheckResult r = check_state(m, s, parse_formula(text, logic), logic, {});
  CHECK_FALSE(r.bounded);
  return r.value;
}

}  // namespace

TEST_CASE("reachability verdicts on the two-state cycle") {
  const Structure m = fixtures::k0();  // p holds at t1 only; t0 -> t1 -> t1
  CHECK(holds(m, 0, "E[!p U p]", LogicId::Ctl));
  CHECK(holds(m, 1, "E[!p U p]", LogicId::Ctl));
  CHECK(holds(m, 0, "E X p", LogicId::Ctl));
  CHECK_FALSE(holds(m, 0, "p", LogicId::Ctl));
  CHECK(holds(m, 0, "A X p", LogicId::Ctl));
  CHECK(holds(m, 0, "E[p W !p]", LogicId::Ctl));     // right disjunct at once
  CHECK(holds(m, 1, "E[p W !true]", LogicId::Ctl));  // perpetual left arm
  CHECK_FALSE(holds(m, 1, "E[!p U !p]", LogicId::Ctl));
  CHECK_FALSE(holds(m, 1, "E[p U !p]", LogicId::Ctl));
  CHECK(holds(m, 0, "E X X p", LogicId::CtlStar));
  CHECK_FALSE(holds(m, 0, "E X X !p", LogicId::CtlStar));
  CHECK(holds(m, 0, "E[!p U p]", LogicId::CtlStar));
}

TEST_CASE("action-constrained verdicts on the two-state labeled system") {
  const Structure m = fixtures::l0();  // s0 -a-> s1, s1 -tau-> s1
  CHECK(holds(m, 0, "E[true {a}U{tau} true]", LogicId::Actl));
  CHECK(holds(m, 0, "E X_{a} true", LogicId::Actl));
  CHECK_FALSE(holds(m, 0, "E X_{tau} true", LogicId::Actl));
  CHECK(holds(m, 1, "E X_{tau} true", LogicId::Actl));
  CHECK_FALSE(holds(m, 1, "E X_{a} true", LogicId::Actl));
  CHECK(holds(m, 0, "E[true {a}W{b} true]", LogicId::Actl) ==
        false);  // no b step ever happens, and a cannot continue forever
  CHECK(holds(m, 1, "E[true {tau}W{a} true]", LogicId::Actl));  // silent loop
  CHECK(holds(m, 0, "E X_a X_tau true", LogicId::ActlStar) ==
        false);  // X_tau names an action literally; no action is named tau
  CHECK(holds(m, 0, "E X_a X true", LogicId::ActlStar));
}

TEST_CASE("verdicts at a deadlocked state") {
  const Structure ks = fixtures::dead(StructureKind::Ks);
  CHECK_FALSE(holds(ks, 0, "E X true", LogicId::Ctl));
  CHECK_FALSE(holds(ks, 0, "A X p", LogicId::Ctl));  // no successor can witness X
  CHECK(holds(ks, 0, "E[!p U !p]", LogicId::Ctl));   // the empty suffix witnesses
  CHECK(holds(ks, 0, "E[p W !true]", LogicId::Ctl) ==
        false);  // the empty path has no perpetual left arm when p fails
  CHECK(holds(ks, 0, "A[true U true]", LogicId::Ctl));
  const Structure kts = fixtures::dead(StructureKind::Kts);
  CHECK_FALSE(holds(kts, 0, "E X_{tau} true", LogicId::Uctl));
  CHECK(holds(kts, 0, "E[!p {a}U{a} !p]", LogicId::Uctl) ==
        false);  // the stronger until needs a real first step
}

TEST_CASE("path-level verdicts on a fixed run") {
  const Structure m = fixtures::k0();
  const Lasso run{0, {0}, {1}};  // t0 -> t1 -> t1 -> ...
  const CheckConfig cfg;
  auto eval = [&](const std::string& text) {
    const StatePtr f = parse_formula("E " + text, LogicId::CtlStar);
    return check_path(m, run, f->path, LogicId::CtlStar, cfg).value;
  };
  CHECK_FALSE(eval("p"));
  CHECK(eval("X p"));
  CHECK(eval("X X p"));
  CHECK(eval("[!p U p]"));
  CHECK_FALSE(eval("([!true U p] & !X p)"));
  CHECK(eval("![p U !true]"));

  SUBCASE("the empty path refutes X but satisfies a reflexive until") {
    const Structure dead = fixtures::dead(StructureKind::Ks);
    const Lasso none{0, {}, {}};
    CHECK_FALSE(check_path(dead, none, mk_x(mk_embed(mk_true())), LogicId::CtlStar, cfg)
                    .value);
    CHECK(check_path(dead, none, mk_u(mk_embed(mk_prop("p")), mk_embed(mk_true())),
                     LogicId::CtlStar, cfg)
              .value);
  }
  SUBCASE("ill-formed and non-maximal paths are rejected") {
    CHECK_THROWS_AS((void)check_path(m, Lasso{0, {7}, {}}, mk_embed(mk_true()),
                                     LogicId::CtlStar, cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)check_path(m, Lasso{0, {}, {}}, mk_embed(mk_true()),
                                     LogicId::CtlStar, cfg),
                    std::invalid_argument);  // t0 can move, so the empty path is partial
  }
}

TEST_CASE("logic and structure pairing is enforced") {
  CHECK(detail::logic_pairs_with(LogicId::Ctl, StructureKind::Ks));
  CHECK(detail::logic_pairs_with(LogicId::CtlStar, StructureKind::Ks));
  CHECK(detail::logic_pairs_with(LogicId::Actl, StructureKind::Lts));
  CHECK(detail::logic_pairs_with(LogicId::ActlStar, StructureKind::Lts));
  CHECK(detail::logic_pairs_with(LogicId::Uctl, StructureKind::Kts));
  CHECK(detail::logic_pairs_with(LogicId::UctlStar, StructureKind::Kts));
  CHECK_FALSE(detail::logic_pairs_with(LogicId::Ctl, StructureKind::Lts));
  CHECK_FALSE(detail::logic_pairs_with(LogicId::Actl, StructureKind::Ks));
  CHECK_FALSE(detail::logic_pairs_with(LogicId::Uctl, StructureKind::Kmts));
  // The three-valued logic pairs with the partial structures, but check_state
  // still rejects it: its verdicts need the three-valued evaluator.
  CHECK(detail::logic_pairs_with(LogicId::Upml, StructureKind::Kmts));
  CHECK_FALSE(detail::logic_pairs_with(LogicId::Upml, StructureKind::Ks));

  const CheckConfig cfg;
  CHECK_THROWS_AS((void)check_state(fixtures::l0(), 0, mk_true(), LogicId::Ctl, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)check_state(fixtures::m0(), 0, mk_ax(mk_prop("p")),
                                    LogicId::Upml, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)check_state(fixtures::k0(), 0,
                                    parse_formula("E X X p", LogicId::CtlStar),
                                    LogicId::Ctl, cfg),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)check_state(fixtures::k0(), 9, mk_true(), LogicId::Ctl, cfg),
                  std::invalid_argument);
}

TEST_CASE("search bounds") {
  const Structure m = fixtures::k0();
  const StatePtr reach = parse_formula("E[!p U p]", LogicId::CtlStar);

  SUBCASE("the sound bound covers every distinct suffix pattern") {
    CHECK(detail::witness_bound(m, reach->path) == 6);  // floor 2|S|+2 dominates
    const Structure one = fixtures::dead(StructureKind::Ks);
    CHECK(detail::witness_bound(one, mk_embed(mk_true())) == 4);
    const PathPtr deep = mk_x(mk_u(mk_x(mk_embed(mk_prop("p"))), mk_embed(mk_true())));
    CHECK(detail::witness_bound(one, deep) == 8);  // 1 * 2^3
  }
  SUBCASE("the effective bound reports truncation") {
    bool trunc = false;
    CHECK(detail::effective_bound(m, reach->path, {}, trunc) == 6);
    CHECK_FALSE(trunc);
    CheckConfig low;
    low.ceiling = 5;
    CHECK(detail::effective_bound(m, reach->path, low, trunc) == 5);
    CHECK(trunc);
    trunc = false;
    CheckConfig wide;
    wide.bound_override = 10;
    CHECK(detail::effective_bound(m, reach->path, wide, trunc) == 10);
    CHECK_FALSE(trunc);
  }
  SUBCASE("a truncating override flags the result but the verdict stays exact") {
    CheckConfig tight;
    tight.bound_override = 1;
    const CheckResult r = check_state(m, 0, reach, LogicId::CtlStar, tight);
    CHECK(r.value);  // the product engine does not drop witnesses
    CHECK(r.bounded);
    const CheckResult full = check_state(m, 0, reach, LogicId::CtlStar, {});
    CHECK(full.value);
    CHECK_FALSE(full.bounded);
  }
  SUBCASE("a ceiling below the state count is rejected") {
    CheckConfig tiny;
    tiny.ceiling = 1;
    CHECK_THROWS_AS((void)check_state(m, 0, mk_true(), LogicId::Ctl, tiny),
                    std::invalid_argument);
  }
}

TEST_CASE("fixpoint and enumeration agree on fixture formulas") {
  struct Probe {
    StructureKind kind;
    LogicId logic;
    const char* text;
  };
  const Probe probes[] = {
      {StructureKind::Ks, LogicId::Ctl, "E[!p U p]"},
      {StructureKind::Ks, LogicId::Ctl, "A[true U p]"},
      {StructureKind::Ks, LogicId::Ctl, "E[p W q]"},
      {StructureKind::Ks, LogicId::Ctl, "!E X !p"},
      {StructureKind::Lts, LogicId::Actl, "E[true {a}U{tau} true]"},
      {StructureKind::Lts, LogicId::Actl, "E X_{!a} true"},
      {StructureKind::Kts, LogicId::Uctl, "E[p {a}W{b} q]"},
      {StructureKind::Kts, LogicId::Uctl, "!E[!p {tau}U{a} p]"},
  };
  GenParams params;
  params.seed = 23;
  params.max_states = 4;
  SplitMix64 rng(params.seed);
  const CheckConfig cfg;
  for (const Probe& probe : probes) {
    CAPTURE(probe.text);
    const StatePtr f = parse_formula(probe.text, probe.logic);
    for (int i = 0; i < 40; ++i) {
      const Structure m = gen_structure(probe.kind, params, rng);
      for (StateId s = 0; s < m.n_states(); ++s) {
        bool bounded = false;
        const bool enumerated = detail::eval_state_enum(m, s, f, cfg, bounded);
        CHECK_FALSE(bounded);
        CHECK(check_state(m, s, f, probe.logic, cfg).value == enumerated);
      }
    }
  }
}
