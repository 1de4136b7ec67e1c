#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "tempobridge/lasso.hpp"

using namespace tempobridge;

namespace {

// l0 paths used throughout: transition 0 = s0 -{a}-> s1, 1 = s1 -tau-> s1.
Lasso l0_run() { return Lasso{0, {0}, {1}}; }

}  // namespace

TEST_CASE("well-formedness") {
  const Structure m = fixtures::l0();
  CHECK(lasso_violations(m, l0_run()).empty());
  CHECK(lasso_violations(m, Lasso{1, {}, {1}}).empty());
  CHECK(lasso_violations(m, Lasso{0, {}, {}}).empty());  // empty path at s0

  SUBCASE("broken chaining") {
    CHECK_FALSE(lasso_violations(m, Lasso{0, {0, 0}, {}}).empty());
    CHECK_FALSE(lasso_violations(m, Lasso{0, {1}, {}}).empty());  // wrong anchor
  }
  SUBCASE("cycle must close") {
    CHECK_FALSE(lasso_violations(m, Lasso{0, {}, {0}}).empty());
  }
  SUBCASE("indices in range") {
    CHECK_FALSE(lasso_violations(m, Lasso{0, {7}, {}}).empty());
    CHECK_FALSE(lasso_violations(m, Lasso{9, {}, {}}).empty());
  }
}

TEST_CASE("maximality") {
  const Structure m = fixtures::l0();
  CHECK(is_maximal(m, l0_run()));
  CHECK_FALSE(is_maximal(m, Lasso{0, {0}, {}}));  // stops at a live state
  const Structure t = fixtures::t0();
  CHECK(is_maximal(t, Lasso{0, {0}, {}}));  // ends deadlocked
  CHECK(is_maximal(t, Lasso{1, {}, {}}));   // empty path at a deadlock
  CHECK_FALSE(is_maximal(t, Lasso{0, {}, {}}));
}

TEST_CASE("accessors") {
  const Structure m = fixtures::l0();
  const Lasso p = l0_run();
  CHECK(anchor(p) == StateId{0});
  CHECK(first_labels(m, p) == LabelMask{0b01});
  CHECK(first_target(m, p) == StateId{1});
  CHECK_THROWS_AS((void)first_labels(m, Lasso{0, {}, {}}), std::domain_error);
  CHECK(end_state(fixtures::t0(), Lasso{0, {0}, {}}) == StateId{1});
  CHECK_THROWS_AS((void)end_state(m, p), std::domain_error);
}

TEST_CASE("canonical form") {
  const Structure m = fixtures::l0();
  SUBCASE("repeated cycle reduces to its primitive root") {
    const Lasso doubled{0, {0}, {1, 1}};
    CHECK(canonical(m, doubled) == l0_run());
  }
  SUBCASE("cycle unrolled into the stem is folded back") {
    const Lasso unrolled{0, {0, 1}, {1}};
    CHECK(canonical(m, unrolled) == l0_run());
  }
  SUBCASE("canonical is idempotent") {
    const Lasso c = canonical(m, l0_run());
    CHECK(canonical(m, c) == c);
  }
  SUBCASE("distinct paths stay distinct") {
    CHECK(canonical(m, Lasso{1, {}, {1}}) != canonical(m, l0_run()));
  }
}

TEST_CASE("suffix space") {
  const Structure m = fixtures::l0();
  SUBCASE("lasso: one suffix per stem position plus cycle rotations") {
    const SuffixSpace space(m, l0_run());
    REQUIRE(space.size() == 2);
    CHECK_FALSE(space.finite());
    CHECK(space.anchor_at(0) == StateId{0});
    CHECK(space.anchor_at(1) == StateId{1});
    CHECK(space.trans_at(0) == TransIdx{0});
    CHECK(space.trans_at(1) == TransIdx{1});
    CHECK(space.next(0) == 1);
    CHECK(space.next(1) == 1);  // wraps inside the one-step cycle
    CHECK(space.suffix(1) == Lasso{1, {}, {1}});
  }
  SUBCASE("finite path: trailing empty suffix") {
    const Structure t = fixtures::t0();
    const SuffixSpace space(t, Lasso{0, {0}, {}});
    REQUIRE(space.size() == 2);
    CHECK(space.finite());
    CHECK_FALSE(space.empty_at(0));
    CHECK(space.empty_at(1));
    CHECK(space.anchor_at(1) == StateId{1});
    CHECK(space.next(0) == 1);
  }
  SUBCASE("materialized suffixes") {
    const auto subs = suffixes(m, l0_run());
    REQUIRE(subs.size() == 2);
    CHECK(subs[0] == l0_run());
    CHECK(subs[1] == Lasso{1, {}, {1}});
  }
}

TEST_CASE("maximal-path enumeration") {
  SUBCASE("the one maximal path of l0") {
    const Structure m = fixtures::l0();
    const auto paths = mu_paths(m, 0, 3);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0] == l0_run());
  }
  SUBCASE("a deadlocked state owns exactly the empty path") {
    const Structure t = fixtures::t0();
    const auto paths = mu_paths(t, 1, 4);
    REQUIRE(paths.size() == 1);
    CHECK(paths[0] == Lasso{1, {}, {}});
  }
  SUBCASE("bound cuts off unreachable witnesses") {
    const Structure m = fixtures::l0();
    CHECK(mu_paths(m, 0, 1).empty());  // needs stem + cycle = 2 transitions
    CHECK(mu_paths(m, 1, 1).size() == 1);
  }
  SUBCASE("branching structures enumerate every maximal path once") {
    Structure m = fixtures::k0();
    m.states.push_back("t2");
    m.labeling.push_back(Truth3::False);
    m.transitions.push_back({0, 2, 0});  // t0 -> t2 (deadlocked)
    const auto paths = mu_paths(m, 0, 3);
    REQUIRE(paths.size() == 2);
    CHECK(std::count(paths.begin(), paths.end(), Lasso{0, {0}, {1}}) == 1);
    CHECK(std::count(paths.begin(), paths.end(), Lasso{0, {2}, {}}) == 1);
    // Deterministic order across calls.
    CHECK(mu_paths(m, 0, 3) == paths);
  }
}

TEST_CASE("rendering") {
  const Structure m = fixtures::l0();
  CHECK(render_lasso(m, l0_run()) == "s0 -{a}-> s1 | s1 -tau-> s1");
  CHECK(render_lasso(m, Lasso{1, {}, {}}) == "s1");
  const Structure k = fixtures::k0();
  CHECK(render_lasso(k, Lasso{0, {0}, {1}}) == "t0 -> t1 | t1 -> t1");
}
