#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tempobridge/formulas.hpp"
#include "tempobridge/lasso.hpp"
#include "tempobridge/structures.hpp"

namespace tempobridge {

// Tuning for the existential witness search over lassos. The default bound
// for one quantifier is max(|S| * 2^closure_size(pi), 2|S| + 2) — the
// ultimately-periodic witness bound, floored so that a one-operator formula
// can still reach a decisive event and then complete a maximal path. The
// ceiling (and any override below the default) truncates the search space;
// results computed under a truncated bound carry the `bounded` flag.
struct CheckConfig {
  std::optional<std::size_t> bound_override;
  std::size_t ceiling = 4096;  // must be >= |S| of the checked structure
};

struct CheckResult {
  bool value = false;
  // True when some quantifier was evaluated under a bound below the sound
  // witness bound. The exact engines ignore the bound, so `value` may still
  // be exact; the flag reports the configuration, not a wrong answer.
  bool bounded = false;
};

// State-level satisfaction. Dispatches on the logic: CTL/ACTL/UCTL use
// fixpoint labeling over the state set; CTL*/ACTL*/UCTL* use an exact
// product search for ultimately-periodic witnesses. UPML is three-valued
// and lives in checker3; passing it here is an error.
//
// Requires: valid structure, logic paired with the structure kind
// (CTL,CTL* - ks; ACTL,ACTL* - lts; UCTL,UCTL* - kts), conforming formula,
// ceiling >= |S|. Violations throw std::invalid_argument.
[[nodiscard]] CheckResult check_state(const Structure& m, StateId s,
                                      const StatePtr& f, LogicId logic,
                                      const CheckConfig& cfg = {});

// Path-level satisfaction on one maximal path. Every path subformula is
// evaluated at each distinct suffix position; U-style operators are resolved
// on the cycle by a two-pass backward sweep; X is false on the empty path;
// embedded state formulas defer to check_state at the suffix anchor.
//
// Requires: valid structure, well-formed *maximal* sigma, pi in the logic's
// path grammar, pairing as above. Violations throw std::invalid_argument.
[[nodiscard]] CheckResult check_path(const Structure& m, const Lasso& sigma,
                                     const PathPtr& pi, LogicId logic,
                                     const CheckConfig& cfg = {});

namespace detail {

// Building blocks shared with the test harness.

using EmbedFn = std::function<bool(StateId, const StatePtr&)>;

// Per-suffix evaluation of pi on sigma with a caller-chosen evaluator for
// embedded state formulas. Accepts any well-formed lasso, maximal or not:
// a finite lasso is read as ending exactly where it ends (its final suffix
// is the empty one). This is the single evaluation core behind check_path.
[[nodiscard]] bool eval_path(const Structure& m, const Lasso& sigma,
                             const PathPtr& pi, const EmbedFn& embed);

// Fixpoint engine for the non-star logics; one truth value per state.
[[nodiscard]] std::vector<char> eval_states_nonstar(const Structure& m,
                                                    const StatePtr& f);

// Exact star engine: a product of the state space with valuations of the
// X-family and U subformulas, searched for a finite maximal run or a
// self-fulfilling cycle. `bounded` accumulates the truncation flag computed
// from cfg (the engine itself is exact regardless of the bound).
[[nodiscard]] std::vector<char> eval_states_star(const Structure& m,
                                                 const StatePtr& f,
                                                 const CheckConfig& cfg,
                                                 bool& bounded);

// Bounded-enumeration engine (any 2-valued logic): satisfaction of each
// Exists is decided by enumerating mu_paths under the effective bound and
// evaluating with eval_path; embedded state formulas recurse into the same
// engine. This is the semantics-by-construction reference the fast engines
// are tested against; feasible only at small bounds.
[[nodiscard]] bool eval_state_enum(const Structure& m, StateId s,
                                   const StatePtr& f, const CheckConfig& cfg,
                                   bool& bounded);

// Sound witness bound for one Exists: max(|S| * 2^closure_size(pi),
// 2|S| + 2), saturating on overflow.
[[nodiscard]] std::size_t witness_bound(const Structure& m, const PathPtr& pi);

// min(witness_bound, ceiling) or the override; sets `truncated` when the
// result is below witness_bound.
[[nodiscard]] std::size_t effective_bound(const Structure& m, const PathPtr& pi,
                                          const CheckConfig& cfg,
                                          bool& truncated);

// The logic whose grammar/semantics pair with a structure kind.
[[nodiscard]] bool logic_pairs_with(LogicId logic, StructureKind kind);

}  // namespace detail

}  // namespace tempobridge
