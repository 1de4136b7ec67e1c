// Formula ASTs for the seven logics: state formulas, path formulas, and
// action formulas, plus grammar conformance, derived forms, and the
// expansions that desugar action-constrained operators in the star logics.
#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tempobridge/structures.hpp"

namespace tempobridge {

// The branching/star state logics over the four carriers, plus the
// three-valued modal logic. Naming: Ctl-family = state-labeled carriers,
// Actl-family = action-labeled, Uctl-family = doubly-labeled.
enum class LogicId : std::uint8_t { Ctl, CtlStar, Actl, ActlStar, Uctl, UctlStar, Upml };

[[nodiscard]] std::string to_string(LogicId logic);
[[nodiscard]] bool is_star(LogicId logic);

struct ActFormula;
struct StateFormula;
struct PathFormula;
using ActPtr = std::shared_ptr<const ActFormula>;
using StatePtr = std::shared_ptr<const StateFormula>;
using PathPtr = std::shared_ptr<const PathFormula>;

// Action formulas over transition label sets: tau holds exactly on the
// silent (empty) set, an action name holds iff it is a member.
enum class ActKind : std::uint8_t { Tau, Act, NotA, AndA };

struct ActFormula {
  ActKind kind;
  std::string name;  // Act
  ActPtr a, b;       // NotA (a), AndA (a, b)
};

enum class StateKind : std::uint8_t { True, Prop, Not, And, Exists, Ax, AxAct };

struct StateFormula {
  StateKind kind;
  std::string name;  // Prop name, AxAct action name
  StatePtr a, b;     // Not/Ax/AxAct (a), And (a, b)
  PathPtr path;      // Exists
};

// Path formulas. Embed lifts a state formula to path level (anchor
// evaluation). X/U/W take path operands in the star logics and embedded
// state operands in the branching logics; Xact is X constrained to one
// action; Xchi/Uchi/Wchi are the action-constrained branching forms with
// state operands and action-formula constraints.
enum class PathKind : std::uint8_t { Embed, NotP, AndP, X, Xact, U, W, Xchi, Uchi, Wchi };

struct PathFormula {
  PathKind kind;
  std::string act;     // Xact action name
  PathPtr p, q;        // NotP/X/Xact (p), AndP/U/W (p, q)
  StatePtr phi, phi2;  // Embed/Xchi (phi), Uchi/Wchi (phi, phi2)
  ActPtr chi, chi2;    // Xchi (chi), Uchi/Wchi (chi, chi2)
};

// Constructors (shared immutable nodes).
[[nodiscard]] ActPtr mk_tau();
[[nodiscard]] ActPtr mk_act(std::string name);
[[nodiscard]] ActPtr mk_nota(ActPtr a);
[[nodiscard]] ActPtr mk_anda(ActPtr a, ActPtr b);

[[nodiscard]] StatePtr mk_true();
[[nodiscard]] StatePtr mk_prop(std::string name);
[[nodiscard]] StatePtr mk_not(StatePtr a);
[[nodiscard]] StatePtr mk_and(StatePtr a, StatePtr b);
[[nodiscard]] StatePtr mk_exists(PathPtr p);
[[nodiscard]] StatePtr mk_ax(StatePtr a);
[[nodiscard]] StatePtr mk_axact(std::string action, StatePtr a);

[[nodiscard]] PathPtr mk_embed(StatePtr phi);
[[nodiscard]] PathPtr mk_notp(PathPtr p);
[[nodiscard]] PathPtr mk_andp(PathPtr p, PathPtr q);
[[nodiscard]] PathPtr mk_x(PathPtr p);
[[nodiscard]] PathPtr mk_xact(std::string action, PathPtr p);
[[nodiscard]] PathPtr mk_u(PathPtr p, PathPtr q);
[[nodiscard]] PathPtr mk_w(PathPtr p, PathPtr q);
[[nodiscard]] PathPtr mk_xchi(ActPtr chi, StatePtr phi);
[[nodiscard]] PathPtr mk_uchi(StatePtr phi, ActPtr chi, ActPtr chi2, StatePtr phi2);
[[nodiscard]] PathPtr mk_wchi(StatePtr phi, ActPtr chi, ActPtr chi2, StatePtr phi2);

// Derived state-level connectives (negation-and desugarings).
[[nodiscard]] StatePtr mk_or(StatePtr a, StatePtr b);
[[nodiscard]] StatePtr mk_implies(StatePtr a, StatePtr b);
// The universal path quantifier: forall(pi) = not(exists(not(pi))).
[[nodiscard]] StatePtr forall(PathPtr p);
// Three-valued-logic derived modalities: EX = !AX!, EX_a = !AX_a!.
[[nodiscard]] StatePtr mk_ex_upml(StatePtr a);
[[nodiscard]] StatePtr mk_exact_upml(std::string action, StatePtr a);

// Structural equality and hashing (used for closures and round-trip tests).
[[nodiscard]] bool equals(const ActPtr& a, const ActPtr& b);
[[nodiscard]] bool equals(const StatePtr& a, const StatePtr& b);
[[nodiscard]] bool equals(const PathPtr& a, const PathPtr& b);
[[nodiscard]] std::size_t hash_of(const ActPtr& a);
[[nodiscard]] std::size_t hash_of(const StatePtr& a);
[[nodiscard]] std::size_t hash_of(const PathPtr& a);

// Grammar conformance. Returns a list of violated-production descriptions;
// empty = the formula is in the logic's grammar. The branching action
// logics accept both their native action-constrained operators and the
// state-operand forms (X/Xact/U/W over embeds and path negation) that the
// translation targets use.
[[nodiscard]] std::vector<std::string> conforms(const StatePtr& f, LogicId logic);

// Whether a path formula is expressible as a single embedded state formula
// (Embed, or NotP/AndP over such), and that folding.
[[nodiscard]] bool state_expressible(const PathPtr& p);
[[nodiscard]] StatePtr fold_state(const PathPtr& p);

// Membership semantics for action formulas: tau = empty set, names =
// membership (names outside the alphabet are simply never members).
[[nodiscard]] bool eval_action(const Structure& m, const ActPtr& chi, LabelMask alpha);
// Whether some subset of the alphabet satisfies chi (used to pick the
// degenerate expansions below).
[[nodiscard]] bool satisfiable_action(const Structure& m, const ActPtr& chi);

// Star-logic desugarings of the action-constrained operators. The
// action-constrained next expands to the disjunction over satisfying label
// sets of "every member action on the next step" (inclusion reading); the
// empty set contributes a plain X, and an unsatisfiable constraint yields
// the embedded state formula !true. The until form expands to
// (p && X_chi true) U (p && X_chi2 q); the weak form adds the dual-encoded
// "chi-step globally" disjunct !(true U !(p && X_chi true)).
[[nodiscard]] PathPtr expand_xchi_star(const Structure& m, const ActPtr& chi, PathPtr p);
[[nodiscard]] PathPtr expand_uchi_star(const Structure& m, PathPtr p, const ActPtr& chi,
                                       const ActPtr& chi2, PathPtr q);
[[nodiscard]] PathPtr expand_wchi_star(const Structure& m, PathPtr p, const ActPtr& chi,
                                       const ActPtr& chi2, PathPtr q);

// Expands every action-constrained operator in a star-logic formula.
[[nodiscard]] PathPtr expand_star_sugar(const Structure& m, const PathPtr& p);
[[nodiscard]] StatePtr expand_star_sugar(const Structure& m, const StatePtr& f);

// Number of distinct temporal path subterms (X/Xact/U/W and the
// action-constrained forms), not descending into embedded state formulas.
// Drives the default lasso-search bound.
[[nodiscard]] std::size_t closure_size(const PathPtr& p);

}  // namespace tempobridge
