#pragma once

#include <string>

#include "tempobridge/formulas.hpp"
#include "tempobridge/structures.hpp"

namespace tempobridge {

// Three-valued UPML satisfaction at a state of a kmts. Connectives follow
// the strong Kleene tables. AX quantifies over every outgoing transition
// regardless of labels; AX_a distinguishes the action's modifier:
// definitely true needs every transition carrying a! or a? to lead to a
// true target, definitely false needs some transition carrying a! to lead
// to a false target, and anything else is bot. A deadlocked state satisfies
// every AX/AX_a vacuously.
//
// Requires: valid kmts, state in range, conforming UPML formula whose
// propositions and actions are declared in the structure. Violations throw
// std::invalid_argument.
[[nodiscard]] Truth3 eval_upml(const Structure& m, StateId s, const StatePtr& f);

// The existential action-indexed next-step as a direct table: true when
// some transition carrying a! leads to a true target, false when every
// transition carrying a! or a? leads to a false target (vacuously so at a
// deadlock), bot otherwise. Agrees with kleene_not(eval_upml(s, AX_a !f)).
[[nodiscard]] Truth3 eval_ex_upml(const Structure& m, StateId s,
                                  const std::string& action, const StatePtr& f);

}  // namespace tempobridge
