// Small hand-checked structures shared across the test suite.
#pragma once

#include "tempobridge/structures.hpp"

namespace tempobridge::fixtures {

// Two states; an a-step into a silent self-loop.
inline Structure l0() {
  Structure m;
  m.kind = StructureKind::Lts;
  m.states = {"s0", "s1"};
  m.actions = {"a", "b"};
  m.transitions = {{0, 1, 0b01}, {1, 1, 0}};
  return m;
}

// Two states; p flips true on the second, which loops.
inline Structure k0() {
  Structure m;
  m.kind = StructureKind::Ks;
  m.states = {"t0", "t1"};
  m.props = {"p"};
  m.labeling = {Truth3::False, Truth3::True};
  m.transitions = {{0, 1, 0}, {1, 1, 0}};
  return m;
}

// Doubly labeled: a single a-step from a !p state to a deadlocked p state.
inline Structure t0() {
  Structure m;
  m.kind = StructureKind::Kts;
  m.states = {"s0", "s1"};
  m.actions = {"a"};
  m.props = {"p"};
  m.labeling = {Truth3::False, Truth3::True};
  m.transitions = {{0, 1, 0b1}};
  return m;
}

// Three-valued: a! into a deadlocked true state, b? self-loop, p unknown
// at the start state.
inline Structure m0() {
  Structure m;
  m.kind = StructureKind::Kmts;
  m.states = {"u0", "u1"};
  m.actions = {"a", "b"};
  m.action_mods = {ActMod::Must, ActMod::May};
  m.props = {"p"};
  m.labeling = {Truth3::Bot, Truth3::True};
  m.transitions = {{0, 1, 0b01}, {0, 0, 0b10}};
  return m;
}

// One deadlocked state of the given kind (p false where props exist).
inline Structure dead(StructureKind kind) {
  Structure m;
  m.kind = kind;
  m.states = {"d0"};
  if (kind != StructureKind::Ks) m.actions = {"a"};
  if (kind == StructureKind::Kmts) m.action_mods = {ActMod::Must};
  if (kind != StructureKind::Lts) {
    m.props = {"p"};
    m.labeling = {Truth3::False};
  }
  return m;
}

}  // namespace tempobridge::fixtures
