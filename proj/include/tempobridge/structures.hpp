// Transition-system carriers: state-labeled, action-labeled, doubly-labeled,
// and the three-valued doubly-labeled variant, in one kind-tagged struct.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tempobridge/truth3.hpp"

namespace tempobridge {

using StateId = std::uint32_t;
using TransIdx = std::uint32_t;

// A transition's label set, as a bitmask over the structure's action indices.
// The empty set is the silent label (rendered "tau"); there is no silent
// action in the alphabet itself.
using LabelMask = std::uint64_t;

enum class StructureKind : std::uint8_t { Ks, Lts, Kts, Kmts };

[[nodiscard]] std::string to_string(StructureKind k);

// Modifier carried by every action of a three-valued structure: Must ("a!")
// or May ("a?"). Within one alphabet an action has exactly one modifier.
enum class ActMod : std::uint8_t { Must, May };

struct Transition {
  StateId src = 0;
  StateId dst = 0;
  LabelMask labels = 0;  // always 0 for state-labeled-only structures

  [[nodiscard]] bool operator==(const Transition&) const = default;
};

struct Structure {
  StructureKind kind = StructureKind::Ks;
  std::vector<std::string> states;       // index = StateId
  std::vector<std::string> actions;      // base names; empty for Ks
  std::vector<ActMod> action_mods;       // parallel to actions; Kmts only
  std::vector<std::string> props;        // empty for Lts
  std::vector<Transition> transitions;   // at most one per (src,dst) pair
  std::vector<Truth3> labeling;          // row-major [state*props.size()+p]

  [[nodiscard]] std::size_t n_states() const { return states.size(); }
  [[nodiscard]] std::size_t n_actions() const { return actions.size(); }
  [[nodiscard]] std::size_t n_props() const { return props.size(); }

  [[nodiscard]] Truth3 label_of(StateId s, std::size_t prop) const {
    return labeling[static_cast<std::size_t>(s) * props.size() + prop];
  }
  Truth3& label_of(StateId s, std::size_t prop) {
    return labeling[static_cast<std::size_t>(s) * props.size() + prop];
  }

  [[nodiscard]] std::optional<StateId> state_id(const std::string& name) const;
  [[nodiscard]] std::optional<std::size_t> action_index(const std::string& name) const;
  [[nodiscard]] std::optional<std::size_t> prop_index(const std::string& name) const;

  // Action rendering: Kmts actions include their modifier suffix ("a!"/"b?").
  [[nodiscard]] std::string action_token(std::size_t i) const;

  [[nodiscard]] bool has_action_labels() const { return kind != StructureKind::Ks; }
  [[nodiscard]] bool has_props() const { return kind != StructureKind::Lts; }
  [[nodiscard]] bool three_valued() const { return kind == StructureKind::Kmts; }

  [[nodiscard]] bool operator==(const Structure&) const = default;
};

// Structural well-formedness. Violations are data, not exceptions; every
// other operation in the library requires an empty violation list.
[[nodiscard]] std::vector<std::string> validate(const Structure& m);

// Throws std::invalid_argument listing the violations, if any.
void require_valid(const Structure& m);

// Out-transition index, built once and reused by the checkers.
class Adjacency {
 public:
  explicit Adjacency(const Structure& m);
  [[nodiscard]] const std::vector<TransIdx>& out(StateId s) const { return out_[s]; }
  [[nodiscard]] bool deadlocked(StateId s) const { return out_[s].empty(); }

 private:
  std::vector<std::vector<TransIdx>> out_;
};

[[nodiscard]] bool deadlocked(const Structure& m, StateId s);

// Label-set/labeling transformations between the two carrier flavors.
//
// alpha_prime: action label set -> total two-valued labeling over the
// alphabet (member actions true, the rest false).
[[nodiscard]] std::vector<bool> alpha_prime(LabelMask alpha, std::size_t n_actions);

// omega_prime: a state's two-valued labeling row -> the set of true props,
// as a mask over prop indices.
[[nodiscard]] LabelMask omega_prime(const Structure& m, StateId s);

// Three-valued alpha_prime: modified-action label set -> total three-valued
// labeling over the base alphabet (Must true, May unknown, absent false).
[[nodiscard]] std::vector<Truth3> alpha_prime3(LabelMask alpha, const Structure& kmts);

// Three-valued omega_prime: a state's labeling row -> modified prop tokens
// ("p!" for true, "p?" for unknown), in prop-index order.
[[nodiscard]] std::vector<std::string> omega_prime3(const Structure& kmts, StateId s);

// Helpers shared by tests, JSON I/O, and the CLI.
[[nodiscard]] LabelMask label_mask_of(const Structure& m,
                                      const std::vector<std::string>& tokens);
// Renders a label set as "{a,b}" in action-index order, or "tau" when empty.
[[nodiscard]] std::string render_labels(const Structure& m, LabelMask labels);

}  // namespace tempobridge
