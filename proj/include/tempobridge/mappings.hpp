#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tempobridge/formulas.hpp"
#include "tempobridge/lasso.hpp"
#include "tempobridge/structures.hpp"

namespace tempobridge {

/// The eight structure-and-formula translations between the state-labeled
/// and action-labeled worlds. The unprimed ids translate the star logics
/// path-compositionally; the primed ids translate the branching logics one
/// existential case at a time.
enum class MappingId : std::uint8_t {
  Ks,        // action world -> state world, star logics
  Lts,       // state world -> action world, star logics
  Ks2,       // hybrid (kts) -> state world, star logics
  Lts2,      // hybrid (kts) -> action world, star logics
  KsPrime,   // action world -> state world, branching logics
  LtsPrime,  // state world -> action world, branching logics
  Ks2Prime,  // hybrid (kts) -> state world, branching logics
  Lts2Prime, // hybrid (kts) -> action world, branching logics
};

[[nodiscard]] const char* to_string(MappingId id);

/// Accepts the canonical spellings ks, lts, ks2, lts2, ks', lts', ks2',
/// lts2' plus the ASCII aliases ksp, ltsp, ks2p, lts2p and *_prime forms.
[[nodiscard]] std::optional<MappingId> mapping_from_token(std::string_view token);

[[nodiscard]] LogicId source_logic(MappingId id);
[[nodiscard]] LogicId target_logic(MappingId id);
[[nodiscard]] StructureKind source_kind(MappingId id);
[[nodiscard]] StructureKind target_kind(MappingId id);

/// Where a target state came from.
struct Provenance {
  enum class Kind : std::uint8_t {
    Original,        // the image of a source state
    TransitionPair,  // the midpoint splitting one source transition
    Underline,       // the satellite state carrying a source state's labels
  };
  Kind kind = Kind::Original;
  StateId state = 0;  // Original/Underline: the source state;
                      // TransitionPair: the transition's source endpoint
  StateId other = 0;  // TransitionPair: the transition's target endpoint
};

/// An applied structure map, with enough bookkeeping to translate paths and
/// report findings in source terms.
struct MappingBundle {
  MappingId id = MappingId::Ks;
  Structure source;
  Structure target;
  std::vector<Provenance> provenance;  // indexed by target state
  std::vector<StateId> image;          // source state -> its target image
};

/// Builds the target structure for `id` from `source`. The fresh atom F must
/// not already occur among the source propositions or actions, and the kts ->
/// state-world directions additionally require the proposition and action
/// name sets to be disjoint; violations throw std::invalid_argument, as does
/// a source whose kind does not match source_kind(id).
[[nodiscard]] MappingBundle apply_mapping(MappingId id, Structure source);

/// Translates a source_logic(id) formula into target_logic(id). The formula
/// must conform to the source logic's grammar; for the primed ids the
/// existential cases are restricted to the translated clause catalog, and
/// anything outside it throws std::invalid_argument.
[[nodiscard]] StatePtr map_formula(const MappingBundle& bundle, const StatePtr& f);

/// Deliberately broken single-clause variants of map_formula, used to show
/// that the differential harness detects translation bugs. Faithful when
/// `mutation` is 0; 1..8 each belong to exactly one mapping id (1 -> ks, ...,
/// 8 -> lts2') and passing a mutation to any other id throws:
///   1 ks    : the next-step clause emits a single X instead of two
///   2 lts   : the next-step operand loses its liveness guard
///   3 ks2   : the action-indexed next-step forgets its action tag
///   4 lts2  : the action-indexed next-step forgets its action
///   5 ks'   : the action-step clause forgets its action test
///   6 lts'  : the until clause's right operand loses its liveness guard
///   7 ks2'  : the until clause swaps its step and closing action tests
///   8 lts2' : the action-step operand loses its liveness guard
[[nodiscard]] StatePtr map_formula_mutated(const MappingBundle& bundle,
                                           const StatePtr& f, int mutation);

/// Path-level variant for the star mappings: translates a source path
/// formula such that a source path satisfies `p` iff its map_path image
/// satisfies the result (evaluated position-aligned; the action-world image
/// of a finite source path is evaluated as the finite run it is). The
/// branching ids have no path-level translation and throw.
[[nodiscard]] PathPtr map_path_formula(const MappingBundle& bundle, const PathPtr& p);

/// The image of a source path. The state-world directions split every source
/// transition in two, doubling stem and cycle; the action-world directions
/// keep the direct image, which never touches satellite states and is
/// therefore not maximal in the target when `sigma` is finite (the target
/// extends it with the detour loop at the final state).
[[nodiscard]] Lasso map_path(const MappingBundle& bundle, const Lasso& sigma);

/// Reads an action predicate as a state formula over action-named
/// propositions: an action becomes the proposition of the same name, the
/// silent predicate becomes the conjunction of all negated alphabet members
/// (true when the alphabet is empty), and negation/conjunction pass through.
/// Actions outside `alphabet` throw std::invalid_argument.
[[nodiscard]] StatePtr chi_to_prop(const ActPtr& chi,
                                   const std::vector<std::string>& alphabet);

}  // namespace tempobridge
