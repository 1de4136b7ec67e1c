// Deterministic random generation of structures, paths, and conforming
// formulas; the differential harness comparing source against target
// verdicts across the mappings and the fixpoint engine against the
// bounded-enumeration reference; counterexample shrinking.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "tempobridge/formulas.hpp"
#include "tempobridge/lasso.hpp"
#include "tempobridge/mappings.hpp"
#include "tempobridge/structures.hpp"

namespace tempobridge {

/// Bounds and seed for deterministic generation. Everything the harness
/// produces is a pure function of (seed, bounds): the same values give the
/// same structures, formulas, paths, and report content on every run.
struct GenParams {
  std::uint64_t seed = 1;
  std::size_t max_states = 5;
  std::size_t max_actions = 3;
  std::size_t max_props = 3;
  std::size_t max_formula_depth = 3;
  std::size_t trials = 100;
};

/// splitmix64. All harness randomness flows through one instance, so a
/// report is reproducible from its seed alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// True with probability pct/100.
  bool chance(unsigned pct);

 private:
  std::uint64_t state_;
};

/// Random valid structure of `kind` within the bounds:
///   - 1..max_states states named s0, s1, ...; action-labeled kinds draw
///     1..max_actions actions named a, b, c, ...; prop-labeled kinds draw
///     1..max_props propositions named p, q, r, ... — never the reserved
///     mapping atom F, and the two name pools are disjoint.
///   - Each state is deadlocked with probability 1/4; the rest share a
///     transition budget of |S| .. |S|+2 (at most one transition per
///     ordered state pair), with uniformly random label subsets.
///   - Two-valued labelings are uniform; the three-valued kind labels
///     true/false/unknown at 40/40/20 and gives each action one global
///     must/may modifier, each with probability 1/2.
[[nodiscard]] Structure gen_structure(StructureKind kind, const GenParams& params,
                                      SplitMix64& rng);

/// Random formula conforming to `logic` over m's declared alphabets, with
/// depth ≤ max_formula_depth counted as: atoms 0; negation/conjunction and
/// every temporal or modal operator add 1 (binary forms add 1 + max of the
/// operands); a path quantifier adds 1 plus its path operand's depth;
/// embedding a state formula at path level is transparent.
///
/// Production weights (out of 100):
///   - state, depth 0: proposition 70 / true 30 when the logic has
///     propositions, else true (the three-valued logic always draws a
///     proposition — its grammar has no constant).
///   - state, depth > 0: atom 12, negation 16, conjunction 16, modal 56.
///     The modal slot is: a path quantification for the six two-valued
///     logics (the star logics over a random path formula; the branching
///     state logic over X/U/W cores — 30/35/35 — with a path negation
///     wrapped around the core 25% of the time; the branching action
///     logics over their action-indexed forms X 35 / U 35 / W 30, which is
///     also the fragment the translations accept), and AX 50 / AX_a 50 for
///     the three-valued logic.
///   - path, depth 0: an embedded atom.
///   - path, depth > 0: embed 18, path negation 14, path conjunction 14,
///     X 22, action-constrained X 12 (its weight folds into X for the
///     state-only star logic), U 20.
///   - action formulas (depth ≤ 2): leaf 55 (silent 30 / name 70),
///     negation 22, conjunction 23.
[[nodiscard]] StatePtr gen_formula(LogicId logic, const Structure& m,
                                   const GenParams& params, SplitMix64& rng);

/// Path-formula generator for the star logics (drives the path-level half
/// of the differential harness). Non-star logics throw.
[[nodiscard]] PathPtr gen_path_formula(LogicId logic, const Structure& m,
                                       const GenParams& params, SplitMix64& rng);

/// Uniformly random choice among the maximal paths from a uniformly random
/// state, enumerated up to |S| transitions (at least one always exists).
[[nodiscard]] Lasso gen_path(const Structure& m, SplitMix64& rng);

/// One disagreement, shrunk to a local minimum: no single transition
/// deletion, state deletion, or replacement of the formula by a proper
/// subformula keeps the two sides apart. The shrunk structure is a
/// substructure of the generated one and the formula one of its
/// subformulas.
struct XCheckFailure {
  std::string level;    // "state" or "path"
  Structure structure;  // the (shrunk) source structure
  std::string formula;  // rendered source-side formula
  std::string path;     // rendered source path; empty at state level
  std::string state;    // anchor state name; empty at path level
  bool source_verdict = false;
  bool target_verdict = false;
};

struct XCheckReport {
  std::string op;       // "xcheck" or "oracle_vs_fixpoint"
  std::string subject;  // mapping token or logic name
  GenParams params;
  int mutation = 0;     // nonzero when a deliberately broken translator ran
  std::size_t trials = 0;
  std::size_t bounded_truncations = 0;  // evaluations cut off by the ceiling
  std::vector<XCheckFailure> failures;  // canonically sorted; empty = agreement
  double elapsed_seconds = 0.0;
};

/// Differential run of one mapping. Per trial: generate a source structure
/// and formula, build the target structure and formula, and compare the
/// source verdict with the target verdict at the image of every state (a
/// drawn anchor state first). For the star mappings each trial additionally
/// generates a random path formula and a random maximal source path and
/// compares path satisfaction against the image path under the translated
/// formula. Any disagreement is shrunk and recorded. `mutation` selects a
/// deliberately broken translator as in map_formula_mutated (0 = faithful).
[[nodiscard]] XCheckReport xcheck(MappingId id, const GenParams& params,
                                  int mutation = 0);

/// Differential run of the fixpoint engine against the bounded-enumeration
/// reference for one branching two-valued logic, compared at every state of
/// every generated instance. A fixed single-deadlocked-state corpus runs
/// before the random trials on every call. Star logics and the three-valued
/// logic throw.
[[nodiscard]] XCheckReport oracle_vs_fixpoint(LogicId logic, const GenParams& params);

/// Canonical JSON rendering: stable key order, two-space indentation,
/// failures embedded with their structures as JSON objects. Byte-identical
/// across runs with the same inputs except for the elapsed_seconds value.
[[nodiscard]] std::string report_to_json(const XCheckReport& r);

}  // namespace tempobridge
