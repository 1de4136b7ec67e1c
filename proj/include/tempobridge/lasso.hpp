// Finitely representable paths: finite runs and lassos (stem + cycle), their
// suffix spaces, and exhaustive enumeration of maximal paths up to a bound.
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tempobridge/structures.hpp"

namespace tempobridge {

// A path, as transition indices into one structure. cycle empty = finite
// path (maximal iff its final state is deadlocked — a deadlocked state's one
// maximal path is the empty path). cycle nonempty = infinite path
// stem · cycle^ω; the cycle starts and ends at the stem's final state.
struct Lasso {
  StateId start = 0;  // anchor; for nonempty paths equals the first source
  std::vector<TransIdx> stem;
  std::vector<TransIdx> cycle;

  [[nodiscard]] bool empty() const { return stem.empty() && cycle.empty(); }
  [[nodiscard]] bool infinite() const { return !cycle.empty(); }
  [[nodiscard]] std::size_t size() const { return stem.size() + cycle.size(); }
  [[nodiscard]] bool operator==(const Lasso&) const = default;
  [[nodiscard]] auto operator<=>(const Lasso&) const = default;
};

// Shape violations (broken chaining, out-of-range indices). Data, not errors.
[[nodiscard]] std::vector<std::string> lasso_violations(const Structure& m,
                                                        const Lasso& p);

[[nodiscard]] bool is_maximal(const Structure& m, const Lasso& p);

// Anchor state, first-transition label set, first-transition target. The
// label/target accessors throw std::domain_error on the empty path.
[[nodiscard]] StateId anchor(const Lasso& p);
[[nodiscard]] LabelMask first_labels(const Structure& m, const Lasso& p);
[[nodiscard]] StateId first_target(const Structure& m, const Lasso& p);

// The final state of a finite path (throws std::domain_error on lassos).
[[nodiscard]] StateId end_state(const Structure& m, const Lasso& p);

// Unique normal form of the represented path: minimal stem plus primitive
// cycle. Two representations denote the same path iff their canonical forms
// are equal.
[[nodiscard]] Lasso canonical(const Structure& m, Lasso p);

// The finitely many distinct suffixes of a path, as an indexed space:
// representatives 0..size()-1 are, in order, the suffixes at each stem
// position (0 = the whole path), then either one per cycle rotation or — for
// finite paths — the final empty suffix. next(i) steps one transition and
// wraps inside the cycle.
class SuffixSpace {
 public:
  SuffixSpace(const Structure& m, const Lasso& p);

  [[nodiscard]] std::size_t size() const { return anchors_.size(); }
  [[nodiscard]] bool finite() const { return finite_; }
  [[nodiscard]] bool empty_at(std::size_t i) const {
    return finite_ && i + 1 == anchors_.size();
  }
  [[nodiscard]] StateId anchor_at(std::size_t i) const { return anchors_[i]; }
  // First transition of suffix i (precondition: !empty_at(i)).
  [[nodiscard]] TransIdx trans_at(std::size_t i) const { return trans_[i]; }
  [[nodiscard]] std::size_t next(std::size_t i) const;
  [[nodiscard]] std::size_t stem_size() const { return stem_size_; }
  // Materializes suffix i as a path of its own.
  [[nodiscard]] Lasso suffix(std::size_t i) const;

 private:
  const Lasso lasso_;
  bool finite_;
  std::size_t stem_size_;
  std::vector<StateId> anchors_;
  std::vector<TransIdx> trans_;  // parallel to anchors_; unused tail entry for finite
};

// Materialized distinct suffixes, index 0 being the path itself; the
// elements beyond index 0 are the proper suffixes.
[[nodiscard]] std::vector<Lasso> suffixes(const Structure& m, const Lasso& p);

// All distinct maximal paths from `from` whose canonical representation has
// at most `bound` transitions (stem + cycle), in a deterministic order.
// Finite walks ending in a deadlock yield finite paths; cycle-closing edges
// yield lassos. Exponential in the bound on branching structures — callers
// keep the bound small.
[[nodiscard]] std::vector<Lasso> mu_paths(const Structure& m, StateId from,
                                          std::size_t bound);

// One path per line: transitions as "src -{labels}-> dst" ("-tau->" for the
// silent set, plain "src -> dst" for state-labeled structures), stem and
// cycle separated by " | "; the empty path renders as its anchor state.
[[nodiscard]] std::string render_lasso(const Structure& m, const Lasso& p);

}  // namespace tempobridge
