#include "tempobridge/checker3.hpp"

#include <deque>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace tempobridge {

namespace {

// All propositions and actions a formula mentions must be declared in the
// structure; checked up front so unreachable subformulas fail too.
void require_known_symbols(const Structure& m, const StatePtr& f) {
  if (!f) return;
  if (f->kind == StateKind::Prop && !m.prop_index(f->name))
    throw std::invalid_argument("unknown proposition: " + f->name);
  if (f->kind == StateKind::AxAct && !m.action_index(f->name))
    throw std::invalid_argument("unknown action: " + f->name);
  require_known_symbols(m, f->a);
  require_known_symbols(m, f->b);
}

void require_upml_inputs(const Structure& m, StateId s, const StatePtr& f) {
  require_valid(m);
  if (m.kind != StructureKind::Kmts)
    throw std::invalid_argument(
        "UPML formulas are interpreted over kmts structures, not " +
        std::string(to_string(m.kind)));
  if (s >= m.n_states())
    throw std::invalid_argument("state id " + std::to_string(s) +
                                " out of range");
  const std::vector<std::string> violations = conforms(f, LogicId::Upml);
  if (!violations.empty())
    throw std::invalid_argument("formula not in the UPML grammar: " +
                                violations.front());
  require_known_symbols(m, f);
}

class UpmlEval {
 public:
  explicit UpmlEval(const Structure& m) : m_(m), adj_(m) {}

  Truth3 eval(StateId s, const StatePtr& f) {
    for (auto& entry : memo_)
      if (equals(entry.first, f)) {
        std::optional<Truth3>& slot = entry.second[s];
        if (!slot) slot = compute(s, f);
        return *slot;
      }
    memo_.emplace_back(f, std::vector<std::optional<Truth3>>(m_.n_states()));
    std::optional<Truth3>& slot = memo_.back().second[s];
    slot = compute(s, f);
    return *slot;
  }

 private:
  Truth3 compute(StateId s, const StatePtr& f) {
    switch (f->kind) {
      case StateKind::Prop: {
        const std::optional<std::size_t> p = m_.prop_index(f->name);
        if (!p) throw std::invalid_argument("unknown proposition: " + f->name);
        return m_.label_of(s, *p);
      }
      case StateKind::Not:
        return kleene_not(eval(s, f->a));
      case StateKind::And:
        return kleene_and(eval(s, f->a), eval(s, f->b));
      case StateKind::Ax: {
        bool all_true = true, some_false = false;
        for (TransIdx t : adj_.out(s)) {
          const Truth3 v = eval(m_.transitions[t].dst, f->a);
          if (v != Truth3::True) all_true = false;
          if (v == Truth3::False) some_false = true;
        }
        if (all_true) return Truth3::True;
        return some_false ? Truth3::False : Truth3::Bot;
      }
      case StateKind::AxAct: {
        const std::optional<std::size_t> idx = m_.action_index(f->name);
        if (!idx) throw std::invalid_argument("unknown action: " + f->name);
        const bool must = m_.action_mods[*idx] == ActMod::Must;
        bool all_true = true, some_false = false;
        for (TransIdx t : adj_.out(s)) {
          const Transition& tr = m_.transitions[t];
          if (((tr.labels >> *idx) & 1) == 0) continue;
          const Truth3 v = eval(tr.dst, f->a);
          if (v != Truth3::True) all_true = false;
          if (must && v == Truth3::False) some_false = true;
        }
        if (all_true) return Truth3::True;
        return some_false ? Truth3::False : Truth3::Bot;
      }
      default:
        throw std::logic_error("connective outside the UPML grammar");
    }
  }

  const Structure& m_;
  const Adjacency adj_;
  std::deque<std::pair<StatePtr, std::vector<std::optional<Truth3>>>> memo_;
};

}  // namespace

Truth3 eval_upml(const Structure& m, StateId s, const StatePtr& f) {
  require_upml_inputs(m, s, f);
  UpmlEval engine(m);
  return engine.eval(s, f);
}

Truth3 eval_ex_upml(const Structure& m, StateId s, const std::string& action,
                    const StatePtr& f) {
  require_upml_inputs(m, s, f);
  const std::optional<std::size_t> idx = m.action_index(action);
  if (!idx) throw std::invalid_argument("unknown action: " + action);
  const bool must = m.action_mods[*idx] == ActMod::Must;
  const Adjacency adj(m);
  UpmlEval engine(m);
  bool some_true = false, all_false = true;
  for (TransIdx t : adj.out(s)) {
    const Transition& tr = m.transitions[t];
    if (((tr.labels >> *idx) & 1) == 0) continue;
    const Truth3 v = engine.eval(tr.dst, f);
    if (must && v == Truth3::True) some_true = true;
    if (v != Truth3::False) all_false = false;
  }
  if (some_true) return Truth3::True;
  return all_false ? Truth3::False : Truth3::Bot;
}

}  // namespace tempobridge
