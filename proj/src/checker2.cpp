#include "tempobridge/checker2.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace tempobridge {
namespace detail {

bool logic_pairs_with(LogicId logic, StructureKind kind) {
  switch (logic) {
    case LogicId::Ctl:
    case LogicId::CtlStar:
      return kind == StructureKind::Ks;
    case LogicId::Actl:
    case LogicId::ActlStar:
      return kind == StructureKind::Lts;
    case LogicId::Uctl:
    case LogicId::UctlStar:
      return kind == StructureKind::Kts;
    case LogicId::Upml:
      return kind == StructureKind::Kmts;
  }
  return false;
}

std::size_t witness_bound(const Structure& m, const PathPtr& pi) {
  constexpr std::size_t kMax = std::numeric_limits<std::size_t>::max();
  const std::size_t n = m.n_states();
  const std::size_t cl = closure_size(pi);
  std::size_t rule = kMax;
  if (cl < 8 * sizeof(std::size_t) - 1) {
    const std::size_t pow2 = std::size_t{1} << cl;
    rule = (n != 0 && pow2 > kMax / n) ? kMax : n * pow2;
  }
  return std::max(rule, 2 * n + 2);
}

std::size_t effective_bound(const Structure& m, const PathPtr& pi,
                            const CheckConfig& cfg, bool& truncated) {
  const std::size_t sound = witness_bound(m, pi);
  const std::size_t eff =
      cfg.bound_override ? *cfg.bound_override : std::min(sound, cfg.ceiling);
  if (eff < sound) truncated = true;
  return eff;
}

namespace {

using Vec = std::vector<char>;

Vec negated(Vec v) {
  for (char& x : v) x = x ? 0 : 1;
  return v;
}

// ---------------------------------------------------------------------------
// Path-level evaluation: one truth value per distinct suffix of the lasso.
// ---------------------------------------------------------------------------

class PathTable {
 public:
  PathTable(const Structure& m, const Lasso& sigma, const EmbedFn& embed)
      : m_(m), space_(m, sigma), embed_(embed) {}

  [[nodiscard]] bool value_at_origin(const PathPtr& pi) {
    return values(pi)[0] != 0;
  }

 private:
  [[nodiscard]] std::size_t count() const { return space_.size(); }

  // Memoized per-formula suffix vectors. A deque keeps references to already
  // computed rows stable while recursion appends new ones.
  const Vec& values(const PathPtr& p) {
    for (const auto& entry : memo_)
      if (equals(entry.first, p)) return entry.second;
    Vec v = compute(p);
    memo_.emplace_back(p, std::move(v));
    return memo_.back().second;
  }

  [[nodiscard]] LabelMask labels_at(std::size_t i) const {
    return m_.transitions[space_.trans_at(i)].labels;
  }

  Vec state_values(const StatePtr& f) const {
    Vec v(count(), 0);
    for (std::size_t i = 0; i < count(); ++i)
      v[i] = embed_(space_.anchor_at(i), f) ? 1 : 0;
    return v;
  }

  // Truth of an action predicate on the first transition of each suffix;
  // false at the empty suffix, which has no transition.
  Vec act_values(const ActPtr& chi) const {
    Vec v(count(), 0);
    for (std::size_t i = 0; i < count(); ++i)
      if (!space_.empty_at(i))
        v[i] = eval_action(m_, chi, labels_at(i)) ? 1 : 0;
    return v;
  }

  // Solves v[i] = step(i, v[next(i)]) backward over the suffix positions;
  // `seed` stands in for the missing next value at the final suffix of a
  // finite path. On the cycle the recurrence is circular, so it is swept
  // twice: the first pass settles the value at the cycle head under the
  // seed, the second propagates the wrap-around value. Monotone steps make
  // this the least (seed false) or greatest (seed true) solution.
  template <typename Step>
  Vec solve_backward(bool seed, Step step) const {
    const std::size_t n = count();
    const std::size_t stem = space_.stem_size();
    Vec v(n, seed ? 1 : 0);
    if (space_.finite()) {
      for (std::size_t k = n; k-- > 0;)
        v[k] = step(k, k + 1 < n ? v[k + 1] != 0 : seed) ? 1 : 0;
    } else {
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t k = n; k-- > stem;)
          v[k] = step(k, v[space_.next(k)] != 0) ? 1 : 0;
      for (std::size_t k = stem; k-- > 0;)
        v[k] = step(k, v[k + 1] != 0) ? 1 : 0;
    }
    return v;
  }

  // The strong indexed until: some suffix makes the continuation predicate
  // true after one step under chi, the run closes with a chi2 transition
  // into phi2, and phi holds at every state passed on the way.
  Vec chi_strong(const Vec& a, const Vec& b, const Vec& c, const Vec& c2) const {
    const Vec rr = solve_backward(false, [&](std::size_t k, bool vn) {
      if (space_.empty_at(k) || !a[k]) return false;
      const std::size_t nk = space_.next(k);
      return (c2[k] != 0 && b[nk] != 0) || (c[k] != 0 && vn);
    });
    Vec v(count(), 0);
    for (std::size_t i = 0; i < count(); ++i)
      if (!space_.empty_at(i) && a[i] && c[i])
        v[i] = rr[space_.next(i)];
    return v;
  }

  Vec compute(const PathPtr& p) {
    const std::size_t n = count();
    switch (p->kind) {
      case PathKind::Embed:
        return state_values(p->phi);
      case PathKind::NotP:
        return negated(values(p->p));
      case PathKind::AndP: {
        Vec v = values(p->p);
        const Vec& w = values(p->q);
        for (std::size_t i = 0; i < n; ++i) v[i] = v[i] && w[i];
        return v;
      }
      case PathKind::X: {
        const Vec& sub = values(p->p);
        Vec v(n, 0);
        for (std::size_t i = 0; i < n; ++i)
          if (!space_.empty_at(i)) v[i] = sub[space_.next(i)];
        return v;
      }
      case PathKind::Xact: {
        const Vec& sub = values(p->p);
        const std::optional<std::size_t> a = m_.action_index(p->act);
        Vec v(n, 0);
        if (!a) return v;  // action not in the alphabet: never taken
        for (std::size_t i = 0; i < n; ++i)
          if (!space_.empty_at(i) && ((labels_at(i) >> *a) & 1))
            v[i] = sub[space_.next(i)];
        return v;
      }
      case PathKind::U: {
        const Vec& l = values(p->p);
        const Vec& r = values(p->q);
        return solve_backward(false, [&](std::size_t k, bool vn) {
          return r[k] != 0 || (l[k] != 0 && vn);
        });
      }
      case PathKind::W: {
        const Vec& l = values(p->p);
        const Vec& r = values(p->q);
        Vec u = solve_backward(false, [&](std::size_t k, bool vn) {
          return r[k] != 0 || (l[k] != 0 && vn);
        });
        const Vec g = solve_backward(true, [&](std::size_t k, bool vn) {
          return l[k] != 0 && (space_.empty_at(k) || vn);
        });
        for (std::size_t i = 0; i < n; ++i) u[i] = u[i] || g[i];
        return u;
      }
      case PathKind::Xchi: {
        const Vec av = act_values(p->chi);
        const Vec tv = state_values(p->phi);
        Vec v(n, 0);
        for (std::size_t i = 0; i < n; ++i)
          if (!space_.empty_at(i) && av[i])
            v[i] = tv[space_.next(i)];
        return v;
      }
      case PathKind::Uchi: {
        return chi_strong(state_values(p->phi), state_values(p->phi2),
                          act_values(p->chi), act_values(p->chi2));
      }
      case PathKind::Wchi: {
        const Vec a = state_values(p->phi);
        const Vec c = act_values(p->chi);
        Vec u = chi_strong(a, state_values(p->phi2), c, act_values(p->chi2));
        // Weak clause: the invariant holds at every suffix anchor and every
        // transition taken satisfies chi; trivially so past the end.
        const Vec g = solve_backward(true, [&](std::size_t k, bool vn) {
          return a[k] != 0 && (space_.empty_at(k) || (c[k] != 0 && vn));
        });
        for (std::size_t i = 0; i < n; ++i) u[i] = u[i] || g[i];
        return u;
      }
    }
    throw std::logic_error("unhandled path connective");
  }

  const Structure& m_;
  const SuffixSpace space_;
  const EmbedFn& embed_;
  std::deque<std::pair<PathPtr, Vec>> memo_;
};

// ---------------------------------------------------------------------------
// Branching-time engine for the non-star logics: fixpoint labeling.
// ---------------------------------------------------------------------------

class NonStarChecker {
 public:
  explicit NonStarChecker(const Structure& m) : m_(m), adj_(m) {}

  const Vec& states(const StatePtr& f) {
    for (const auto& entry : memo_)
      if (equals(entry.first, f)) return entry.second;
    Vec v = compute(f);
    memo_.emplace_back(f, std::move(v));
    return memo_.back().second;
  }

 private:
  [[nodiscard]] std::size_t n() const { return m_.n_states(); }

  Vec compute(const StatePtr& f) {
    switch (f->kind) {
      case StateKind::True:
        return Vec(n(), 1);
      case StateKind::Prop: {
        Vec v(n(), 0);
        const std::optional<std::size_t> p = m_.prop_index(f->name);
        if (!p) return v;  // unlisted proposition: false everywhere
        for (StateId s = 0; s < n(); ++s)
          v[s] = m_.label_of(s, *p) == Truth3::True ? 1 : 0;
        return v;
      }
      case StateKind::Not:
        return negated(states(f->a));
      case StateKind::And: {
        Vec v = states(f->a);
        const Vec& w = states(f->b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] && w[i];
        return v;
      }
      case StateKind::Exists:
        return exists_path(f->path);
      case StateKind::Ax:
      case StateKind::AxAct:
        break;
    }
    throw std::logic_error("three-valued connective in a two-valued checker");
  }

  // The path operand of every quantifier in the non-star grammars is a
  // (possibly negated) single temporal operator over embedded state
  // formulas, so each case below is one fixpoint computation.
  Vec exists_path(PathPtr pi) {
    bool neg = false;
    while (pi->kind == PathKind::NotP) {
      neg = !neg;
      pi = pi->p;
    }
    switch (pi->kind) {
      case PathKind::X: {
        const Vec& sub = states(embedded(pi->p));
        return neg ? some_step_or_end(
                         [&](const Transition& t) { return sub[t.dst] == 0; })
                   : some_step([&](const Transition& t) { return sub[t.dst] != 0; });
      }
      case PathKind::Xact: {
        const Vec& sub = states(embedded(pi->p));
        const std::optional<std::size_t> a = m_.action_index(pi->act);
        const auto hit = [&](const Transition& t) {
          return a && ((t.labels >> *a) & 1) && sub[t.dst] != 0;
        };
        return neg ? some_step_or_end([&](const Transition& t) { return !hit(t); })
                   : some_step(hit);
      }
      case PathKind::U: {
        const Vec& l = states(embedded(pi->p));
        const Vec& r = states(embedded(pi->q));
        if (!neg) return eu(l, r);
        // A path avoids the until iff the target stays false until both
        // operands fail at once, or stays false through the whole path.
        const Vec nl = negated(l);
        const Vec nr = negated(r);
        Vec both(n(), 0);
        for (StateId s = 0; s < n(); ++s) both[s] = nl[s] && nr[s];
        return either(eu(nr, both), eg(nr));
      }
      case PathKind::W: {
        const Vec& l = states(embedded(pi->p));
        const Vec& r = states(embedded(pi->q));
        if (!neg) return either(eu(l, r), eg(l));
        const Vec nl = negated(l);
        const Vec nr = negated(r);
        Vec both(n(), 0);
        for (StateId s = 0; s < n(); ++s) both[s] = nl[s] && nr[s];
        return eu(nr, both);
      }
      case PathKind::Xchi: {
        const Vec& sub = states(pi->phi);
        const ActPtr chi = pi->chi;
        const auto hit = [&](const Transition& t) {
          return eval_action(m_, chi, t.labels) && sub[t.dst] != 0;
        };
        return neg ? some_step_or_end([&](const Transition& t) { return !hit(t); })
                   : some_step(hit);
      }
      case PathKind::Uchi: {
        const Vec a = states(pi->phi);
        const Vec b = states(pi->phi2);
        return neg ? enot_uchi(a, b, pi->chi, pi->chi2)
                   : euchi(a, b, pi->chi, pi->chi2);
      }
      case PathKind::Wchi: {
        const Vec a = states(pi->phi);
        const Vec b = states(pi->phi2);
        return neg ? enot_wchi(a, b, pi->chi, pi->chi2)
                   : either(euchi(a, b, pi->chi, pi->chi2), egchi(a, pi->chi));
      }
      default:
        throw std::logic_error("nested path operator in a branching-time checker");
    }
  }

  static const StatePtr& embedded(const PathPtr& p) {
    if (p->kind != PathKind::Embed)
      throw std::logic_error("nested path operand in a branching-time checker");
    return p->phi;
  }

  static Vec either(Vec a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] || b[i];
    return a;
  }

  // Simultaneous fixpoint iteration; `step` must be monotone in v.
  template <typename Step>
  Vec fix(bool seed, Step step) const {
    Vec v(n(), seed ? 1 : 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (StateId s = 0; s < n(); ++s) {
        const char nv = step(s, v) ? 1 : 0;
        if (nv != v[s]) {
          v[s] = nv;
          changed = true;
        }
      }
    }
    return v;
  }

  template <typename Pred>
  Vec some_step(Pred pred) const {
    Vec v(n(), 0);
    for (StateId s = 0; s < n(); ++s)
      for (TransIdx t : adj_.out(s))
        if (pred(m_.transitions[t])) {
          v[s] = 1;
          break;
        }
    return v;
  }

  // Like some_step, but a deadlocked state also qualifies: its one maximal
  // path is the empty path, on which every negated next-step claim holds.
  template <typename Pred>
  Vec some_step_or_end(Pred pred) const {
    Vec v = some_step(pred);
    for (StateId s = 0; s < n(); ++s)
      if (adj_.deadlocked(s)) v[s] = 1;
    return v;
  }

  Vec eu(const Vec& l, const Vec& r) const {
    return fix(false, [&](StateId s, const Vec& v) {
      if (r[s]) return true;
      if (!l[s]) return false;
      for (TransIdx t : adj_.out(s))
        if (v[m_.transitions[t].dst]) return true;
      return false;
    });
  }

  Vec eg(const Vec& l) const {
    return fix(true, [&](StateId s, const Vec& v) {
      if (!l[s]) return false;
      if (adj_.deadlocked(s)) return true;
      for (TransIdx t : adj_.out(s))
        if (v[m_.transitions[t].dst]) return true;
      return false;
    });
  }

  Vec euchi(const Vec& a, const Vec& b, const ActPtr& chi, const ActPtr& chi2) const {
    // r(u): from u the run can continue — the invariant holds at u and some
    // transition either closes (chi2 into phi2) or extends (chi into r).
    const Vec r = fix(false, [&](StateId s, const Vec& v) {
      if (!a[s]) return false;
      for (TransIdx t : adj_.out(s)) {
        const Transition& tr = m_.transitions[t];
        if (eval_action(m_, chi2, tr.labels) && b[tr.dst]) return true;
        if (eval_action(m_, chi, tr.labels) && v[tr.dst]) return true;
      }
      return false;
    });
    Vec v(n(), 0);
    for (StateId s = 0; s < n(); ++s) {
      if (!a[s]) continue;
      for (TransIdx t : adj_.out(s)) {
        const Transition& tr = m_.transitions[t];
        if (eval_action(m_, chi, tr.labels) && r[tr.dst]) {
          v[s] = 1;
          break;
        }
      }
    }
    return v;
  }

  Vec egchi(const Vec& a, const ActPtr& chi) const {
    return fix(true, [&](StateId s, const Vec& v) {
      if (!a[s]) return false;
      if (adj_.deadlocked(s)) return true;
      for (TransIdx t : adj_.out(s)) {
        const Transition& tr = m_.transitions[t];
        if (eval_action(m_, chi, tr.labels) && v[tr.dst]) return true;
      }
      return false;
    });
  }

  // Some maximal path fails the strong indexed until. Failure can persist
  // forever, so the continuation predicate is a greatest fixpoint: g(u)
  // holds when from u the run never completes the pattern.
  Vec enot_uchi(const Vec& a, const Vec& b, const ActPtr& chi, const ActPtr& chi2) const {
    const Vec g = fix(true, [&](StateId s, const Vec& v) {
      if (!a[s]) return true;
      if (adj_.deadlocked(s)) return true;
      for (TransIdx t : adj_.out(s)) {
        const Transition& tr = m_.transitions[t];
        const bool closes = eval_action(m_, chi2, tr.labels) && b[tr.dst];
        const bool extends = eval_action(m_, chi, tr.labels);
        if (!closes && (!extends || v[tr.dst])) return true;
      }
      return false;
    });
    Vec v(n(), 0);
    for (StateId s = 0; s < n(); ++s) {
      if (adj_.deadlocked(s)) {
        v[s] = 1;
        continue;
      }
      for (TransIdx t : adj_.out(s)) {
        const Transition& tr = m_.transitions[t];
        if (!(a[s] && eval_action(m_, chi, tr.labels)) || g[tr.dst]) {
          v[s] = 1;
          break;
        }
      }
    }
    return v;
  }

  // Some maximal path fails the weak form: both the strong pattern and the
  // forever clause must break, which always happens at finite depth — a
  // least fixpoint.
  Vec enot_wchi(const Vec& a, const Vec& b, const ActPtr& chi, const ActPtr& chi2) const {
    const Vec c = fix(false, [&](StateId s, const Vec& v) {
      if (!a[s]) return true;
      for (TransIdx t : adj_.out(s)) {
        const Transition& tr = m_.transitions[t];
        const bool closes = eval_action(m_, chi2, tr.labels) && b[tr.dst];
        const bool extends = eval_action(m_, chi, tr.labels);
        if (!closes && (!extends || v[tr.dst])) return true;
      }
      return false;
    });
    Vec v(n(), 0);
    for (StateId s = 0; s < n(); ++s) {
      if (!a[s]) {
        v[s] = 1;
        continue;
      }
      for (TransIdx t : adj_.out(s)) {
        const Transition& tr = m_.transitions[t];
        if (!eval_action(m_, chi, tr.labels) || c[tr.dst]) {
          v[s] = 1;
          break;
        }
      }
    }
    return v;
  }

  const Structure& m_;
  const Adjacency adj_;
  std::deque<std::pair<StatePtr, Vec>> memo_;
};

// ---------------------------------------------------------------------------
// Star engine: exact search over the product of states with valuations of
// the next-step and until subformulas.
// ---------------------------------------------------------------------------

class StarChecker {
 public:
  StarChecker(const Structure& m, const CheckConfig& cfg, bool& bounded)
      : m_(m), adj_(m), cfg_(cfg), bounded_(bounded) {}

  const Vec& states(const StatePtr& f) {
    for (const auto& entry : memo_)
      if (equals(entry.first, f)) return entry.second;
    Vec v = compute(f);
    memo_.emplace_back(f, std::move(v));
    return memo_.back().second;
  }

 private:
  // One closure member: a path subformula of the quantified formula that
  // does not cross into embedded state formulas. X-family members carry a
  // valuation bit meaning "this operator holds at the current suffix";
  // until members carry a bit meaning "the until holds at the next suffix".
  struct Node {
    PathPtr f;
    int a = -1, b = -1;              // operand node ids
    int bit = -1;                    // valuation bit index, or -1
    int embed = -1;                  // row into the embedded-formula table
    std::optional<std::size_t> act;  // Xact: alphabet index of the action
  };

  [[nodiscard]] std::size_t n() const { return m_.n_states(); }

  Vec compute(const StatePtr& f) {
    switch (f->kind) {
      case StateKind::True:
        return Vec(n(), 1);
      case StateKind::Prop: {
        Vec v(n(), 0);
        const std::optional<std::size_t> p = m_.prop_index(f->name);
        if (!p) return v;
        for (StateId s = 0; s < n(); ++s)
          v[s] = m_.label_of(s, *p) == Truth3::True ? 1 : 0;
        return v;
      }
      case StateKind::Not:
        return negated(states(f->a));
      case StateKind::And: {
        Vec v = states(f->a);
        const Vec& w = states(f->b);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = v[i] && w[i];
        return v;
      }
      case StateKind::Exists:
        return exists_product(f->path);
      case StateKind::Ax:
      case StateKind::AxAct:
        break;
    }
    throw std::logic_error("three-valued connective in a two-valued checker");
  }

  int collect(const PathPtr& p, std::vector<Node>& nodes,
              std::vector<StatePtr>& embeds, int& bits) {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
      if (equals(nodes[i].f, p)) return i;
    Node nd;
    nd.f = p;
    switch (p->kind) {
      case PathKind::Embed: {
        int row = -1;
        for (int r = 0; r < static_cast<int>(embeds.size()); ++r)
          if (equals(embeds[r], p->phi)) {
            row = r;
            break;
          }
        if (row < 0) {
          row = static_cast<int>(embeds.size());
          embeds.push_back(p->phi);
        }
        nd.embed = row;
        break;
      }
      case PathKind::NotP:
        nd.a = collect(p->p, nodes, embeds, bits);
        break;
      case PathKind::AndP:
        nd.a = collect(p->p, nodes, embeds, bits);
        nd.b = collect(p->q, nodes, embeds, bits);
        break;
      case PathKind::X:
        nd.a = collect(p->p, nodes, embeds, bits);
        nd.bit = bits++;
        break;
      case PathKind::Xact:
        nd.a = collect(p->p, nodes, embeds, bits);
        nd.bit = bits++;
        nd.act = m_.action_index(p->act);
        break;
      case PathKind::U:
        nd.a = collect(p->p, nodes, embeds, bits);
        nd.b = collect(p->q, nodes, embeds, bits);
        nd.bit = bits++;
        break;
      default:
        throw std::logic_error("indexed operator in the star engine");
    }
    nodes.push_back(std::move(nd));
    return static_cast<int>(nodes.size()) - 1;
  }

  Vec exists_product(const PathPtr& pi) {
    // The engine is exact; the configuration only determines whether the
    // result must be annotated as computed under a truncating setup.
    {
      bool trunc = false;
      (void)effective_bound(m_, pi, cfg_, trunc);
      if (trunc) bounded_ = true;
    }

    std::vector<Node> nodes;
    std::vector<StatePtr> embeds;
    int bits = 0;
    const int top = collect(pi, nodes, embeds, bits);
    if (nodes.size() > 63)
      throw std::invalid_argument(
          "path formula too large for the star engine (over 63 distinct subterms)");
    if (bits > 20)
      throw std::invalid_argument(
          "path formula too large for the star engine (over 20 next-step/until operators)");
    const std::size_t masks = std::size_t{1} << bits;
    const std::size_t total = n() * masks;
    if (total > (std::size_t{1} << 21))
      throw std::invalid_argument("state space too large for the star engine");

    std::vector<const Vec*> erows;
    erows.reserve(embeds.size());
    for (const StatePtr& g : embeds) erows.push_back(&states(g));

    // Truth of every closure member at every atom (state, valuation),
    // folded bottom-up; operands precede their parents in `nodes`.
    std::vector<std::uint64_t> dval(total);
    for (std::size_t at = 0; at < total; ++at) {
      const StateId s = static_cast<StateId>(at >> bits);
      const std::uint32_t mk = static_cast<std::uint32_t>(at & (masks - 1));
      std::uint64_t d = 0;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& nd = nodes[i];
        bool val = false;
        switch (nd.f->kind) {
          case PathKind::Embed:
            val = (*erows[nd.embed])[s] != 0;
            break;
          case PathKind::NotP:
            val = ((d >> nd.a) & 1) == 0;
            break;
          case PathKind::AndP:
            val = ((d >> nd.a) & 1) != 0 && ((d >> nd.b) & 1) != 0;
            break;
          case PathKind::X:
          case PathKind::Xact:
            val = ((mk >> nd.bit) & 1) != 0;
            break;
          case PathKind::U:
            val = ((d >> nd.b) & 1) != 0 ||
                  (((d >> nd.a) & 1) != 0 && ((mk >> nd.bit) & 1) != 0);
            break;
          default:
            break;
        }
        if (val) d |= std::uint64_t{1} << i;
      }
      dval[at] = d;
    }

    // One edge per structure transition and target valuation: the source
    // valuation is forced — each bit is a function of the target atom — so
    // runs of the product agree with the semantics step by step. An atom of
    // a deadlocked state with the all-false valuation is an end atom: its
    // truth assignment is exactly the empty-path semantics.
    std::vector<std::vector<std::uint32_t>> succ(total);
    for (const Transition& tr : m_.transitions) {
      for (std::size_t tmask = 0; tmask < masks; ++tmask) {
        const std::size_t tat = (std::size_t{tr.dst} << bits) | tmask;
        const std::uint64_t td = dval[tat];
        std::uint32_t req = 0;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          const Node& nd = nodes[i];
          if (nd.bit < 0) continue;
          bool need = false;
          switch (nd.f->kind) {
            case PathKind::X:
              need = ((td >> nd.a) & 1) != 0;
              break;
            case PathKind::Xact:
              need = nd.act.has_value() && ((tr.labels >> *nd.act) & 1) != 0 &&
                     ((td >> nd.a) & 1) != 0;
              break;
            case PathKind::U:
              need = ((td >> i) & 1) != 0;
              break;
            default:
              break;
          }
          if (need) req |= std::uint32_t{1} << nd.bit;
        }
        succ[(std::size_t{tr.src} << bits) | req].push_back(
            static_cast<std::uint32_t>(tat));
      }
    }

    // Strongly connected components, completion-ordered: every edge leaving
    // a component points into one with a smaller id.
    std::vector<int> comp(total, -1);
    const int n_comps = scc(succ, comp);

    std::vector<std::vector<std::uint32_t>> members(n_comps);
    for (std::size_t at = 0; at < total; ++at)
      members[comp[at]].push_back(static_cast<std::uint32_t>(at));

    std::vector<std::size_t> until_nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].f->kind == PathKind::U) until_nodes.push_back(i);

    // An atom is good when some run from it reaches an end atom or cycles
    // inside a component where every pending until is eventually honoured:
    // some atom of the component has the until false or its target true.
    std::vector<char> good(n_comps, 0);
    for (int c = 0; c < n_comps; ++c) {
      bool internal = false, reach = false, has_end = false;
      for (std::uint32_t at : members[c]) {
        if (adj_.deadlocked(static_cast<StateId>(at >> bits)) &&
            (at & (masks - 1)) == 0)
          has_end = true;
        for (std::uint32_t to : succ[at]) {
          if (comp[to] == c)
            internal = true;
          else if (good[comp[to]])
            reach = true;
        }
      }
      bool accepting = internal;
      for (std::size_t ui : until_nodes) {
        if (!accepting) break;
        bool honoured = false;
        for (std::uint32_t at : members[c]) {
          const std::uint64_t d = dval[at];
          if (((d >> ui) & 1) == 0 || ((d >> nodes[ui].b) & 1) != 0) {
            honoured = true;
            break;
          }
        }
        accepting = honoured;
      }
      good[c] = accepting || has_end || reach;
    }

    Vec v(n(), 0);
    for (StateId s = 0; s < n(); ++s)
      for (std::size_t mk = 0; mk < masks && !v[s]; ++mk) {
        const std::size_t at = (std::size_t{s} << bits) | mk;
        if (((dval[at] >> top) & 1) != 0 && good[comp[at]]) v[s] = 1;
      }
    return v;
  }

  // Iterative Tarjan; returns the component count and fills comp with ids
  // assigned in completion order.
  static int scc(const std::vector<std::vector<std::uint32_t>>& succ,
                 std::vector<int>& comp) {
    const std::size_t total = succ.size();
    std::vector<std::uint32_t> num(total, 0), low(total, 0);
    std::vector<char> seen(total, 0), onstack(total, 0);
    std::vector<std::uint32_t> stack;
    struct Frame {
      std::uint32_t v;
      std::size_t child;
    };
    std::vector<Frame> call;
    std::uint32_t counter = 0;
    int n_comps = 0;
    for (std::size_t root = 0; root < total; ++root) {
      if (seen[root]) continue;
      call.push_back({static_cast<std::uint32_t>(root), 0});
      while (!call.empty()) {
        const std::uint32_t v = call.back().v;
        if (call.back().child == 0) {
          seen[v] = 1;
          num[v] = low[v] = counter++;
          stack.push_back(v);
          onstack[v] = 1;
        }
        if (call.back().child < succ[v].size()) {
          const std::uint32_t w = succ[v][call.back().child++];
          if (!seen[w])
            call.push_back({w, 0});
          else if (onstack[w])
            low[v] = std::min(low[v], num[w]);
        } else {
          if (low[v] == num[v]) {
            for (;;) {
              const std::uint32_t w = stack.back();
              stack.pop_back();
              onstack[w] = 0;
              comp[w] = n_comps;
              if (w == v) break;
            }
            ++n_comps;
          }
          call.pop_back();
          if (!call.empty()) {
            const std::uint32_t parent = call.back().v;
            low[parent] = std::min(low[parent], low[v]);
          }
        }
      }
    }
    return n_comps;
  }

  const Structure& m_;
  const Adjacency adj_;
  const CheckConfig& cfg_;
  bool& bounded_;
  std::deque<std::pair<StatePtr, Vec>> memo_;
};

}  // namespace

bool eval_path(const Structure& m, const Lasso& sigma, const PathPtr& pi,
               const EmbedFn& embed) {
  PathTable table(m, sigma, embed);
  return table.value_at_origin(pi);
}

std::vector<char> eval_states_nonstar(const Structure& m, const StatePtr& f) {
  NonStarChecker checker(m);
  return checker.states(f);
}

std::vector<char> eval_states_star(const Structure& m, const StatePtr& f,
                                   const CheckConfig& cfg, bool& bounded) {
  StarChecker checker(m, cfg, bounded);
  return checker.states(f);
}

namespace {

// Enumeration core with a per-(formula, state) memo, so each quantifier's
// path search runs once per anchor no matter how often it is embedded.
class EnumEval {
 public:
  EnumEval(const Structure& m, const CheckConfig& cfg, bool& bounded)
      : m_(m), cfg_(cfg), bounded_(bounded) {}

  bool eval(StateId s, const StatePtr& f) {
    switch (f->kind) {
      case StateKind::True:
        return true;
      case StateKind::Prop: {
        const std::optional<std::size_t> p = m_.prop_index(f->name);
        return p && m_.label_of(s, *p) == Truth3::True;
      }
      case StateKind::Not:
        return !eval(s, f->a);
      case StateKind::And:
        return eval(s, f->a) && eval(s, f->b);
      case StateKind::Exists:
        return memoized(s, f);
      case StateKind::Ax:
      case StateKind::AxAct:
        break;
    }
    throw std::logic_error("three-valued connective in a two-valued checker");
  }

 private:
  bool memoized(StateId s, const StatePtr& f) {
    for (auto& entry : memo_)
      if (equals(entry.first, f)) {
        signed char& slot = entry.second[s];
        if (slot < 0) slot = search(s, f->path) ? 1 : 0;
        return slot != 0;
      }
    memo_.emplace_back(f, std::vector<signed char>(m_.n_states(), -1));
    signed char& slot = memo_.back().second[s];
    slot = search(s, f->path) ? 1 : 0;
    return slot != 0;
  }

  bool search(StateId s, const PathPtr& pi) {
    bool trunc = false;
    const std::size_t bound = effective_bound(m_, pi, cfg_, trunc);
    if (trunc) bounded_ = true;
    const EmbedFn embed = [this](StateId u, const StatePtr& g) {
      return eval(u, g);
    };
    for (const Lasso& sigma : mu_paths(m_, s, bound))
      if (eval_path(m_, sigma, pi, embed)) return true;
    return false;
  }

  const Structure& m_;
  const CheckConfig& cfg_;
  bool& bounded_;
  std::deque<std::pair<StatePtr, std::vector<signed char>>> memo_;
};

}  // namespace

bool eval_state_enum(const Structure& m, StateId s, const StatePtr& f,
                     const CheckConfig& cfg, bool& bounded) {
  EnumEval engine(m, cfg, bounded);
  return engine.eval(s, f);
}

}  // namespace detail

namespace {

void require_checkable(const Structure& m, LogicId logic,
                       const CheckConfig& cfg) {
  if (logic == LogicId::Upml)
    throw std::invalid_argument(
        "UPML is three-valued; use the three-valued evaluator");
  if (!detail::logic_pairs_with(logic, m.kind))
    throw std::invalid_argument(std::string(to_string(logic)) +
                                " formulas are not interpreted over " +
                                to_string(m.kind) + " structures");
  if (cfg.ceiling < m.n_states())
    throw std::invalid_argument(
        "search ceiling " + std::to_string(cfg.ceiling) +
        " is below the state count " + std::to_string(m.n_states()));
}

void require_conforming(const StatePtr& f, LogicId logic) {
  const std::vector<std::string> violations = conforms(f, logic);
  if (!violations.empty())
    throw std::invalid_argument("formula not in the " +
                                std::string(to_string(logic)) +
                                " grammar: " + violations.front());
}

}  // namespace

CheckResult check_state(const Structure& m, StateId s, const StatePtr& f,
                        LogicId logic, const CheckConfig& cfg) {
  require_valid(m);
  if (s >= m.n_states())
    throw std::invalid_argument("state id " + std::to_string(s) +
                                " out of range");
  require_checkable(m, logic, cfg);
  require_conforming(f, logic);
  if (is_star(logic)) {
    bool bounded = false;
    const std::vector<char> v = detail::eval_states_star(m, f, cfg, bounded);
    return {v[s] != 0, bounded};
  }
  const std::vector<char> v = detail::eval_states_nonstar(m, f);
  return {v[s] != 0, false};
}

CheckResult check_path(const Structure& m, const Lasso& sigma,
                       const PathPtr& pi, LogicId logic,
                       const CheckConfig& cfg) {
  require_valid(m);
  const std::vector<std::string> violations = lasso_violations(m, sigma);
  if (!violations.empty())
    throw std::invalid_argument("ill-formed path: " + violations.front());
  if (!is_maximal(m, sigma))
    throw std::invalid_argument(
        "path is not maximal: a finite path must end in a deadlocked state");
  require_checkable(m, logic, cfg);
  require_conforming(mk_exists(pi), logic);
  bool bounded = false;
  const bool value =
      detail::eval_path(m, sigma, pi, [&](StateId u, const StatePtr& g) {
        if (is_star(logic)) {
          const std::vector<char> v =
              detail::eval_states_star(m, g, cfg, bounded);
          return v[u] != 0;
        }
        const std::vector<char> v = detail::eval_states_nonstar(m, g);
        return v[u] != 0;
      });
  return {value, bounded};
}

}  // namespace tempobridge
