#include "tempobridge/lasso.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tempobridge {

std::vector<std::string> lasso_violations(const Structure& m, const Lasso& p) {
  std::vector<std::string> v;
  auto in_range = [&](TransIdx t) { return t < m.transitions.size(); };
  for (TransIdx t : p.stem)
    if (!in_range(t)) v.push_back("stem transition index out of range");
  for (TransIdx t : p.cycle)
    if (!in_range(t)) v.push_back("cycle transition index out of range");
  if (!v.empty()) return v;

  if (p.start >= m.n_states()) {
    v.push_back("anchor state out of range");
    return v;
  }
  StateId at = p.start;
  for (TransIdx t : p.stem) {
    if (m.transitions[t].src != at) v.push_back("stem transitions do not chain");
    at = m.transitions[t].dst;
  }
  const StateId knot = at;
  for (TransIdx t : p.cycle) {
    if (m.transitions[t].src != at) v.push_back("cycle transitions do not chain");
    at = m.transitions[t].dst;
  }
  if (!p.cycle.empty() && at != knot)
    v.push_back("cycle does not return to the stem's final state");
  return v;
}

bool is_maximal(const Structure& m, const Lasso& p) {
  if (p.infinite()) return true;
  return deadlocked(m, end_state(m, p));
}

StateId anchor(const Lasso& p) { return p.start; }

LabelMask first_labels(const Structure& m, const Lasso& p) {
  if (p.empty()) throw std::domain_error("empty path has no first transition");
  return m.transitions[p.stem.empty() ? p.cycle.front() : p.stem.front()].labels;
}

StateId first_target(const Structure& m, const Lasso& p) {
  if (p.empty()) throw std::domain_error("empty path has no first transition");
  return m.transitions[p.stem.empty() ? p.cycle.front() : p.stem.front()].dst;
}

StateId end_state(const Structure& m, const Lasso& p) {
  if (p.infinite()) throw std::domain_error("infinite path has no final state");
  return p.stem.empty() ? p.start : m.transitions[p.stem.back()].dst;
}

Lasso canonical(const Structure& m, Lasso p) {
  if (p.cycle.empty()) return p;
  // Primitive period: the shortest w with cycle = w^k.
  const std::size_t n = p.cycle.size();
  for (std::size_t w = 1; w <= n / 2; ++w) {
    if (n % w != 0) continue;
    bool periodic = true;
    for (std::size_t i = w; i < n && periodic; ++i)
      periodic = p.cycle[i] == p.cycle[i % w];
    if (periodic) {
      p.cycle.resize(w);
      break;
    }
  }
  // Minimal stem: fold stem transitions that merely replay the cycle's tail.
  while (!p.stem.empty() && p.stem.back() == p.cycle.back()) {
    p.stem.pop_back();
    std::rotate(p.cycle.rbegin(), p.cycle.rbegin() + 1, p.cycle.rend());
  }
  if (p.stem.empty()) p.start = m.transitions[p.cycle.front()].src;
  return p;
}

SuffixSpace::SuffixSpace(const Structure& m, const Lasso& p)
    : lasso_(p), finite_(!p.infinite()), stem_size_(p.stem.size()) {
  StateId at = p.start;
  for (TransIdx t : p.stem) {
    anchors_.push_back(at);
    trans_.push_back(t);
    at = m.transitions[t].dst;
  }
  if (finite_) {
    anchors_.push_back(at);  // the final, empty suffix
    trans_.push_back(0);     // unused
  } else {
    for (TransIdx t : p.cycle) {
      anchors_.push_back(at);
      trans_.push_back(t);
      at = m.transitions[t].dst;
    }
  }
}

std::size_t SuffixSpace::next(std::size_t i) const {
  if (empty_at(i)) throw std::domain_error("empty suffix has no successor");
  std::size_t n = i + 1;
  if (!finite_ && n == anchors_.size()) n = stem_size_;  // wrap into the cycle
  return n;
}

Lasso SuffixSpace::suffix(std::size_t i) const {
  Lasso out;
  out.start = anchors_[i];
  if (i < stem_size_) {
    out.stem.assign(lasso_.stem.begin() + static_cast<std::ptrdiff_t>(i),
                    lasso_.stem.end());
    out.cycle = lasso_.cycle;
  } else if (!finite_) {
    const std::size_t k = i - stem_size_;  // cycle rotation
    out.cycle.assign(lasso_.cycle.begin() + static_cast<std::ptrdiff_t>(k),
                     lasso_.cycle.end());
    out.cycle.insert(out.cycle.end(), lasso_.cycle.begin(),
                     lasso_.cycle.begin() + static_cast<std::ptrdiff_t>(k));
  }
  return out;
}

std::vector<Lasso> suffixes(const Structure& m, const Lasso& p) {
  SuffixSpace space(m, p);
  std::vector<Lasso> out;
  out.reserve(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) out.push_back(space.suffix(i));
  return out;
}

namespace {

struct PathEnum {
  const Structure& m;
  const Adjacency adj;
  std::size_t bound;
  std::vector<TransIdx> walk;
  std::vector<StateId> visited;  // states along the walk, length walk+1
  std::set<Lasso> seen;          // canonical forms, ordered for determinism
  std::vector<Lasso> out;

  PathEnum(const Structure& m_, std::size_t bound_) : m(m_), adj(m_), bound(bound_) {}

  void emit(Lasso p) {
    p = canonical(m, std::move(p));
    if (p.size() <= bound && seen.insert(p).second) out.push_back(std::move(p));
  }

  void dfs(StateId at) {
    if (adj.deadlocked(at))
      emit(Lasso{visited.front(), walk, {}});
    if (walk.size() >= bound) return;
    for (TransIdx t : adj.out(at)) {
      const StateId v = m.transitions[t].dst;
      walk.push_back(t);
      // Close a lasso at every earlier occurrence of the target state.
      for (std::size_t j = 0; j < visited.size(); ++j) {
        if (visited[j] != v) continue;
        Lasso p;
        p.start = visited.front();
        p.stem.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(j));
        p.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(j), walk.end());
        emit(std::move(p));
      }
      visited.push_back(v);
      dfs(v);
      visited.pop_back();
      walk.pop_back();
    }
  }
};

bool lasso_less(const Lasso& a, const Lasso& b) {
  return std::tie(a.start, a.stem, a.cycle) < std::tie(b.start, b.stem, b.cycle);
}

}  // namespace

std::vector<Lasso> mu_paths(const Structure& m, StateId from, std::size_t bound) {
  require_valid(m);
  if (from >= m.n_states()) throw std::invalid_argument("mu_paths: state out of range");
  PathEnum e(m, bound);
  e.visited.push_back(from);
  e.dfs(from);
  std::sort(e.out.begin(), e.out.end(), lasso_less);
  return e.out;
}

namespace {

std::string render_transition(const Structure& m, TransIdx t) {
  const Transition& tr = m.transitions[t];
  if (!m.has_action_labels())
    return m.states[tr.src] + " -> " + m.states[tr.dst];
  return m.states[tr.src] + " -" + render_labels(m, tr.labels) + "-> " +
         m.states[tr.dst];
}

std::string render_run(const Structure& m, const std::vector<TransIdx>& ts) {
  std::string out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) out += " ";
    out += render_transition(m, ts[i]);
  }
  return out;
}

}  // namespace

std::string render_lasso(const Structure& m, const Lasso& p) {
  if (p.empty()) return m.states[p.start];
  std::string out = render_run(m, p.stem);
  if (p.infinite()) {
    if (!p.stem.empty()) out += " ";
    out += "| " + render_run(m, p.cycle);
  }
  return out;
}

}  // namespace tempobridge
