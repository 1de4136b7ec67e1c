#include "tempobridge/testkit.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"

#include "tempobridge/checker2.hpp"
#include "tempobridge/json_io.hpp"
#include "tempobridge/parser.hpp"

namespace tempobridge {

// ---------------------------------------------------------------------------
// Randomness

std::uint64_t SplitMix64::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("SplitMix64::below: empty range");
  return next() % n;
}

bool SplitMix64::chance(unsigned pct) { return below(100) < pct; }

namespace {

void require_bounds(const GenParams& params) {
  if (params.max_states == 0 || params.max_actions == 0 || params.max_props == 0 ||
      params.max_formula_depth == 0) {
    throw std::invalid_argument("generation bounds must each be at least 1");
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double>(dt).count();
}

}  // namespace

// ---------------------------------------------------------------------------
// Structure generation

Structure gen_structure(StructureKind kind, const GenParams& params, SplitMix64& rng) {
  require_bounds(params);
  Structure m;
  m.kind = kind;

  const auto ns = static_cast<std::size_t>(1 + rng.below(params.max_states));
  for (std::size_t i = 0; i < ns; ++i) m.states.push_back("s" + std::to_string(i));

  if (kind != StructureKind::Ks) {
    // Single-letter pool a..o keeps the action names disjoint from p..z.
    const auto cap = std::min<std::size_t>(params.max_actions, 15);
    const auto na = static_cast<std::size_t>(1 + rng.below(cap));
    for (std::size_t i = 0; i < na; ++i) {
      m.actions.push_back(std::string(1, static_cast<char>('a' + i)));
    }
    if (kind == StructureKind::Kmts) {
      for (std::size_t i = 0; i < na; ++i) {
        m.action_mods.push_back(rng.chance(50) ? ActMod::Must : ActMod::May);
      }
    }
  }
  if (kind != StructureKind::Lts) {
    const auto cap = std::min<std::size_t>(params.max_props, 11);
    const auto np = static_cast<std::size_t>(1 + rng.below(cap));
    for (std::size_t i = 0; i < np; ++i) {
      m.props.push_back(std::string(1, static_cast<char>('p' + i)));
    }
    m.labeling.resize(ns * np);
    for (auto& v : m.labeling) {
      if (kind == StructureKind::Kmts) {
        const auto roll = rng.below(5);
        v = roll < 2 ? Truth3::True : (roll < 4 ? Truth3::False : Truth3::Bot);
      } else {
        v = rng.chance(50) ? Truth3::True : Truth3::False;
      }
    }
  }

  std::vector<StateId> live;
  for (StateId s = 0; s < ns; ++s) {
    if (!rng.chance(25)) live.push_back(s);
  }
  const LabelMask full = m.n_actions() == 0
                             ? LabelMask{0}
                             : ((m.n_actions() >= 64 ? ~LabelMask{0} : LabelMask{0}) |
                                ((LabelMask{1} << m.n_actions()) - 1));
  std::set<std::pair<StateId, StateId>> seen;
  const auto add_from = [&](StateId src) {
    const auto dst = static_cast<StateId>(rng.below(ns));
    const LabelMask labels = rng.next() & full;
    if (!seen.insert({src, dst}).second) return;
    m.transitions.push_back({src, dst, labels});
  };
  std::size_t budget = ns + static_cast<std::size_t>(rng.below(3));
  for (const StateId s : live) {
    if (budget == 0) break;
    add_from(s);
    --budget;
  }
  while (budget > 0 && !live.empty()) {
    add_from(live[rng.below(live.size())]);
    --budget;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Formula generation

namespace {

struct GenCtx {
  const Structure& m;
  LogicId logic;
  SplitMix64& rng;
};

std::string pick_name(const std::vector<std::string>& pool, SplitMix64& rng) {
  if (pool.empty()) throw std::invalid_argument("formula generation: empty name pool");
  return pool[rng.below(pool.size())];
}

ActPtr gen_act(GenCtx& cx, std::size_t depth) {
  const auto roll = cx.rng.below(100);
  if (depth == 0 || roll < 55) {
    if (cx.rng.chance(30)) return mk_tau();
    return mk_act(pick_name(cx.m.actions, cx.rng));
  }
  if (roll < 77) return mk_nota(gen_act(cx, depth - 1));
  return mk_anda(gen_act(cx, depth - 1), gen_act(cx, depth - 1));
}

StatePtr gen_state(GenCtx& cx, std::size_t depth);
PathPtr gen_path_node(GenCtx& cx, std::size_t depth);

StatePtr gen_atom(GenCtx& cx) {
  if (cx.logic == LogicId::Upml) return mk_prop(pick_name(cx.m.props, cx.rng));
  const bool props_ok = cx.logic != LogicId::Actl && cx.logic != LogicId::ActlStar &&
                        cx.m.n_props() > 0;
  if (props_ok && cx.rng.chance(70)) return mk_prop(pick_name(cx.m.props, cx.rng));
  return mk_true();
}

StatePtr gen_state(GenCtx& cx, std::size_t depth) {
  if (depth == 0) return gen_atom(cx);

  // The branching modal forms spend 2 depth on quantifier + operator, so
  // they need depth >= 2; below that their weight goes to the connectives.
  const bool modal_ok = is_star(cx.logic) || cx.logic == LogicId::Upml || depth >= 2;
  const auto roll = cx.rng.below(100);
  unsigned cat = roll < 12 ? 0u : roll < 28 ? 1u : roll < 44 ? 2u : 3u;
  if (cat == 3 && !modal_ok) cat = 1 + static_cast<unsigned>(cx.rng.below(2));

  switch (cat) {
    case 0:
      return gen_atom(cx);
    case 1:
      return mk_not(gen_state(cx, depth - 1));
    case 2:
      return mk_and(gen_state(cx, depth - 1), gen_state(cx, depth - 1));
    default:
      break;
  }

  switch (cx.logic) {
    case LogicId::CtlStar:
    case LogicId::ActlStar:
    case LogicId::UctlStar:
      return mk_exists(gen_path_node(cx, depth - 1));
    case LogicId::Ctl: {
      const bool wrap = depth >= 3 && cx.rng.chance(25);
      const std::size_t od = depth - (wrap ? 3 : 2);
      const auto r = cx.rng.below(100);
      PathPtr core;
      if (r < 30) {
        core = mk_x(mk_embed(gen_state(cx, od)));
      } else if (r < 65) {
        core = mk_u(mk_embed(gen_state(cx, od)), mk_embed(gen_state(cx, od)));
      } else {
        core = mk_w(mk_embed(gen_state(cx, od)), mk_embed(gen_state(cx, od)));
      }
      return mk_exists(wrap ? mk_notp(core) : core);
    }
    case LogicId::Actl:
    case LogicId::Uctl: {
      const std::size_t od = depth - 2;
      const auto r = cx.rng.below(100);
      if (r < 35) return mk_exists(mk_xchi(gen_act(cx, 2), gen_state(cx, od)));
      if (r < 70) {
        return mk_exists(mk_uchi(gen_state(cx, od), gen_act(cx, 2), gen_act(cx, 2),
                                 gen_state(cx, od)));
      }
      return mk_exists(mk_wchi(gen_state(cx, od), gen_act(cx, 2), gen_act(cx, 2),
                               gen_state(cx, od)));
    }
    case LogicId::Upml: {
      if (cx.rng.chance(50)) return mk_ax(gen_state(cx, depth - 1));
      return mk_axact(pick_name(cx.m.actions, cx.rng), gen_state(cx, depth - 1));
    }
  }
  throw std::invalid_argument("formula generation: unknown logic");
}

// Keeps generated formulas in the parser's canonical form: state-material
// compounds at path level live inside a single embedding, never as path
// negations or conjunctions of embeddings.
PathPtr norm_path(PathPtr p) {
  if (state_expressible(p) && p->kind != PathKind::Embed)
    return mk_embed(fold_state(p));
  return p;
}

PathPtr gen_path_node(GenCtx& cx, std::size_t depth) {
  if (depth == 0) return mk_embed(gen_atom(cx));
  const bool xact_ok = cx.logic != LogicId::CtlStar;
  const auto roll = cx.rng.below(100);
  if (roll < 18) return mk_embed(gen_state(cx, depth));  // embedding is transparent
  if (roll < 32) return norm_path(mk_notp(gen_path_node(cx, depth - 1)));
  if (roll < 46)
    return norm_path(mk_andp(gen_path_node(cx, depth - 1), gen_path_node(cx, depth - 1)));
  if (roll < 68 || (roll < 80 && !xact_ok)) return mk_x(gen_path_node(cx, depth - 1));
  if (roll < 80) return mk_xact(pick_name(cx.m.actions, cx.rng), gen_path_node(cx, depth - 1));
  return mk_u(gen_path_node(cx, depth - 1), gen_path_node(cx, depth - 1));
}

}  // namespace

StatePtr gen_formula(LogicId logic, const Structure& m, const GenParams& params,
                     SplitMix64& rng) {
  require_bounds(params);
  GenCtx cx{m, logic, rng};
  return gen_state(cx, params.max_formula_depth);
}

PathPtr gen_path_formula(LogicId logic, const Structure& m, const GenParams& params,
                         SplitMix64& rng) {
  require_bounds(params);
  if (!is_star(logic)) {
    throw std::invalid_argument("path-formula generation needs a star logic, got " +
                                to_string(logic));
  }
  GenCtx cx{m, logic, rng};
  return gen_path_node(cx, params.max_formula_depth);
}

Lasso gen_path(const Structure& m, SplitMix64& rng) {
  if (m.n_states() == 0) throw std::invalid_argument("path generation: empty structure");
  const auto from = static_cast<StateId>(rng.below(m.n_states()));
  const auto paths = mu_paths(m, from, m.n_states());
  if (paths.empty()) throw std::runtime_error("path generation: no maximal path found");
  return paths[rng.below(paths.size())];
}

// ---------------------------------------------------------------------------
// Shrinking

namespace {

std::size_t size_of_act(const ActPtr& a) {
  if (!a) return 0;
  return 1 + size_of_act(a->a) + size_of_act(a->b);
}

std::size_t size_of_state(const StatePtr& f);

std::size_t size_of_path(const PathPtr& p) {
  if (!p) return 0;
  return 1 + size_of_path(p->p) + size_of_path(p->q) + size_of_state(p->phi) +
         size_of_state(p->phi2) + size_of_act(p->chi) + size_of_act(p->chi2);
}

std::size_t size_of_state(const StatePtr& f) {
  if (!f) return 0;
  return 1 + size_of_state(f->a) + size_of_state(f->b) + size_of_path(f->path);
}

void collect_states(const StatePtr& f, std::vector<StatePtr>& out);

void collect_states_in_path(const PathPtr& p, std::vector<StatePtr>& out) {
  if (!p) return;
  collect_states_in_path(p->p, out);
  collect_states_in_path(p->q, out);
  collect_states(p->phi, out);
  collect_states(p->phi2, out);
}

void collect_states(const StatePtr& f, std::vector<StatePtr>& out) {
  if (!f) return;
  out.push_back(f);
  collect_states(f->a, out);
  collect_states(f->b, out);
  collect_states_in_path(f->path, out);
}

void collect_paths_in_state(const StatePtr& f, std::vector<PathPtr>& out);

void collect_paths(const PathPtr& p, std::vector<PathPtr>& out) {
  if (!p) return;
  out.push_back(p);
  collect_paths(p->p, out);
  collect_paths(p->q, out);
  collect_paths_in_state(p->phi, out);
  collect_paths_in_state(p->phi2, out);
}

void collect_paths_in_state(const StatePtr& f, std::vector<PathPtr>& out) {
  if (!f) return;
  collect_paths_in_state(f->a, out);
  collect_paths_in_state(f->b, out);
  collect_paths(f->path, out);
}

// Proper subformulas of the root, smallest first.
std::vector<StatePtr> proper_state_subformulas(const StatePtr& f) {
  std::vector<StatePtr> all;
  collect_states(f, all);
  all.erase(all.begin());
  std::stable_sort(all.begin(), all.end(), [](const StatePtr& x, const StatePtr& y) {
    return size_of_state(x) < size_of_state(y);
  });
  return all;
}

std::vector<PathPtr> proper_path_subformulas(const PathPtr& p) {
  std::vector<PathPtr> all;
  collect_paths(p, all);
  all.erase(all.begin());
  std::stable_sort(all.begin(), all.end(), [](const PathPtr& x, const PathPtr& y) {
    return size_of_path(x) < size_of_path(y);
  });
  return all;
}

Structure drop_transition(const Structure& m, std::size_t t) {
  Structure r = m;
  r.transitions.erase(r.transitions.begin() + static_cast<std::ptrdiff_t>(t));
  return r;
}

Structure drop_state(const Structure& m, StateId k) {
  Structure r;
  r.kind = m.kind;
  r.actions = m.actions;
  r.action_mods = m.action_mods;
  r.props = m.props;
  for (StateId s = 0; s < m.n_states(); ++s) {
    if (s == k) continue;
    r.states.push_back(m.states[s]);
    for (std::size_t p = 0; p < m.n_props(); ++p) r.labeling.push_back(m.label_of(s, p));
  }
  for (const auto& tr : m.transitions) {
    if (tr.src == k || tr.dst == k) continue;
    Transition nt = tr;
    if (nt.src > k) --nt.src;
    if (nt.dst > k) --nt.dst;
    r.transitions.push_back(nt);
  }
  return r;
}

using StateTrial = std::function<bool(const Structure&, const StatePtr&, StateId)>;
using PathTrial = std::function<bool(const Structure&, const PathPtr&, const Lasso&)>;

// A candidate that throws (e.g. a subformula the translation rejects) is
// simply not an improvement.
bool still_disagrees(const StateTrial& trial, const Structure& m, const StatePtr& f,
                     StateId anchor) {
  try {
    return trial(m, f, anchor);
  } catch (const std::exception&) {
    return false;
  }
}

bool still_disagrees(const PathTrial& trial, const Structure& m, const PathPtr& pi,
                     const Lasso& sigma) {
  try {
    return trial(m, pi, sigma);
  } catch (const std::exception&) {
    return false;
  }
}

// Greedy first-improvement loop: replace the formula by a proper subformula,
// drop a transition, or drop a non-anchor state, until nothing helps.
void shrink_state_level(Structure& m, StatePtr& f, StateId& anchor, LogicId logic,
                        const StateTrial& trial) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (const StatePtr& cand : proper_state_subformulas(f)) {
      if (!conforms(cand, logic).empty()) continue;
      if (still_disagrees(trial, m, cand, anchor)) {
        f = cand;
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (std::size_t t = 0; t < m.transitions.size(); ++t) {
      Structure cand = drop_transition(m, t);
      if (still_disagrees(trial, cand, f, anchor)) {
        m = std::move(cand);
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (StateId k = 0; k < m.n_states(); ++k) {
      if (k == anchor) continue;
      Structure cand = drop_state(m, k);
      const StateId moved = anchor > k ? anchor - 1 : anchor;
      if (still_disagrees(trial, cand, f, moved)) {
        m = std::move(cand);
        anchor = moved;
        improved = true;
        break;
      }
    }
  }
}

bool path_uses_transition(const Lasso& sigma, std::size_t t) {
  const auto idx = static_cast<TransIdx>(t);
  return std::find(sigma.stem.begin(), sigma.stem.end(), idx) != sigma.stem.end() ||
         std::find(sigma.cycle.begin(), sigma.cycle.end(), idx) != sigma.cycle.end();
}

bool path_visits_state(const Structure& m, const Lasso& sigma, StateId k) {
  if (sigma.start == k) return true;
  const auto touches = [&](TransIdx t) {
    return m.transitions[t].src == k || m.transitions[t].dst == k;
  };
  return std::any_of(sigma.stem.begin(), sigma.stem.end(), touches) ||
         std::any_of(sigma.cycle.begin(), sigma.cycle.end(), touches);
}

Lasso remap_after_transition_drop(const Lasso& sigma, std::size_t t) {
  const auto shift = [&](TransIdx idx) {
    return idx > static_cast<TransIdx>(t) ? idx - 1 : idx;
  };
  Lasso r;
  r.start = sigma.start;
  for (const TransIdx idx : sigma.stem) r.stem.push_back(shift(idx));
  for (const TransIdx idx : sigma.cycle) r.cycle.push_back(shift(idx));
  return r;
}

Lasso remap_after_state_drop(const Structure& old_m, const Lasso& sigma, StateId k) {
  std::vector<TransIdx> map(old_m.transitions.size(), 0);
  TransIdx next = 0;
  for (std::size_t t = 0; t < old_m.transitions.size(); ++t) {
    const auto& tr = old_m.transitions[t];
    if (tr.src == k || tr.dst == k) continue;
    map[t] = next++;
  }
  Lasso r;
  r.start = sigma.start > k ? sigma.start - 1 : sigma.start;
  for (const TransIdx idx : sigma.stem) r.stem.push_back(map[idx]);
  for (const TransIdx idx : sigma.cycle) r.cycle.push_back(map[idx]);
  return r;
}

// Path-level shrink: the kept path pins its visited states and transitions.
void shrink_path_level(Structure& m, PathPtr& pi, Lasso& sigma, LogicId logic,
                       const PathTrial& trial) {
  bool improved = true;
  while (improved) {
    improved = false;
    for (const PathPtr& cand : proper_path_subformulas(pi)) {
      if (!conforms(mk_exists(cand), logic).empty()) continue;
      if (still_disagrees(trial, m, cand, sigma)) {
        pi = cand;
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (std::size_t t = 0; t < m.transitions.size(); ++t) {
      if (path_uses_transition(sigma, t)) continue;
      Structure cand = drop_transition(m, t);
      Lasso moved = remap_after_transition_drop(sigma, t);
      if (still_disagrees(trial, cand, pi, moved)) {
        m = std::move(cand);
        sigma = std::move(moved);
        improved = true;
        break;
      }
    }
    if (improved) continue;
    for (StateId k = 0; k < m.n_states(); ++k) {
      if (path_visits_state(m, sigma, k)) continue;
      Structure cand = drop_state(m, k);
      Lasso moved = remap_after_state_drop(m, sigma, k);
      if (still_disagrees(trial, cand, pi, moved)) {
        m = std::move(cand);
        sigma = std::move(moved);
        improved = true;
        break;
      }
    }
  }
}

void sort_failures(std::vector<XCheckFailure>& v) {
  std::stable_sort(v.begin(), v.end(), [](const XCheckFailure& x, const XCheckFailure& y) {
    const auto key = [](const XCheckFailure& f) {
      return std::tie(f.level, f.formula, f.path, f.state);
    };
    if (key(x) != key(y)) return key(x) < key(y);
    return save_structure(x.structure) < save_structure(y.structure);
  });
}

}  // namespace

// ---------------------------------------------------------------------------
// Differential runs

XCheckReport xcheck(MappingId id, const GenParams& params, int mutation) {
  require_bounds(params);
  const auto t0 = std::chrono::steady_clock::now();
  XCheckReport rep;
  rep.op = "xcheck";
  rep.subject = to_string(id);
  rep.params = params;
  rep.mutation = mutation;

  SplitMix64 rng(params.seed);
  const LogicId sl = source_logic(id);
  const LogicId tl = target_logic(id);
  const StructureKind sk = source_kind(id);
  const bool star = is_star(sl);
  const CheckConfig cfg{};

  const auto verdict = [&](const Structure& m, StateId s, const StatePtr& g, LogicId logic,
                           bool count) {
    const CheckResult r = check_state(m, s, g, logic, cfg);
    if (count && r.bounded) ++rep.bounded_truncations;
    return r.value;
  };

  const StateTrial state_trial = [&](const Structure& m, const StatePtr& g, StateId s) {
    const MappingBundle b = apply_mapping(id, m);
    const StatePtr tg = map_formula_mutated(b, g, mutation);
    return verdict(b.source, s, g, sl, false) !=
           verdict(b.target, b.image[s], tg, tl, false);
  };

  const PathTrial path_trial = [&](const Structure& m, const PathPtr& cpi, const Lasso& cs) {
    const MappingBundle b = apply_mapping(id, m);
    const PathPtr tpi = map_path_formula(b, cpi);
    const detail::EmbedFn src_embed = [&](StateId st, const StatePtr& g) {
      return verdict(b.source, st, g, sl, false);
    };
    const detail::EmbedFn tgt_embed = [&](StateId st, const StatePtr& g) {
      return verdict(b.target, st, g, tl, false);
    };
    return detail::eval_path(b.source, cs, cpi, src_embed) !=
           detail::eval_path(b.target, map_path(b, cs), tpi, tgt_embed);
  };

  for (std::size_t trial = 0; trial < params.trials; ++trial) {
    const Structure src = gen_structure(sk, params, rng);
    const StatePtr f = gen_formula(sl, src, params, rng);
    const auto anchor = static_cast<StateId>(rng.below(src.n_states()));
    const MappingBundle b = apply_mapping(id, src);
    const StatePtr tf = map_formula_mutated(b, f, mutation);
    ++rep.trials;

    // State level: the drawn anchor first, then every other state.
    std::vector<StateId> order{anchor};
    for (StateId s = 0; s < src.n_states(); ++s) {
      if (s != anchor) order.push_back(s);
    }
    for (const StateId s : order) {
      const bool lhs = verdict(b.source, s, f, sl, true);
      const bool rhs = verdict(b.target, b.image[s], tf, tl, true);
      if (lhs == rhs) continue;
      Structure sm = src;
      StatePtr sf = f;
      StateId sa = s;
      shrink_state_level(sm, sf, sa, sl, state_trial);
      XCheckFailure fail;
      fail.level = "state";
      fail.formula = render_formula(sf);
      fail.state = sm.states[sa];
      const MappingBundle nb = apply_mapping(id, sm);
      fail.source_verdict = verdict(nb.source, sa, sf, sl, false);
      fail.target_verdict =
          verdict(nb.target, nb.image[sa], map_formula_mutated(nb, sf, mutation), tl, false);
      fail.structure = std::move(sm);
      rep.failures.push_back(std::move(fail));
      break;
    }

    // Path level (star mappings): a random path formula on a random maximal
    // path against its image. Translation mutations live at state level, so
    // the faithful path translation runs here.
    if (star) {
      const PathPtr pi = gen_path_formula(sl, src, params, rng);
      const Lasso sigma = gen_path(src, rng);
      const PathPtr tpi = map_path_formula(b, pi);
      const detail::EmbedFn src_embed = [&](StateId st, const StatePtr& g) {
        return verdict(b.source, st, g, sl, true);
      };
      const detail::EmbedFn tgt_embed = [&](StateId st, const StatePtr& g) {
        return verdict(b.target, st, g, tl, true);
      };
      const bool lhs = detail::eval_path(b.source, sigma, pi, src_embed);
      const bool rhs = detail::eval_path(b.target, map_path(b, sigma), tpi, tgt_embed);
      if (lhs != rhs) {
        Structure sm = src;
        PathPtr spi = pi;
        Lasso ss = sigma;
        shrink_path_level(sm, spi, ss, sl, path_trial);
        XCheckFailure fail;
        fail.level = "path";
        fail.formula = render_path(spi);
        fail.path = render_lasso(sm, ss);
        const MappingBundle nb = apply_mapping(id, sm);
        const PathPtr ntpi = map_path_formula(nb, spi);
        const detail::EmbedFn ne1 = [&](StateId st, const StatePtr& g) {
          return verdict(nb.source, st, g, sl, false);
        };
        const detail::EmbedFn ne2 = [&](StateId st, const StatePtr& g) {
          return verdict(nb.target, st, g, tl, false);
        };
        fail.source_verdict = detail::eval_path(nb.source, ss, spi, ne1);
        fail.target_verdict = detail::eval_path(nb.target, map_path(nb, ss), ntpi, ne2);
        fail.structure = std::move(sm);
        rep.failures.push_back(std::move(fail));
      }
    }
  }

  sort_failures(rep.failures);
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

XCheckReport oracle_vs_fixpoint(LogicId logic, const GenParams& params) {
  require_bounds(params);
  if (is_star(logic) || logic == LogicId::Upml) {
    throw std::invalid_argument(
        "the oracle comparison covers the branching two-valued logics, got " +
        to_string(logic));
  }
  const StructureKind kind = logic == LogicId::Ctl    ? StructureKind::Ks
                             : logic == LogicId::Actl ? StructureKind::Lts
                                                      : StructureKind::Kts;
  const auto t0 = std::chrono::steady_clock::now();
  XCheckReport rep;
  rep.op = "oracle_vs_fixpoint";
  rep.subject = to_string(logic);
  rep.params = params;

  SplitMix64 rng(params.seed);
  const CheckConfig cfg{};

  const StateTrial trial = [&](const Structure& m, const StatePtr& g, StateId s) {
    bool bounded = false;
    return detail::eval_state_enum(m, s, g, cfg, bounded) !=
           check_state(m, s, g, logic, cfg).value;
  };

  const auto compare_instance = [&](const Structure& m, const StatePtr& f) {
    ++rep.trials;
    for (StateId s = 0; s < m.n_states(); ++s) {
      bool bounded = false;
      const bool enumerated = detail::eval_state_enum(m, s, f, cfg, bounded);
      if (bounded) ++rep.bounded_truncations;
      const bool fix = check_state(m, s, f, logic, cfg).value;
      if (enumerated == fix) continue;
      Structure sm = m;
      StatePtr sf = f;
      StateId sa = s;
      shrink_state_level(sm, sf, sa, logic, trial);
      XCheckFailure fail;
      fail.level = "state";
      fail.formula = render_formula(sf);
      fail.state = sm.states[sa];
      bool b2 = false;
      fail.source_verdict = check_state(sm, sa, sf, logic, cfg).value;
      fail.target_verdict = detail::eval_state_enum(sm, sa, sf, cfg, b2);
      fail.structure = std::move(sm);
      rep.failures.push_back(std::move(fail));
      break;
    }
  };

  // Fixed corpus: a single deadlocked state, exercised on every call so the
  // empty-path corner is never left to chance.
  Structure dead;
  dead.kind = kind;
  dead.states = {"s0"};
  if (kind != StructureKind::Ks) dead.actions = {"a"};
  if (kind != StructureKind::Lts) {
    dead.props = {"p"};
    dead.labeling = {Truth3::False};
  }
  std::vector<StatePtr> corpus;
  if (logic == LogicId::Ctl) {
    corpus.push_back(mk_exists(mk_x(mk_embed(mk_true()))));
    corpus.push_back(mk_not(mk_exists(mk_x(mk_embed(mk_true())))));
    corpus.push_back(mk_exists(mk_notp(mk_x(mk_embed(mk_true())))));
    corpus.push_back(forall(mk_x(mk_embed(mk_prop("p")))));
    corpus.push_back(mk_exists(mk_u(mk_embed(mk_true()), mk_embed(mk_prop("p")))));
    corpus.push_back(mk_exists(mk_w(mk_embed(mk_prop("p")), mk_embed(mk_not(mk_true())))));
  } else {
    const StatePtr atom = logic == LogicId::Uctl ? mk_prop("p") : mk_true();
    corpus.push_back(mk_exists(mk_xchi(mk_tau(), mk_true())));
    corpus.push_back(mk_not(mk_exists(mk_xchi(mk_act("a"), mk_true()))));
    corpus.push_back(mk_exists(mk_uchi(mk_true(), mk_tau(), mk_act("a"), atom)));
    corpus.push_back(mk_exists(mk_wchi(atom, mk_tau(), mk_tau(), mk_true())));
    corpus.push_back(mk_not(mk_exists(mk_wchi(mk_true(), mk_act("a"), mk_tau(), atom))));
  }
  for (const StatePtr& f : corpus) compare_instance(dead, f);

  for (std::size_t i = 0; i < params.trials; ++i) {
    const Structure m = gen_structure(kind, params, rng);
    const StatePtr f = gen_formula(logic, m, params, rng);
    compare_instance(m, f);
  }

  sort_failures(rep.failures);
  rep.elapsed_seconds = seconds_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Report serialization

std::string report_to_json(const XCheckReport& r) {
  nlohmann::ordered_json j;
  j["op"] = r.op;
  j["subject"] = r.subject;
  j["params"] = {{"seed", r.params.seed},
                 {"max_states", r.params.max_states},
                 {"max_actions", r.params.max_actions},
                 {"max_props", r.params.max_props},
                 {"max_formula_depth", r.params.max_formula_depth},
                 {"trials", r.params.trials}};
  j["mutation"] = r.mutation;
  j["trials"] = r.trials;
  j["bounded_truncations"] = r.bounded_truncations;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : r.failures) {
    nlohmann::ordered_json o;
    o["level"] = f.level;
    o["structure"] = nlohmann::ordered_json::parse(save_structure(f.structure));
    o["formula"] = f.formula;
    if (!f.path.empty()) o["path"] = f.path;
    if (!f.state.empty()) o["state"] = f.state;
    o["source_verdict"] = f.source_verdict;
    o["target_verdict"] = f.target_verdict;
    arr.push_back(std::move(o));
  }
  j["failures"] = std::move(arr);
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j.dump(2) + "\n";
}

}  // namespace tempobridge
