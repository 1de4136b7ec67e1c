#include "tempobridge/formulas.hpp"

#include <algorithm>
#include <stdexcept>

namespace tempobridge {

std::string to_string(LogicId logic) {
  switch (logic) {
    case LogicId::Ctl: return "CTL";
    case LogicId::CtlStar: return "CTL*";
    case LogicId::Actl: return "ACTL";
    case LogicId::ActlStar: return "ACTL*";
    case LogicId::Uctl: return "UCTL";
    case LogicId::UctlStar: return "UCTL*";
    case LogicId::Upml: return "UPML";
  }
  return "?";
}

bool is_star(LogicId logic) {
  return logic == LogicId::CtlStar || logic == LogicId::ActlStar ||
         logic == LogicId::UctlStar;
}

ActPtr mk_tau() { return std::make_shared<ActFormula>(ActFormula{ActKind::Tau, {}, nullptr, nullptr}); }
ActPtr mk_act(std::string name) {
  return std::make_shared<ActFormula>(ActFormula{ActKind::Act, std::move(name), nullptr, nullptr});
}
ActPtr mk_nota(ActPtr a) {
  return std::make_shared<ActFormula>(ActFormula{ActKind::NotA, {}, std::move(a), nullptr});
}
ActPtr mk_anda(ActPtr a, ActPtr b) {
  return std::make_shared<ActFormula>(ActFormula{ActKind::AndA, {}, std::move(a), std::move(b)});
}

namespace {
StatePtr mk_state(StateKind k, std::string name, StatePtr a, StatePtr b, PathPtr p) {
  return std::make_shared<StateFormula>(
      StateFormula{k, std::move(name), std::move(a), std::move(b), std::move(p)});
}
PathPtr mk_path(PathKind k, std::string act, PathPtr p, PathPtr q, StatePtr phi,
                StatePtr phi2, ActPtr chi, ActPtr chi2) {
  return std::make_shared<PathFormula>(PathFormula{k, std::move(act), std::move(p),
                                                   std::move(q), std::move(phi),
                                                   std::move(phi2), std::move(chi),
                                                   std::move(chi2)});
}
}  // namespace

StatePtr mk_true() { return mk_state(StateKind::True, {}, nullptr, nullptr, nullptr); }
StatePtr mk_prop(std::string name) {
  return mk_state(StateKind::Prop, std::move(name), nullptr, nullptr, nullptr);
}
StatePtr mk_not(StatePtr a) {
  return mk_state(StateKind::Not, {}, std::move(a), nullptr, nullptr);
}
StatePtr mk_and(StatePtr a, StatePtr b) {
  return mk_state(StateKind::And, {}, std::move(a), std::move(b), nullptr);
}
StatePtr mk_exists(PathPtr p) {
  return mk_state(StateKind::Exists, {}, nullptr, nullptr, std::move(p));
}
StatePtr mk_ax(StatePtr a) {
  return mk_state(StateKind::Ax, {}, std::move(a), nullptr, nullptr);
}
StatePtr mk_axact(std::string action, StatePtr a) {
  return mk_state(StateKind::AxAct, std::move(action), std::move(a), nullptr, nullptr);
}

PathPtr mk_embed(StatePtr phi) {
  return mk_path(PathKind::Embed, {}, nullptr, nullptr, std::move(phi), nullptr, nullptr, nullptr);
}
PathPtr mk_notp(PathPtr p) {
  return mk_path(PathKind::NotP, {}, std::move(p), nullptr, nullptr, nullptr, nullptr, nullptr);
}
PathPtr mk_andp(PathPtr p, PathPtr q) {
  return mk_path(PathKind::AndP, {}, std::move(p), std::move(q), nullptr, nullptr, nullptr, nullptr);
}
PathPtr mk_x(PathPtr p) {
  return mk_path(PathKind::X, {}, std::move(p), nullptr, nullptr, nullptr, nullptr, nullptr);
}
PathPtr mk_xact(std::string action, PathPtr p) {
  return mk_path(PathKind::Xact, std::move(action), std::move(p), nullptr, nullptr, nullptr, nullptr, nullptr);
}
PathPtr mk_u(PathPtr p, PathPtr q) {
  return mk_path(PathKind::U, {}, std::move(p), std::move(q), nullptr, nullptr, nullptr, nullptr);
}
PathPtr mk_w(PathPtr p, PathPtr q) {
  return mk_path(PathKind::W, {}, std::move(p), std::move(q), nullptr, nullptr, nullptr, nullptr);
}
PathPtr mk_xchi(ActPtr chi, StatePtr phi) {
  return mk_path(PathKind::Xchi, {}, nullptr, nullptr, std::move(phi), nullptr, std::move(chi), nullptr);
}
PathPtr mk_uchi(StatePtr phi, ActPtr chi, ActPtr chi2, StatePtr phi2) {
  return mk_path(PathKind::Uchi, {}, nullptr, nullptr, std::move(phi), std::move(phi2),
                 std::move(chi), std::move(chi2));
}
PathPtr mk_wchi(StatePtr phi, ActPtr chi, ActPtr chi2, StatePtr phi2) {
  return mk_path(PathKind::Wchi, {}, nullptr, nullptr, std::move(phi), std::move(phi2),
                 std::move(chi), std::move(chi2));
}

StatePtr mk_or(StatePtr a, StatePtr b) {
  return mk_not(mk_and(mk_not(std::move(a)), mk_not(std::move(b))));
}
StatePtr mk_implies(StatePtr a, StatePtr b) {
  return mk_not(mk_and(std::move(a), mk_not(std::move(b))));
}
StatePtr forall(PathPtr p) {
  // Keep purely state-level operands in their embedded state form so the
  // rewrite has one canonical shape per input.
  PathPtr negated = state_expressible(p) ? mk_embed(mk_not(fold_state(p)))
                                         : mk_notp(std::move(p));
  return mk_not(mk_exists(std::move(negated)));
}
StatePtr mk_ex_upml(StatePtr a) { return mk_not(mk_ax(mk_not(std::move(a)))); }
StatePtr mk_exact_upml(std::string action, StatePtr a) {
  return mk_not(mk_axact(std::move(action), mk_not(std::move(a))));
}

bool equals(const ActPtr& a, const ActPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return equals(a->a, b->a) && equals(a->b, b->b);
}

bool equals(const StatePtr& a, const StatePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name) return false;
  return equals(a->a, b->a) && equals(a->b, b->b) && equals(a->path, b->path);
}

bool equals(const PathPtr& a, const PathPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->act != b->act) return false;
  return equals(a->p, b->p) && equals(a->q, b->q) && equals(a->phi, b->phi) &&
         equals(a->phi2, b->phi2) && equals(a->chi, b->chi) && equals(a->chi2, b->chi2);
}

namespace {
constexpr std::size_t kSeed = 0x9e3779b97f4a7c15ull;
std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + kSeed + (h << 6) + (h >> 2));
}
std::size_t hash_str(const std::string& s) { return std::hash<std::string>{}(s); }
}  // namespace

std::size_t hash_of(const ActPtr& a) {
  if (!a) return 0;
  std::size_t h = mix(1, static_cast<std::size_t>(a->kind));
  h = mix(h, hash_str(a->name));
  h = mix(h, hash_of(a->a));
  return mix(h, hash_of(a->b));
}

std::size_t hash_of(const StatePtr& a) {
  if (!a) return 0;
  std::size_t h = mix(2, static_cast<std::size_t>(a->kind));
  h = mix(h, hash_str(a->name));
  h = mix(h, hash_of(a->a));
  h = mix(h, hash_of(a->b));
  return mix(h, hash_of(a->path));
}

std::size_t hash_of(const PathPtr& a) {
  if (!a) return 0;
  std::size_t h = mix(3, static_cast<std::size_t>(a->kind));
  h = mix(h, hash_str(a->act));
  h = mix(h, hash_of(a->p));
  h = mix(h, hash_of(a->q));
  h = mix(h, hash_of(a->phi));
  h = mix(h, hash_of(a->phi2));
  h = mix(h, hash_of(a->chi));
  return mix(h, hash_of(a->chi2));
}

namespace {

struct ConformsWalker {
  LogicId logic;
  std::vector<std::string> out;

  void flag(const std::string& msg) { out.push_back(msg); }

  // Branching grammars take state operands under X/U/W.
  void embedded_operand(const PathPtr& p, const char* op) {
    if (!p) return;
    if (p->kind != PathKind::Embed) {
      flag(std::string(op) + " operand must be a state formula in " + to_string(logic));
      path(p);  // still descend for further diagnostics
    } else {
      state(p->phi);
    }
  }

  void state(const StatePtr& f) {
    if (!f) return;
    switch (f->kind) {
      case StateKind::True:
        if (logic == LogicId::Upml) flag("true atom not in the UPML grammar");
        return;
      case StateKind::Prop:
        if (logic == LogicId::Actl || logic == LogicId::ActlStar)
          flag("prop atom not in " + to_string(logic) + " grammar: " + f->name);
        return;
      case StateKind::Not: state(f->a); return;
      case StateKind::And: state(f->a); state(f->b); return;
      case StateKind::Exists:
        if (logic == LogicId::Upml) {
          flag("path quantifier not in the UPML grammar");
          return;
        }
        path(f->path);
        return;
      case StateKind::Ax:
      case StateKind::AxAct:
        if (logic != LogicId::Upml) {
          flag("AX modality only in the UPML grammar");
          return;
        }
        state(f->a);
        return;
    }
  }

  void path(const PathPtr& p) {
    if (!p) return;
    const bool star = is_star(logic);
    switch (p->kind) {
      case PathKind::Embed:
        if (!star) flag("bare state formula in path position not in " + to_string(logic));
        state(p->phi);
        return;
      case PathKind::NotP: path(p->p); return;
      case PathKind::AndP:
        if (!star) flag("path conjunction not in " + to_string(logic));
        path(p->p);
        path(p->q);
        return;
      case PathKind::X:
        if (star) path(p->p);
        else embedded_operand(p->p, "X");
        return;
      case PathKind::Xact:
        if (logic == LogicId::Ctl || logic == LogicId::CtlStar) {
          flag("action-constrained X not in " + to_string(logic));
          path(p->p);
          return;
        }
        if (star) path(p->p);
        else embedded_operand(p->p, "X_a");
        return;
      case PathKind::U:
        if (star) {
          path(p->p);
          path(p->q);
        } else {
          embedded_operand(p->p, "U");
          embedded_operand(p->q, "U");
        }
        return;
      case PathKind::W:
        if (star) {
          flag("weak until not in the star grammars");
          path(p->p);
          path(p->q);
          return;
        }
        embedded_operand(p->p, "W");
        embedded_operand(p->q, "W");
        return;
      case PathKind::Xchi:
      case PathKind::Uchi:
      case PathKind::Wchi: {
        const bool native = logic == LogicId::Actl || logic == LogicId::Uctl;
        if (!native)
          flag("action-formula-constrained operator not in " + to_string(logic) +
               " (star logics take it only as expansion input)");
        state(p->phi);
        state(p->phi2);
        return;
      }
    }
  }
};

}  // namespace

std::vector<std::string> conforms(const StatePtr& f, LogicId logic) {
  ConformsWalker w{logic, {}};
  w.state(f);
  return w.out;
}

bool state_expressible(const PathPtr& p) {
  if (!p) return false;
  switch (p->kind) {
    case PathKind::Embed: return true;
    case PathKind::NotP: return state_expressible(p->p);
    case PathKind::AndP: return state_expressible(p->p) && state_expressible(p->q);
    default: return false;
  }
}

StatePtr fold_state(const PathPtr& p) {
  switch (p->kind) {
    case PathKind::Embed: return p->phi;
    case PathKind::NotP: return mk_not(fold_state(p->p));
    case PathKind::AndP: return mk_and(fold_state(p->p), fold_state(p->q));
    default: throw std::invalid_argument("fold_state: not state-expressible");
  }
}

bool eval_action(const Structure& m, const ActPtr& chi, LabelMask alpha) {
  switch (chi->kind) {
    case ActKind::Tau: return alpha == 0;
    case ActKind::Act: {
      auto idx = m.action_index(chi->name);
      return idx && (alpha & (LabelMask{1} << *idx)) != 0;
    }
    case ActKind::NotA: return !eval_action(m, chi->a, alpha);
    case ActKind::AndA:
      return eval_action(m, chi->a, alpha) && eval_action(m, chi->b, alpha);
  }
  return false;
}

namespace {

void require_expandable_alphabet(const Structure& m) {
  if (m.n_actions() > 16)
    throw std::invalid_argument(
        "action-constraint expansion enumerates label subsets; alphabet too large");
}

PathPtr or_p(PathPtr a, PathPtr b) {
  return mk_notp(mk_andp(mk_notp(std::move(a)), mk_notp(std::move(b))));
}

}  // namespace

bool satisfiable_action(const Structure& m, const ActPtr& chi) {
  require_expandable_alphabet(m);
  const std::size_t n = m.n_actions();
  for (LabelMask alpha = 0; alpha < (LabelMask{1} << n); ++alpha)
    if (eval_action(m, chi, alpha)) return true;
  return false;
}

PathPtr expand_xchi_star(const Structure& m, const ActPtr& chi, PathPtr p) {
  require_expandable_alphabet(m);
  const std::size_t n = m.n_actions();
  PathPtr result;
  for (LabelMask alpha = 0; alpha < (LabelMask{1} << n); ++alpha) {
    if (!eval_action(m, chi, alpha)) continue;
    PathPtr term;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(alpha & (LabelMask{1} << i))) continue;
      PathPtr step = mk_xact(m.actions[i], p);
      term = term ? mk_andp(std::move(term), std::move(step)) : std::move(step);
    }
    if (!term) term = mk_x(p);  // the empty label set constrains nothing
    result = result ? or_p(std::move(result), std::move(term)) : std::move(term);
  }
  if (!result) result = mk_embed(mk_not(mk_true()));  // unsatisfiable constraint
  return result;
}

PathPtr expand_uchi_star(const Structure& m, PathPtr p, const ActPtr& chi,
                         const ActPtr& chi2, PathPtr q) {
  PathPtr left = mk_andp(p, expand_xchi_star(m, chi, mk_embed(mk_true())));
  PathPtr right = mk_andp(p, expand_xchi_star(m, chi2, std::move(q)));
  return mk_u(std::move(left), std::move(right));
}

PathPtr expand_wchi_star(const Structure& m, PathPtr p, const ActPtr& chi,
                         const ActPtr& chi2, PathPtr q) {
  PathPtr until = expand_uchi_star(m, p, chi, chi2, std::move(q));
  PathPtr step = mk_andp(p, expand_xchi_star(m, chi, mk_embed(mk_true())));
  PathPtr globally = mk_notp(mk_u(mk_embed(mk_true()), mk_notp(std::move(step))));
  return or_p(std::move(until), std::move(globally));
}

PathPtr expand_star_sugar(const Structure& m, const PathPtr& p) {
  if (!p) return p;
  switch (p->kind) {
    case PathKind::Embed: return mk_embed(expand_star_sugar(m, p->phi));
    case PathKind::NotP: return mk_notp(expand_star_sugar(m, p->p));
    case PathKind::AndP:
      return mk_andp(expand_star_sugar(m, p->p), expand_star_sugar(m, p->q));
    case PathKind::X: return mk_x(expand_star_sugar(m, p->p));
    case PathKind::Xact: return mk_xact(p->act, expand_star_sugar(m, p->p));
    case PathKind::U:
      return mk_u(expand_star_sugar(m, p->p), expand_star_sugar(m, p->q));
    case PathKind::W:
      return mk_w(expand_star_sugar(m, p->p), expand_star_sugar(m, p->q));
    case PathKind::Xchi:
      return expand_xchi_star(m, p->chi, mk_embed(expand_star_sugar(m, p->phi)));
    case PathKind::Uchi:
      return expand_uchi_star(m, mk_embed(expand_star_sugar(m, p->phi)), p->chi,
                              p->chi2, mk_embed(expand_star_sugar(m, p->phi2)));
    case PathKind::Wchi:
      return expand_wchi_star(m, mk_embed(expand_star_sugar(m, p->phi)), p->chi,
                              p->chi2, mk_embed(expand_star_sugar(m, p->phi2)));
  }
  return p;
}

StatePtr expand_star_sugar(const Structure& m, const StatePtr& f) {
  if (!f) return f;
  switch (f->kind) {
    case StateKind::True:
    case StateKind::Prop: return f;
    case StateKind::Not: return mk_not(expand_star_sugar(m, f->a));
    case StateKind::And:
      return mk_and(expand_star_sugar(m, f->a), expand_star_sugar(m, f->b));
    case StateKind::Exists: return mk_exists(expand_star_sugar(m, f->path));
    case StateKind::Ax:
    case StateKind::AxAct: return f;  // three-valued formulas carry no sugar
  }
  return f;
}

namespace {

void collect_temporal(const PathPtr& p, std::vector<PathPtr>& out) {
  if (!p) return;
  switch (p->kind) {
    case PathKind::Embed: return;
    case PathKind::NotP: collect_temporal(p->p, out); return;
    case PathKind::AndP:
      collect_temporal(p->p, out);
      collect_temporal(p->q, out);
      return;
    case PathKind::X:
    case PathKind::Xact:
    case PathKind::U:
    case PathKind::W:
    case PathKind::Xchi:
    case PathKind::Uchi:
    case PathKind::Wchi: {
      bool found = false;
      for (const auto& q : out)
        if (equals(p, q)) {
          found = true;
          break;
        }
      if (!found) out.push_back(p);
      collect_temporal(p->p, out);
      collect_temporal(p->q, out);
      return;
    }
  }
}

}  // namespace

std::size_t closure_size(const PathPtr& p) {
  std::vector<PathPtr> nodes;
  collect_temporal(p, nodes);
  return nodes.size();
}

}  // namespace tempobridge
