#include "tempobridge/mappings.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tempobridge {

namespace {

// The fresh anchor atom added by every mapping: a proposition marking the
// images of source states in the state-world targets, and an action labeling
// the detour steps in the action-world targets.
constexpr char kFreshAtom[] = "F";

bool to_state_world(MappingId id) {
  return target_kind(id) == StructureKind::Ks;
}

bool hybrid_source(MappingId id) {
  return source_kind(id) == StructureKind::Kts;
}

// Appends underscores until `candidate` clashes with nothing in `taken`.
std::string fresh_state_name(const std::vector<std::string>& taken,
                             std::string candidate) {
  while (std::find(taken.begin(), taken.end(), candidate) != taken.end()) {
    candidate += "_";
  }
  return candidate;
}

}  // namespace

const char* to_string(MappingId id) {
  switch (id) {
    case MappingId::Ks: return "ks";
    case MappingId::Lts: return "lts";
    case MappingId::Ks2: return "ks2";
    case MappingId::Lts2: return "lts2";
    case MappingId::KsPrime: return "ks'";
    case MappingId::LtsPrime: return "lts'";
    case MappingId::Ks2Prime: return "ks2'";
    case MappingId::Lts2Prime: return "lts2'";
  }
  return "?";
}

std::optional<MappingId> mapping_from_token(std::string_view token) {
  struct Row {
    std::string_view name;
    MappingId id;
  };
  static constexpr Row rows[] = {
      {"ks", MappingId::Ks},           {"lts", MappingId::Lts},
      {"ks2", MappingId::Ks2},         {"lts2", MappingId::Lts2},
      {"ks'", MappingId::KsPrime},     {"lts'", MappingId::LtsPrime},
      {"ks2'", MappingId::Ks2Prime},   {"lts2'", MappingId::Lts2Prime},
      {"ksp", MappingId::KsPrime},     {"ltsp", MappingId::LtsPrime},
      {"ks2p", MappingId::Ks2Prime},   {"lts2p", MappingId::Lts2Prime},
      {"ks_prime", MappingId::KsPrime},   {"lts_prime", MappingId::LtsPrime},
      {"ks2_prime", MappingId::Ks2Prime}, {"lts2_prime", MappingId::Lts2Prime},
  };
  for (const Row& r : rows) {
    if (r.name == token) return r.id;
  }
  return std::nullopt;
}

LogicId source_logic(MappingId id) {
  switch (id) {
    case MappingId::Ks: return LogicId::ActlStar;
    case MappingId::Lts: return LogicId::CtlStar;
    case MappingId::Ks2: return LogicId::UctlStar;
    case MappingId::Lts2: return LogicId::UctlStar;
    case MappingId::KsPrime: return LogicId::Actl;
    case MappingId::LtsPrime: return LogicId::Ctl;
    case MappingId::Ks2Prime: return LogicId::Uctl;
    case MappingId::Lts2Prime: return LogicId::Uctl;
  }
  return LogicId::Ctl;
}

LogicId target_logic(MappingId id) {
  switch (id) {
    case MappingId::Ks: return LogicId::CtlStar;
    case MappingId::Lts: return LogicId::ActlStar;
    case MappingId::Ks2: return LogicId::CtlStar;
    case MappingId::Lts2: return LogicId::ActlStar;
    case MappingId::KsPrime: return LogicId::Ctl;
    case MappingId::LtsPrime: return LogicId::Actl;
    case MappingId::Ks2Prime: return LogicId::Ctl;
    case MappingId::Lts2Prime: return LogicId::Actl;
  }
  return LogicId::Ctl;
}

StructureKind source_kind(MappingId id) {
  switch (id) {
    case MappingId::Ks:
    case MappingId::KsPrime: return StructureKind::Lts;
    case MappingId::Lts:
    case MappingId::LtsPrime: return StructureKind::Ks;
    case MappingId::Ks2:
    case MappingId::Lts2:
    case MappingId::Ks2Prime:
    case MappingId::Lts2Prime: return StructureKind::Kts;
  }
  return StructureKind::Ks;
}

StructureKind target_kind(MappingId id) {
  switch (id) {
    case MappingId::Ks:
    case MappingId::Ks2:
    case MappingId::KsPrime:
    case MappingId::Ks2Prime: return StructureKind::Ks;
    case MappingId::Lts:
    case MappingId::Lts2:
    case MappingId::LtsPrime:
    case MappingId::Lts2Prime: return StructureKind::Lts;
  }
  return StructureKind::Lts;
}

MappingBundle apply_mapping(MappingId id, Structure source) {
  require_valid(source);
  if (source.kind != source_kind(id)) {
    throw std::invalid_argument(std::string("mapping ") + to_string(id) +
                                " takes a " + to_string(source_kind(id)) +
                                " source, not " + to_string(source.kind));
  }
  if (source.prop_index(kFreshAtom) || source.action_index(kFreshAtom)) {
    throw std::invalid_argument(
        "the source already uses the reserved atom 'F'; rename it before mapping");
  }
  if (hybrid_source(id)) {
    for (const std::string& p : source.props) {
      if (source.action_index(p)) {
        throw std::invalid_argument(
            "the hybrid mappings need disjoint proposition and action names: '" +
            p + "' is both");
      }
    }
  }

  MappingBundle b;
  b.id = id;
  b.source = std::move(source);
  const Structure& src = b.source;
  Structure& tgt = b.target;
  const auto n = static_cast<StateId>(src.n_states());
  const bool hybrid = hybrid_source(id);

  b.image.resize(n);
  for (StateId s = 0; s < n; ++s) {
    b.image[s] = s;
    b.provenance.push_back({Provenance::Kind::Original, s, 0});
  }
  tgt.states = src.states;

  if (to_state_world(id)) {
    // Split every source transition with a midpoint state that carries the
    // transition's label set as propositions; images carry the anchor atom
    // (plus, from hybrid sources, their own labeling).
    tgt.kind = StructureKind::Ks;
    tgt.props.push_back(kFreshAtom);
    if (hybrid) {
      tgt.props.insert(tgt.props.end(), src.props.begin(), src.props.end());
    }
    tgt.props.insert(tgt.props.end(), src.actions.begin(), src.actions.end());

    for (const Transition& t : src.transitions) {
      const auto mid = static_cast<StateId>(tgt.states.size());
      tgt.states.push_back(fresh_state_name(
          tgt.states, "(" + src.states[t.src] + "," + src.states[t.dst] + ")"));
      b.provenance.push_back({Provenance::Kind::TransitionPair, t.src, t.dst});
      tgt.transitions.push_back({b.image[t.src], mid, 0});
      tgt.transitions.push_back({mid, b.image[t.dst], 0});
    }

    const std::size_t np = tgt.props.size();
    const std::size_t act_base = 1 + (hybrid ? src.n_props() : 0);
    tgt.labeling.assign(tgt.states.size() * np, Truth3::False);
    for (StateId s = 0; s < n; ++s) {
      tgt.labeling[s * np] = Truth3::True;  // the anchor atom
      if (hybrid) {
        for (std::size_t p = 0; p < src.n_props(); ++p) {
          tgt.labeling[s * np + 1 + p] = src.label_of(s, p);
        }
      }
    }
    for (std::size_t t = 0; t < src.transitions.size(); ++t) {
      const std::size_t mid = n + t;
      for (std::size_t a = 0; a < src.n_actions(); ++a) {
        if (src.transitions[t].labels & (LabelMask{1} << a)) {
          tgt.labeling[mid * np + act_base + a] = Truth3::True;
        }
      }
    }
  } else {
    // Give every source state a satellite reached by an F-step and returning
    // with the state's true propositions as the label set; original
    // transitions stay in place (hybrid sources keep their labels).
    tgt.kind = StructureKind::Lts;
    tgt.actions.push_back(kFreshAtom);
    if (hybrid) {
      tgt.actions.insert(tgt.actions.end(), src.actions.begin(), src.actions.end());
    }
    tgt.actions.insert(tgt.actions.end(), src.props.begin(), src.props.end());
    if (tgt.actions.size() > 64) {
      throw std::invalid_argument(
          "the action-world target would need " + std::to_string(tgt.actions.size()) +
          " actions; at most 64 are supported");
    }

    for (const Transition& t : src.transitions) {
      // Hybrid label sets shift up one bit: the fresh action takes index 0.
      tgt.transitions.push_back({t.src, t.dst, hybrid ? t.labels << 1 : LabelMask{0}});
    }
    const std::size_t prop_base = 1 + (hybrid ? src.n_actions() : 0);
    for (StateId s = 0; s < n; ++s) {
      const auto satellite = static_cast<StateId>(tgt.states.size());
      tgt.states.push_back(fresh_state_name(tgt.states, src.states[s] + "_"));
      b.provenance.push_back({Provenance::Kind::Underline, s, 0});
      tgt.transitions.push_back({b.image[s], satellite, LabelMask{1}});
      LabelMask row = 0;
      for (std::size_t p = 0; p < src.n_props(); ++p) {
        if (src.label_of(s, p) == Truth3::True) {
          row |= LabelMask{1} << (prop_base + p);
        }
      }
      tgt.transitions.push_back({satellite, b.image[s], row});
    }
  }

  require_valid(tgt);
  return b;
}

Lasso map_path(const MappingBundle& bundle, const Lasso& sigma) {
  const auto viol = lasso_violations(bundle.source, sigma);
  if (!viol.empty()) {
    throw std::invalid_argument("ill-formed path: " + viol.front());
  }
  Lasso out;
  out.start = bundle.image[anchor(sigma)];
  if (to_state_world(bundle.id)) {
    // Every source transition t became the split pair 2t, 2t+1.
    out.stem.reserve(sigma.stem.size() * 2);
    for (TransIdx t : sigma.stem) {
      out.stem.push_back(2 * t);
      out.stem.push_back(2 * t + 1);
    }
    out.cycle.reserve(sigma.cycle.size() * 2);
    for (TransIdx t : sigma.cycle) {
      out.cycle.push_back(2 * t);
      out.cycle.push_back(2 * t + 1);
    }
  } else {
    // Original transitions kept their indices; the image never detours.
    out.stem = sigma.stem;
    out.cycle = sigma.cycle;
  }
  return out;
}

StatePtr chi_to_prop(const ActPtr& chi, const std::vector<std::string>& alphabet) {
  if (!chi) throw std::invalid_argument("null action formula");
  switch (chi->kind) {
    case ActKind::Act: {
      if (std::find(alphabet.begin(), alphabet.end(), chi->name) == alphabet.end()) {
        throw std::invalid_argument("action '" + chi->name +
                                    "' is not in the source alphabet");
      }
      return mk_prop(chi->name);
    }
    case ActKind::Tau: {
      StatePtr acc;
      for (const std::string& a : alphabet) {
        StatePtr lit = mk_not(mk_prop(a));
        acc = acc ? mk_and(acc, lit) : lit;
      }
      return acc ? acc : mk_true();
    }
    case ActKind::NotA:
      return mk_not(chi_to_prop(chi->a, alphabet));
    case ActKind::AndA:
      return mk_and(chi_to_prop(chi->a, alphabet), chi_to_prop(chi->b, alphabet));
  }
  throw std::logic_error("unhandled action-formula kind");
}

namespace {

// Shared context for the formula translators.
struct Ctx {
  const std::vector<std::string>& alphabet;  // source action names
  MappingId id;
  int mutation = 0;  // 0 = faithful; otherwise the single documented break
};

// --- target-side building blocks ------------------------------------------

// State-world: the anchor proposition.
StatePtr f_prop() { return mk_prop(kFreshAtom); }

// Action-world: "an F-step is available here" — true exactly at the images
// of source states (satellites have no F-successor).
StatePtr g_marker() {
  return mk_exists(mk_xact(kFreshAtom, mk_embed(mk_true())));
}

// Action-world, star target: "every step leaves the image" — true exactly at
// images of deadlocked source states.
StatePtr dead_image_star() {
  return mk_not(mk_exists(mk_x(mk_embed(g_marker()))));
}

// Action-world, branching target: same test via an action-constrained step.
StatePtr dead_image_prime() {
  return mk_not(mk_exists(mk_xchi(mk_nota(mk_act(kFreshAtom)), mk_true())));
}

// --- star translations (path-compositional) --------------------------------

StatePtr star_state(const Ctx& cx, const StatePtr& f);

// Into the state world: each source step became two target steps, and the
// step's label set is readable at the midpoint.
PathPtr star_path_sw(const Ctx& cx, const PathPtr& p) {
  switch (p->kind) {
    case PathKind::Embed:
      return mk_embed(star_state(cx, p->phi));
    case PathKind::NotP:
      return mk_notp(star_path_sw(cx, p->p));
    case PathKind::AndP:
      return mk_andp(star_path_sw(cx, p->p), star_path_sw(cx, p->q));
    case PathKind::X: {
      PathPtr inner = star_path_sw(cx, p->p);
      if (cx.mutation == 1) return mk_x(inner);  // broken: stops at the midpoint
      return mk_x(mk_x(inner));
    }
    case PathKind::Xact: {
      PathPtr two = mk_x(mk_x(star_path_sw(cx, p->p)));
      if (cx.mutation == 3) return two;  // broken: forgets the action
      PathPtr tag = mk_x(mk_embed(mk_prop(p->act)));
      return mk_andp(tag, two);
    }
    case PathKind::U: {
      PathPtr left = star_path_sw(cx, p->p);
      PathPtr right = star_path_sw(cx, p->q);
      PathPtr anchored = mk_embed(f_prop());
      // left is only required at anchors: F => left, as !(F && !left)
      PathPtr guarded_left = mk_notp(mk_andp(anchored, mk_notp(left)));
      PathPtr guarded_right = mk_andp(anchored, right);
      return mk_u(guarded_left, guarded_right);
    }
    default:
      throw std::invalid_argument(
          "path operator outside the star grammar in a star translation");
  }
}

// Into the action world: evaluation is confined to well-formed target paths
// (the images of source-maximal paths, looping through the satellite once the
// source is exhausted); see the Exists clause of star_state.
PathPtr star_path_aw(const Ctx& cx, const PathPtr& p) {
  switch (p->kind) {
    case PathKind::Embed:
      return mk_embed(star_state(cx, p->phi));
    case PathKind::NotP:
      return mk_notp(star_path_aw(cx, p->p));
    case PathKind::AndP:
      return mk_andp(star_path_aw(cx, p->p), star_path_aw(cx, p->q));
    case PathKind::X: {
      PathPtr inner = star_path_aw(cx, p->p);
      if (cx.mutation == 2) return mk_x(inner);  // broken: may land on a satellite
      return mk_x(mk_andp(mk_embed(g_marker()), inner));
    }
    case PathKind::Xact: {
      PathPtr inner = star_path_aw(cx, p->p);
      if (cx.mutation == 4) return mk_x(inner);  // broken: forgets the action
      return mk_xact(p->act, inner);
    }
    case PathKind::U: {
      PathPtr left = mk_andp(mk_embed(g_marker()), star_path_aw(cx, p->p));
      PathPtr right = mk_andp(mk_embed(g_marker()), star_path_aw(cx, p->q));
      return mk_u(left, right);
    }
    default:
      throw std::invalid_argument(
          "path operator outside the star grammar in a star translation");
  }
}

// "Well-formed": never does a live image state step off the image. The only
// maximal target paths satisfying this are the images of source-maximal
// paths, extended with the trailing satellite loop when the source run is
// finite.
PathPtr wellformed_guard() {
  StatePtr g = g_marker();
  StatePtr live = mk_and(g, mk_not(dead_image_star()));
  PathPtr bad = mk_andp(mk_embed(live), mk_x(mk_embed(mk_not(g))));
  return mk_notp(mk_u(mk_embed(mk_true()), bad));
}

StatePtr star_state(const Ctx& cx, const StatePtr& f) {
  switch (f->kind) {
    case StateKind::True:
      return mk_true();
    case StateKind::Prop:
      if (to_state_world(cx.id)) return mk_prop(f->name);
      // The satellite's return step carries the state's true propositions.
      return mk_exists(
          mk_xact(kFreshAtom, mk_xact(f->name, mk_embed(mk_true()))));
    case StateKind::Not:
      return mk_not(star_state(cx, f->a));
    case StateKind::And:
      return mk_and(star_state(cx, f->a), star_state(cx, f->b));
    case StateKind::Exists:
      if (to_state_world(cx.id)) {
        return mk_exists(star_path_sw(cx, f->path));
      }
      return mk_exists(mk_andp(wellformed_guard(), star_path_aw(cx, f->path)));
    default:
      throw std::invalid_argument("modal connective outside the star grammars");
  }
}

// --- branching translations (existential case analysis) --------------------

StatePtr prime_state_sw(const Ctx& cx, const StatePtr& f);

// Into the state world: chase the source step pattern image -> midpoint ->
// image, reading action tests at midpoints (!F) and state tests at images (F).
StatePtr prime_until_sw(const Ctx& cx, const PathFormula& p, bool allow_mutation) {
  StatePtr chi_step = chi_to_prop(p.chi, cx.alphabet);
  StatePtr chi_close = chi_to_prop(p.chi2, cx.alphabet);
  if (allow_mutation && cx.mutation == 7) {
    std::swap(chi_step, chi_close);  // broken: step and closing tests traded
  }
  StatePtr phi = prime_state_sw(cx, p.phi);
  StatePtr phi2 = prime_state_sw(cx, p.phi2);
  StatePtr anchored = f_prop();
  StatePtr midpoint = mk_not(f_prop());
  // Alternating stage invariant: state test at images, step test at midpoints.
  StatePtr stage = mk_or(mk_and(anchored, phi), mk_and(midpoint, chi_step));
  // Closing pair: a midpoint passing the closing test, then the final state.
  PathPtr close = mk_u(mk_embed(mk_and(midpoint, chi_close)),
                       mk_embed(mk_and(anchored, phi2)));
  StatePtr fire = mk_and(midpoint, mk_exists(close));
  StatePtr chain = mk_exists(mk_u(mk_embed(stage), mk_embed(fire)));
  // The first step is pinned down separately so the run takes at least one
  // source transition (and that transition passes the step test).
  StatePtr from_next = mk_exists(mk_x(mk_embed(chain)));
  StatePtr first = mk_exists(mk_x(mk_embed(mk_and(chi_step, from_next))));
  return mk_and(phi, first);
}

StatePtr prime_state_sw(const Ctx& cx, const StatePtr& f) {
  switch (f->kind) {
    case StateKind::True:
      return mk_true();
    case StateKind::Prop:
      return mk_prop(f->name);
    case StateKind::Not:
      return mk_not(prime_state_sw(cx, f->a));
    case StateKind::And:
      return mk_and(prime_state_sw(cx, f->a), prime_state_sw(cx, f->b));
    case StateKind::Exists: {
      const PathFormula& p = *f->path;
      switch (p.kind) {
        case PathKind::Xchi: {
          StatePtr chi = chi_to_prop(p.chi, cx.alphabet);
          StatePtr phi = prime_state_sw(cx, p.phi);
          StatePtr landing = mk_exists(mk_x(mk_embed(mk_and(f_prop(), phi))));
          StatePtr midpoint = cx.mutation == 5
                                  ? mk_and(mk_not(f_prop()), landing)  // broken: any step
                                  : mk_and(mk_and(mk_not(f_prop()), chi), landing);
          return mk_exists(mk_x(mk_embed(midpoint)));
        }
        case PathKind::Uchi:
          return prime_until_sw(cx, p, /*allow_mutation=*/true);
        case PathKind::Wchi: {
          StatePtr until = prime_until_sw(cx, p, /*allow_mutation=*/false);
          StatePtr phi = prime_state_sw(cx, p.phi);
          StatePtr chi_step = chi_to_prop(p.chi, cx.alphabet);
          StatePtr stage = mk_or(mk_and(f_prop(), phi),
                                 mk_and(mk_not(f_prop()), chi_step));
          // The never-closing branch: the stage invariant holds forever.
          StatePtr forever =
              mk_exists(mk_w(mk_embed(stage), mk_embed(mk_not(mk_true()))));
          return mk_or(until, forever);
        }
        default:
          throw std::invalid_argument(
              "this translation accepts only the action-indexed next/until/"
              "weak-until path forms");
      }
    }
    default:
      throw std::invalid_argument("modal connective outside the branching grammars");
  }
}

// Into the action world from the pure state logic. The guards keep witness
// prefixes on the image: g fails at satellites, and dead_image_prime marks
// images of source-deadlocked states, whose image paths end there.
StatePtr prime_state_aw_ctl(const Ctx& cx, const StatePtr& f);

StatePtr prime_exists_aw_ctl(const Ctx& cx, const PathPtr& path) {
  bool negated = false;
  const PathFormula* p = path.get();
  while (p->kind == PathKind::NotP) {
    negated = !negated;
    p = p->p.get();
  }
  const auto operand = [&](const PathPtr& q) {
    if (!q || q->kind != PathKind::Embed) {
      throw std::invalid_argument("state-logic path operands must be embedded "
                                  "state formulas");
    }
    return prime_state_aw_ctl(cx, q->phi);
  };
  StatePtr g = g_marker();
  const auto guarded = [&](const StatePtr& x) { return mk_and(g, x); };
  switch (p->kind) {
    case PathKind::X: {
      StatePtr phi = operand(p->p);
      ActPtr step = mk_nota(mk_act(kFreshAtom));
      if (!negated) return mk_exists(mk_xchi(step, phi));
      // "some maximal path fails X phi": an empty run, or a real step to !phi
      return mk_or(dead_image_prime(),
                   mk_exists(mk_xchi(step, mk_not(phi))));
    }
    case PathKind::U: {
      StatePtr a = operand(p->p);
      StatePtr b = operand(p->q);
      if (!negated) {
        PathPtr left = mk_embed(guarded(a));
        PathPtr right = mk_embed(cx.mutation == 6
                                     ? b  // broken: may fire on a satellite
                                     : guarded(b));
        return mk_exists(mk_u(left, right));
      }
      StatePtr na = mk_not(a);
      StatePtr nb = mk_not(b);
      // Failure witnesses: the left fails before any right holds, or the
      // right fails along the whole run (forever, or into a dead image).
      StatePtr refute = mk_exists(
          mk_u(mk_embed(guarded(nb)), mk_embed(mk_and(guarded(na), nb))));
      StatePtr never = mk_exists(
          mk_w(mk_embed(guarded(nb)),
               mk_embed(mk_and(guarded(nb), dead_image_prime()))));
      return mk_or(refute, never);
    }
    case PathKind::W: {
      StatePtr a = operand(p->p);
      StatePtr b = operand(p->q);
      if (!negated) {
        StatePtr weak = mk_exists(
            mk_w(mk_embed(guarded(a)), mk_embed(guarded(b))));
        // A finite source run maintaining the left counts: its image ends at
        // a dead image state.
        StatePtr into_dead = mk_exists(
            mk_u(mk_embed(guarded(a)),
                 mk_embed(mk_and(guarded(a), dead_image_prime()))));
        return mk_or(weak, into_dead);
      }
      StatePtr na = mk_not(a);
      StatePtr nb = mk_not(b);
      return mk_exists(
          mk_u(mk_embed(guarded(nb)), mk_embed(mk_and(guarded(na), nb))));
    }
    default:
      throw std::invalid_argument(
          "state-logic path form outside the translated catalog");
  }
}

StatePtr prime_state_aw_ctl(const Ctx& cx, const StatePtr& f) {
  switch (f->kind) {
    case StateKind::True:
      return mk_true();
    case StateKind::Prop:
      // Probe the satellite's return step for the proposition.
      return mk_exists(mk_xact(
          kFreshAtom,
          mk_embed(mk_exists(mk_xact(f->name, mk_embed(mk_true()))))));
    case StateKind::Not:
      return mk_not(prime_state_aw_ctl(cx, f->a));
    case StateKind::And:
      return mk_and(prime_state_aw_ctl(cx, f->a), prime_state_aw_ctl(cx, f->b));
    case StateKind::Exists:
      return prime_exists_aw_ctl(cx, f->path);
    default:
      throw std::invalid_argument("modal connective outside the branching grammars");
  }
}

// Into the action world from the hybrid branching logic (native forms only).
StatePtr prime_state_aw_uctl(const Ctx& cx, const StatePtr& f) {
  switch (f->kind) {
    case StateKind::True:
      return mk_true();
    case StateKind::Prop:
      return mk_exists(mk_xact(
          kFreshAtom,
          mk_embed(mk_exists(mk_xact(f->name, mk_embed(mk_true()))))));
    case StateKind::Not:
      return mk_not(prime_state_aw_uctl(cx, f->a));
    case StateKind::And:
      return mk_and(prime_state_aw_uctl(cx, f->a), prime_state_aw_uctl(cx, f->b));
    case StateKind::Exists: {
      const PathFormula& p = *f->path;
      StatePtr g = g_marker();
      switch (p.kind) {
        case PathKind::Xchi: {
          StatePtr phi = prime_state_aw_uctl(cx, p.phi);
          StatePtr body = cx.mutation == 8
                              ? phi  // broken: satellites can satisfy it
                              : mk_and(g, phi);
          return mk_exists(mk_xchi(p.chi, body));
        }
        case PathKind::Uchi: {
          StatePtr a = mk_and(g, prime_state_aw_uctl(cx, p.phi));
          StatePtr b = mk_and(g, prime_state_aw_uctl(cx, p.phi2));
          return mk_exists(mk_uchi(a, p.chi, p.chi2, b));
        }
        case PathKind::Wchi: {
          StatePtr phi = prime_state_aw_uctl(cx, p.phi);
          StatePtr phi2 = prime_state_aw_uctl(cx, p.phi2);
          StatePtr a = mk_and(g, phi);
          StatePtr b = mk_and(g, phi2);
          StatePtr dead = dead_image_prime();
          // Closing run, or the step invariant kept over an entire source
          // run: forever, into a dead image (two or more steps), one step,
          // or no step at all.
          StatePtr weak = mk_exists(mk_wchi(a, p.chi, p.chi2, b));
          StatePtr into_dead =
              mk_exists(mk_uchi(a, p.chi, p.chi, mk_and(a, dead)));
          ActPtr real_step = mk_anda(p.chi, mk_nota(mk_act(kFreshAtom)));
          StatePtr one_step = mk_and(
              phi, mk_exists(mk_xchi(real_step, mk_and(phi, dead))));
          StatePtr no_step = mk_and(phi, dead);
          return mk_or(mk_or(mk_or(weak, into_dead), one_step), no_step);
        }
        default:
          throw std::invalid_argument(
              "this translation accepts only the action-indexed next/until/"
              "weak-until path forms");
      }
    }
    default:
      throw std::invalid_argument("modal connective outside the branching grammars");
  }
}

StatePtr translate(const MappingBundle& bundle, const StatePtr& f, int mutation) {
  if (!f) throw std::invalid_argument("null formula");
  const auto violations = conforms(f, source_logic(bundle.id));
  if (!violations.empty()) {
    throw std::invalid_argument("formula not in the " +
                                to_string(source_logic(bundle.id)) +
                                " grammar: " + violations.front());
  }
  Ctx cx{bundle.source.actions, bundle.id, mutation};
  switch (bundle.id) {
    case MappingId::Ks:
    case MappingId::Lts:
    case MappingId::Ks2:
    case MappingId::Lts2:
      return star_state(cx, f);
    case MappingId::KsPrime:
    case MappingId::Ks2Prime:
      return prime_state_sw(cx, f);
    case MappingId::LtsPrime:
      return prime_state_aw_ctl(cx, f);
    case MappingId::Lts2Prime:
      return prime_state_aw_uctl(cx, f);
  }
  throw std::logic_error("unhandled mapping id");
}

}  // namespace

StatePtr map_formula(const MappingBundle& bundle, const StatePtr& f) {
  return translate(bundle, f, 0);
}

PathPtr map_path_formula(const MappingBundle& bundle, const PathPtr& p) {
  if (!p) throw std::invalid_argument("null formula");
  if (!is_star(source_logic(bundle.id))) {
    throw std::invalid_argument(
        "path-level translation exists only for the star mappings");
  }
  const auto violations = conforms(mk_exists(p), source_logic(bundle.id));
  if (!violations.empty()) {
    throw std::invalid_argument("formula not in the " +
                                to_string(source_logic(bundle.id)) +
                                " grammar: " + violations.front());
  }
  Ctx cx{bundle.source.actions, bundle.id, 0};
  return to_state_world(bundle.id) ? star_path_sw(cx, p) : star_path_aw(cx, p);
}

StatePtr map_formula_mutated(const MappingBundle& bundle, const StatePtr& f,
                             int mutation) {
  if (mutation < 0 || mutation > 8) {
    throw std::invalid_argument("mutation must be between 0 and 8");
  }
  if (mutation != 0 && mutation != static_cast<int>(bundle.id) + 1) {
    throw std::invalid_argument(
        std::string("mutation ") + std::to_string(mutation) + " belongs to mapping " +
        to_string(static_cast<MappingId>(mutation - 1)) + ", not " +
        to_string(bundle.id));
  }
  return translate(bundle, f, mutation);
}

}  // namespace tempobridge
