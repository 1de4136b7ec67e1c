#include "tempobridge/structures.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tempobridge {

std::string to_string(StructureKind k) {
  switch (k) {
    case StructureKind::Ks: return "ks";
    case StructureKind::Lts: return "lts";
    case StructureKind::Kts: return "kts";
    case StructureKind::Kmts: return "kmts";
  }
  return "?";
}

std::optional<StateId> Structure::state_id(const std::string& name) const {
  for (std::size_t i = 0; i < states.size(); ++i)
    if (states[i] == name) return static_cast<StateId>(i);
  return std::nullopt;
}

std::optional<std::size_t> Structure::action_index(const std::string& name) const {
  for (std::size_t i = 0; i < actions.size(); ++i)
    if (actions[i] == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Structure::prop_index(const std::string& name) const {
  for (std::size_t i = 0; i < props.size(); ++i)
    if (props[i] == name) return i;
  return std::nullopt;
}

std::string Structure::action_token(std::size_t i) const {
  if (kind != StructureKind::Kmts) return actions[i];
  return actions[i] + (action_mods[i] == ActMod::Must ? "!" : "?");
}

namespace {

void check_unique(const std::vector<std::string>& names, const char* what,
                  std::vector<std::string>& out) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (n.empty()) out.push_back(std::string("empty ") + what + " name");
    if (!seen.insert(n).second)
      out.push_back(std::string("duplicate ") + what + " name: " + n);
  }
}

}  // namespace

std::vector<std::string> validate(const Structure& m) {
  std::vector<std::string> v;
  check_unique(m.states, "state", v);
  check_unique(m.actions, "action", v);
  check_unique(m.props, "prop", v);

  if (m.actions.size() > 64)
    v.push_back("alphabet too large: this implementation supports at most 64 actions");

  const bool wants_actions = m.has_action_labels();
  const bool wants_props = m.has_props();
  if (!wants_actions && !m.actions.empty())
    v.push_back("state-labeled structure must not carry an action alphabet");
  if (!wants_props && !m.props.empty())
    v.push_back("action-labeled structure must not carry props");
  if (!wants_props && !m.labeling.empty())
    v.push_back("action-labeled structure must not carry a labeling");

  if (m.kind == StructureKind::Kmts) {
    if (m.action_mods.size() != m.actions.size())
      v.push_back("three-valued structure needs one modifier per action");
  } else if (!m.action_mods.empty()) {
    v.push_back("only three-valued structures carry action modifiers");
  }

  if (wants_props && m.labeling.size() != m.states.size() * m.props.size())
    v.push_back("labeling must be total: one entry per (state, prop)");
  if (wants_props && !m.three_valued()) {
    for (Truth3 t : m.labeling)
      if (t == Truth3::Bot) {
        v.push_back("two-valued labeling contains an unknown entry");
        break;
      }
  }

  const LabelMask alphabet_mask =
      m.actions.size() >= 64 ? ~LabelMask{0}
                             : ((LabelMask{1} << m.actions.size()) - 1);
  std::set<std::pair<StateId, StateId>> pairs;
  for (const auto& t : m.transitions) {
    if (t.src >= m.states.size() || t.dst >= m.states.size()) {
      v.push_back("transition endpoint out of range");
      continue;
    }
    if (!pairs.insert({t.src, t.dst}).second)
      v.push_back("more than one transition from " + m.states[t.src] + " to " +
                  m.states[t.dst]);
    if (!wants_actions && t.labels != 0)
      v.push_back("state-labeled structure has a labeled transition");
    if (wants_actions && (t.labels & ~alphabet_mask) != 0)
      v.push_back("transition label outside the alphabet");
  }
  return v;
}

void require_valid(const Structure& m) {
  auto v = validate(m);
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid structure:";
  for (const auto& s : v) os << "\n  - " << s;
  throw std::invalid_argument(os.str());
}

Adjacency::Adjacency(const Structure& m) : out_(m.n_states()) {
  for (std::size_t i = 0; i < m.transitions.size(); ++i)
    out_[m.transitions[i].src].push_back(static_cast<TransIdx>(i));
}

bool deadlocked(const Structure& m, StateId s) {
  return std::none_of(m.transitions.begin(), m.transitions.end(),
                      [s](const Transition& t) { return t.src == s; });
}

std::vector<bool> alpha_prime(LabelMask alpha, std::size_t n_actions) {
  if (n_actions < 64 && (alpha >> n_actions) != 0)
    throw std::invalid_argument("alpha_prime: label outside the alphabet");
  std::vector<bool> row(n_actions, false);
  for (std::size_t i = 0; i < n_actions; ++i)
    if (alpha & (LabelMask{1} << i)) row[i] = true;
  return row;
}

LabelMask omega_prime(const Structure& m, StateId s) {
  if (!m.has_props() || m.three_valued())
    throw std::invalid_argument("omega_prime: needs a two-valued state labeling");
  LabelMask out = 0;
  for (std::size_t p = 0; p < m.n_props(); ++p)
    if (m.label_of(s, p) == Truth3::True) out |= LabelMask{1} << p;
  return out;
}

std::vector<Truth3> alpha_prime3(LabelMask alpha, const Structure& kmts) {
  if (!kmts.three_valued())
    throw std::invalid_argument("alpha_prime3: needs a three-valued structure");
  if (kmts.n_actions() < 64 && (alpha >> kmts.n_actions()) != 0)
    throw std::invalid_argument("alpha_prime3: label outside the alphabet");
  std::vector<Truth3> row(kmts.n_actions(), Truth3::False);
  for (std::size_t i = 0; i < kmts.n_actions(); ++i)
    if (alpha & (LabelMask{1} << i))
      row[i] = kmts.action_mods[i] == ActMod::Must ? Truth3::True : Truth3::Bot;
  return row;
}

std::vector<std::string> omega_prime3(const Structure& kmts, StateId s) {
  if (!kmts.three_valued())
    throw std::invalid_argument("omega_prime3: needs a three-valued structure");
  std::vector<std::string> out;
  for (std::size_t p = 0; p < kmts.n_props(); ++p) {
    Truth3 t = kmts.label_of(s, p);
    if (t == Truth3::True) out.push_back(kmts.props[p] + "!");
    else if (t == Truth3::Bot) out.push_back(kmts.props[p] + "?");
  }
  return out;
}

LabelMask label_mask_of(const Structure& m, const std::vector<std::string>& tokens) {
  LabelMask mask = 0;
  for (const auto& tok : tokens) {
    std::string base = tok;
    std::optional<ActMod> mod;
    if (!tok.empty() && (tok.back() == '!' || tok.back() == '?')) {
      base = tok.substr(0, tok.size() - 1);
      mod = tok.back() == '!' ? ActMod::Must : ActMod::May;
    }
    std::optional<std::size_t> idx;
    if (m.kind == StructureKind::Kmts) {
      idx = m.action_index(base);
      if (idx && (!mod || m.action_mods[*idx] != *mod)) idx = std::nullopt;
    } else {
      idx = m.action_index(tok);
    }
    if (!idx) throw std::invalid_argument("unknown action label: " + tok);
    mask |= LabelMask{1} << *idx;
  }
  return mask;
}

std::string render_labels(const Structure& m, LabelMask labels) {
  if (labels == 0) return "tau";
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < m.n_actions(); ++i) {
    if (!(labels & (LabelMask{1} << i))) continue;
    if (!first) out += ",";
    out += m.action_token(i);
    first = false;
  }
  out += "}";
  return out;
}

}  // namespace tempobridge
