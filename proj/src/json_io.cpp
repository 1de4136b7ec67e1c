#include "tempobridge/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace tempobridge {

namespace {

using ordered_json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw std::invalid_argument(path + ": " + msg);
}

const ordered_json& member(const ordered_json& obj, const std::string& path,
                           const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing key '") + key + "'");
  return *it;
}

std::string as_string(const ordered_json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> as_string_array(const ordered_json& j,
                                         const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

StructureKind parse_kind(const std::string& word, const std::string& path) {
  if (word == "ks") return StructureKind::Ks;
  if (word == "lts") return StructureKind::Lts;
  if (word == "kts") return StructureKind::Kts;
  if (word == "kmts") return StructureKind::Kmts;
  fail(path, "expected one of \"ks\", \"lts\", \"kts\", \"kmts\"");
}

Truth3 parse_truth(const std::string& word, const std::string& path,
                   bool three_valued) {
  if (word == "true") return Truth3::True;
  if (word == "false") return Truth3::False;
  if (word == "bot" && three_valued) return Truth3::Bot;
  fail(path, three_valued ? "expected \"true\", \"false\", or \"bot\""
                          : "expected \"true\" or \"false\"");
}

void reject_unknown_keys(const ordered_json& obj, const std::string& path,
                         const std::vector<const char*>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) known = true;
    if (!known) fail(path + "." + it.key(), "unknown key");
  }
}

StateId state_of(const Structure& m, const std::string& name,
                 const std::string& path) {
  if (auto id = m.state_id(name)) return *id;
  fail(path, "unknown state '" + name + "'");
}

}  // namespace

Structure load_structure(const std::string& text) {
  ordered_json root;
  try {
    root = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed JSON: ") + e.what());
  }
  if (!root.is_object()) fail("$", "expected an object");

  Structure m;
  m.kind = parse_kind(as_string(member(root, "$", "kind"), "$.kind"), "$.kind");

  const std::vector<const char*> allowed =
      m.kind == StructureKind::Ks
          ? std::vector<const char*>{"kind", "states", "props", "transitions", "labeling"}
      : m.kind == StructureKind::Lts
          ? std::vector<const char*>{"kind", "states", "actions", "transitions"}
          : std::vector<const char*>{"kind",  "states",      "actions",
                                     "props", "transitions", "labeling"};
  reject_unknown_keys(root, "$", allowed);

  m.states = as_string_array(member(root, "$", "states"), "$.states");

  if (m.has_action_labels()) {
    auto tokens = as_string_array(member(root, "$", "actions"), "$.actions");
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::string token = tokens[i];
      if (m.three_valued()) {
        const std::string where = "$.actions[" + std::to_string(i) + "]";
        if (token.size() < 2 || (token.back() != '!' && token.back() != '?'))
          fail(where, "expected an action name with a '!' or '?' suffix");
        m.action_mods.push_back(token.back() == '!' ? ActMod::Must : ActMod::May);
        token.pop_back();
      }
      m.actions.push_back(std::move(token));
    }
  }

  if (m.has_props())
    m.props = as_string_array(member(root, "$", "props"), "$.props");

  const ordered_json& trans = member(root, "$", "transitions");
  if (!trans.is_array()) fail("$.transitions", "expected an array");
  for (std::size_t i = 0; i < trans.size(); ++i) {
    const std::string where = "$.transitions[" + std::to_string(i) + "]";
    const ordered_json& t = trans[i];
    if (!t.is_object()) fail(where, "expected an object");
    if (m.has_action_labels())
      reject_unknown_keys(t, where, {"src", "dst", "labels"});
    else
      reject_unknown_keys(t, where, {"src", "dst"});

    Transition edge;
    edge.src = state_of(m, as_string(member(t, where, "src"), where + ".src"),
                        where + ".src");
    edge.dst = state_of(m, as_string(member(t, where, "dst"), where + ".dst"),
                        where + ".dst");
    if (m.has_action_labels()) {
      auto labels = as_string_array(member(t, where, "labels"), where + ".labels");
      for (std::size_t k = 0; k < labels.size(); ++k) {
        const std::string lw = where + ".labels[" + std::to_string(k) + "]";
        std::string token = labels[k];
        if (m.three_valued()) {
          if (token.size() < 2 || (token.back() != '!' && token.back() != '?'))
            fail(lw, "expected an action name with a '!' or '?' suffix");
          auto idx = m.action_index(token.substr(0, token.size() - 1));
          if (!idx || m.action_token(*idx) != token)
            fail(lw, "unknown action '" + token + "'");
          if (edge.labels & (LabelMask{1} << *idx)) fail(lw, "duplicate label");
          edge.labels |= LabelMask{1} << *idx;
        } else {
          auto idx = m.action_index(token);
          if (!idx) fail(lw, "unknown action '" + token + "'");
          if (edge.labels & (LabelMask{1} << *idx)) fail(lw, "duplicate label");
          edge.labels |= LabelMask{1} << *idx;
        }
      }
    }
    m.transitions.push_back(edge);
  }

  if (m.has_props()) {
    m.labeling.assign(m.n_states() * m.n_props(), Truth3::False);
    if (auto it = root.find("labeling"); it != root.end()) {
      if (!it->is_object()) fail("$.labeling", "expected an object");
      for (auto row = it->begin(); row != it->end(); ++row) {
        const std::string where = "$.labeling." + row.key();
        const StateId s = state_of(m, row.key(), where);
        if (!row->is_object()) fail(where, "expected an object");
        for (auto cell = row->begin(); cell != row->end(); ++cell) {
          const std::string cw = where + "." + cell.key();
          auto p = m.prop_index(cell.key());
          if (!p) fail(cw, "unknown proposition '" + cell.key() + "'");
          m.label_of(s, *p) =
              parse_truth(as_string(*cell, cw), cw, m.three_valued());
        }
      }
    }
  }

  require_valid(m);
  return m;
}

Structure load_structure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_structure(buffer.str());
}

std::string save_structure(const Structure& m) {
  require_valid(m);
  ordered_json root;
  root["kind"] = to_string(m.kind);
  root["states"] = m.states;
  if (m.has_action_labels()) {
    auto tokens = ordered_json::array();
    for (std::size_t i = 0; i < m.n_actions(); ++i)
      tokens.push_back(m.action_token(i));
    root["actions"] = std::move(tokens);
  }
  if (m.has_props()) root["props"] = m.props;

  auto trans = ordered_json::array();
  for (const Transition& t : m.transitions) {
    ordered_json edge;
    edge["src"] = m.states[t.src];
    edge["dst"] = m.states[t.dst];
    if (m.has_action_labels()) {
      auto labels = ordered_json::array();
      for (std::size_t i = 0; i < m.n_actions(); ++i)
        if (t.labels & (LabelMask{1} << i)) labels.push_back(m.action_token(i));
      edge["labels"] = std::move(labels);
    }
    trans.push_back(std::move(edge));
  }
  root["transitions"] = std::move(trans);

  if (m.has_props() && m.n_props() > 0) {
    ordered_json table;
    for (StateId s = 0; s < m.n_states(); ++s) {
      ordered_json row;
      for (std::size_t p = 0; p < m.n_props(); ++p)
        row[m.props[p]] = to_string(m.label_of(s, p));
      table[m.states[s]] = std::move(row);
    }
    root["labeling"] = std::move(table);
  }
  return root.dump(2) + "\n";
}

void save_structure_file(const Structure& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << save_structure(m);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace tempobridge
