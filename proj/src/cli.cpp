#include "tempobridge/cli.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "tempobridge/checker2.hpp"
#include "tempobridge/checker3.hpp"
#include "tempobridge/formulas.hpp"
#include "tempobridge/json_io.hpp"
#include "tempobridge/lasso.hpp"
#include "tempobridge/mappings.hpp"
#include "tempobridge/parser.hpp"
#include "tempobridge/structures.hpp"
#include "tempobridge/testkit.hpp"

namespace tempobridge {

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kUsage = 2;
constexpr int kDisagreement = 3;

LogicId logic_from_token(const std::string& token) {
  std::string t;
  for (const char c : token) t.push_back(static_cast<char>(std::tolower(c)));
  if (t == "ctl") return LogicId::Ctl;
  if (t == "ctl*" || t == "ctlstar") return LogicId::CtlStar;
  if (t == "actl") return LogicId::Actl;
  if (t == "actl*" || t == "actlstar") return LogicId::ActlStar;
  if (t == "uctl") return LogicId::Uctl;
  if (t == "uctl*" || t == "uctlstar") return LogicId::UctlStar;
  if (t == "upml") return LogicId::Upml;
  throw std::invalid_argument("unknown logic: " + token +
                              " (expected CTL, CTL*, ACTL, ACTL*, UCTL, UCTL*, or UPML)");
}

MappingId mapping_id_from_token(const std::string& token) {
  const auto id = mapping_from_token(token);
  if (!id) {
    throw std::invalid_argument("unknown mapping: " + token +
                                " (expected ks, lts, ks2, lts2, ks', lts', ks2', or lts2')");
  }
  return *id;
}

// The environment can raise or lower the lasso-search ceiling.
CheckConfig config_from_env() {
  CheckConfig cfg;
  if (const char* env = std::getenv("TEMPOBRIDGE_CEILING")) {
    const std::string text(env);
    std::size_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
      throw std::invalid_argument("TEMPOBRIDGE_CEILING must be a positive integer, got \"" +
                                  text + "\"");
    }
    cfg.ceiling = value;
  }
  return cfg;
}

StateId state_id_or_throw(const Structure& m, const std::string& name) {
  const auto sid = m.state_id(name);
  if (!sid) throw std::invalid_argument("unknown state: " + name);
  return *sid;
}

void require_pairing(LogicId logic, const Structure& m) {
  if (logic == LogicId::Upml) {
    if (m.kind == StructureKind::Kmts) return;
    throw std::invalid_argument("UPML needs a three-valued doubly-labeled structure, got " +
                                to_string(m.kind));
  }
  if (!detail::logic_pairs_with(logic, m.kind)) {
    throw std::invalid_argument(to_string(logic) + " does not pair with a " +
                                to_string(m.kind) + " structure");
  }
}

struct CheckArgs {
  std::string structure;
  std::string logic;
  std::string state;
  std::string formula;
  std::optional<std::size_t> bound;
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
  const Structure m = load_structure_file(args.structure);
  const LogicId logic = logic_from_token(args.logic);
  const StateId s = state_id_or_throw(m, args.state);
  const StatePtr f = parse_formula(args.formula, logic);
  require_pairing(logic, m);
  if (logic == LogicId::Upml) {
    const Truth3 v = eval_upml(m, s, f);
    out << to_string(v) << "\n";
    return v == Truth3::True ? kOk : kFalse;
  }
  CheckConfig cfg = config_from_env();
  cfg.bound_override = args.bound;
  const CheckResult r = check_state(m, s, f, logic, cfg);
  out << (r.value ? "true" : "false") << (r.bounded ? " (bounded)" : "") << "\n";
  return r.value ? kOk : kFalse;
}

struct MapArgs {
  std::string mapping;
  std::string structure;
  std::string formula;
  std::string out_file;
};

int cmd_map(const MapArgs& args, std::ostream& out) {
  const MappingId id = mapping_id_from_token(args.mapping);
  const MappingBundle b = apply_mapping(id, load_structure_file(args.structure));
  std::string translated;
  if (!args.formula.empty()) {
    const StatePtr f = parse_formula(args.formula, source_logic(id));
    translated = render_formula(map_formula(b, f));
  }
  if (args.out_file.empty()) {
    out << save_structure(b.target);
  } else {
    save_structure_file(b.target, args.out_file);
  }
  if (!translated.empty()) out << translated << "\n";
  return kOk;
}

struct PathsArgs {
  std::string structure;
  std::string state;
  std::size_t bound = 0;
};

int cmd_paths(const PathsArgs& args, std::ostream& out) {
  const Structure m = load_structure_file(args.structure);
  const StateId s = state_id_or_throw(m, args.state);
  for (const Lasso& sigma : mu_paths(m, s, args.bound)) {
    out << render_lasso(m, sigma) << "\n";
  }
  return kOk;
}

std::string dot_escape(const std::string& s) {
  std::string r;
  for (const char c : s) {
    if (c == '"' || c == '\\') r.push_back('\\');
    r.push_back(c);
  }
  return r;
}

// Label sets with the three-valued modifier suffixes where the structure
// carries them; "tau" for the silent set.
std::string dot_edge_label(const Structure& m, LabelMask labels) {
  if (labels == 0) return "tau";
  std::string r = "{";
  bool first = true;
  for (std::size_t i = 0; i < m.n_actions(); ++i) {
    if (((labels >> i) & 1) == 0) continue;
    if (!first) r += ",";
    first = false;
    r += m.actions[i];
    if (m.kind == StructureKind::Kmts) r += m.action_mods[i] == ActMod::Must ? "!" : "?";
  }
  return r + "}";
}

int cmd_dot(const std::string& path, std::ostream& out) {
  const Structure m = load_structure_file(path);
  out << "digraph structure {\n  rankdir=LR;\n";
  for (StateId s = 0; s < m.n_states(); ++s) {
    std::string label = dot_escape(m.states[s]);
    for (std::size_t p = 0; p < m.n_props(); ++p) {
      label += "\\n" + dot_escape(m.props[p]) + "=" + to_string(m.label_of(s, p));
    }
    out << "  \"" << dot_escape(m.states[s]) << "\" [label=\"" << label << "\"";
    if (deadlocked(m, s)) out << ", peripheries=2";
    out << "];\n";
  }
  for (const Transition& t : m.transitions) {
    out << "  \"" << dot_escape(m.states[t.src]) << "\" -> \"" << dot_escape(m.states[t.dst])
        << "\"";
    if (m.has_action_labels()) {
      out << " [label=\"" << dot_escape(dot_edge_label(m, t.labels)) << "\"]";
    }
    out << ";\n";
  }
  out << "}\n";
  return kOk;
}

struct XCheckArgs {
  std::string mapping;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  int mutation = 0;
};

int cmd_xcheck(const XCheckArgs& args, std::ostream& out) {
  const MappingId id = mapping_id_from_token(args.mapping);
  GenParams params;
  params.seed = args.seed;
  params.trials = args.trials;
  const XCheckReport report = xcheck(id, params, args.mutation);
  out << report_to_json(report);
  return report.failures.empty() ? kOk : kDisagreement;
}

int cmd_fmt(const std::string& logic_token, const std::string& formula, std::ostream& out) {
  const LogicId logic = logic_from_token(logic_token);
  out << render_formula(parse_formula(formula, logic)) << "\n";
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"State/event temporal logic workbench: checking, structure "
               "translation, and differential validation"};
  app.require_subcommand(1);

  CheckArgs check_args;
  std::size_t bound_value = 0;
  auto* check = app.add_subcommand("check", "Evaluate a formula at a state");
  check->add_option("--structure", check_args.structure, "Structure JSON file")->required();
  check->add_option("--logic", check_args.logic, "Logic identifier")->required();
  check->add_option("--state", check_args.state, "State name")->required();
  check->add_option("--formula", check_args.formula, "Formula text")->required();
  auto* bound_opt =
      check->add_option("--bound", bound_value, "Override the lasso search bound");

  MapArgs map_args;
  auto* map = app.add_subcommand("map", "Translate a structure (and a formula) to its image");
  map->add_option("--mapping", map_args.mapping, "Mapping identifier")->required();
  map->add_option("--structure", map_args.structure, "Structure JSON file")->required();
  map->add_option("--formula", map_args.formula, "Formula to translate");
  map->add_option("--out", map_args.out_file, "Write the image structure to this file");

  PathsArgs paths_args;
  auto* paths = app.add_subcommand("paths", "List the maximal paths from a state");
  paths->add_option("--structure", paths_args.structure, "Structure JSON file")->required();
  paths->add_option("--state", paths_args.state, "Start state name")->required();
  paths->add_option("--bound", paths_args.bound, "Maximum transitions per path")->required();

  std::string dot_structure;
  auto* dot = app.add_subcommand("dot", "Render a structure as a DOT graph");
  dot->add_option("--structure", dot_structure, "Structure JSON file")->required();

  XCheckArgs xcheck_args;
  auto* xchk = app.add_subcommand("xcheck", "Differential run of one mapping");
  xchk->add_option("--mapping", xcheck_args.mapping, "Mapping identifier")->required();
  xchk->add_option("--trials", xcheck_args.trials, "Number of random trials")->required();
  xchk->add_option("--seed", xcheck_args.seed, "Generator seed")->required();
  xchk->add_option("--mutation", xcheck_args.mutation,
                   "Run a deliberately broken translator variant (0 = faithful)");

  std::string fmt_logic;
  std::string fmt_formula;
  auto* fmt = app.add_subcommand("fmt", "Reprint a formula in canonical form");
  fmt->add_option("--logic", fmt_logic, "Logic identifier")->required();
  fmt->add_option("--formula", fmt_formula, "Formula text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (check->parsed()) {
      if (bound_opt->count() > 0) check_args.bound = bound_value;
      return cmd_check(check_args, out);
    }
    if (map->parsed()) return cmd_map(map_args, out);
    if (paths->parsed()) return cmd_paths(paths_args, out);
    if (dot->parsed()) return cmd_dot(dot_structure, out);
    if (xchk->parsed()) return cmd_xcheck(xcheck_args, out);
    if (fmt->parsed()) return cmd_fmt(fmt_logic, fmt_formula, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  err << "error: no subcommand given\n";
  return kUsage;
}

}  // namespace tempobridge
