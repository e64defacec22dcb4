#include "scaleqm_runner/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace scaleqm::runner {
namespace {

int line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

template <typename T>
T read(const YAML::Node& node, const std::string& field) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, line_of(node), "cannot read value '" + YAML::Dump(node) + "'");
  }
}

double read_positive(const YAML::Node& node, const std::string& field) {
  const auto v = read<double>(node, field);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw ConfigError(field, line_of(node), "must be a positive number");
  }
  return v;
}

void check_keys(const YAML::Node& map, const std::string& section,
                const std::set<std::string>& allowed) {
  if (!map.IsMap()) {
    throw ConfigError(section.empty() ? "config" : section, line_of(map), "expected a mapping");
  }
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      const std::string field = section.empty() ? key : section + "." + key;
      throw ConfigError(field, line_of(kv.first), "unknown key");
    }
  }
}

void read_grid(const YAML::Node& node, GridSpec& grid) {
  check_keys(node, "grid", {"dims", "n", "length"});
  if (node["dims"]) grid.dims = read<int>(node["dims"], "grid.dims");
  if (node["n"]) grid.n = read<std::size_t>(node["n"], "grid.n");
  if (node["length"]) grid.length = read_positive(node["length"], "grid.length");
  if (grid.dims < 1 || grid.dims > 3) {
    throw ConfigError("grid.dims", line_of(node["dims"]), "must be 1, 2 or 3");
  }
  if (node["n"] && grid.n < 4) throw ConfigError("grid.n", line_of(node["n"]), "must be >= 4");
}

void read_field(const YAML::Node& node, FieldSpec& field) {
  check_keys(node, "field", {"preset", "alpha", "alpha_imag", "width", "csv"});
  if (node["preset"]) field.preset = read<std::string>(node["preset"], "field.preset");
  if (node["alpha"]) field.alpha = read<double>(node["alpha"], "field.alpha");
  if (node["alpha_imag"]) field.alpha_imag = read<double>(node["alpha_imag"], "field.alpha_imag");
  if (node["width"]) field.width = read_positive(node["width"], "field.width");
  if (node["csv"]) field.csv = read<std::string>(node["csv"], "field.csv");
  static const std::set<std::string> presets{"constant", "linear-periodic", "sine",
                                             "gaussian-bump-periodicized"};
  if (!presets.count(field.preset)) {
    throw ConfigError("field.preset", line_of(node["preset"]), "unknown preset '" + field.preset + "'");
  }
}

void read_physics(const YAML::Node& node, PhysicsSpec& physics) {
  check_keys(node, "physics", {"hbar", "mass", "masses", "paper_signs"});
  if (node["hbar"]) physics.hbar = read_positive(node["hbar"], "physics.hbar");
  if (node["mass"]) physics.masses = {read_positive(node["mass"], "physics.mass")};
  if (node["masses"]) {
    const YAML::Node list = node["masses"];
    if (!list.IsSequence() || list.size() == 0) {
      throw ConfigError("physics.masses", line_of(list), "expected a non-empty list");
    }
    physics.masses.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      physics.masses.push_back(
          read_positive(list[i], "physics.masses[" + std::to_string(i) + "]"));
    }
  }
  if (node["paper_signs"]) physics.paper_signs = read<bool>(node["paper_signs"], "physics.paper_signs");
}

void read_state(const YAML::Node& node, StateSpec& state) {
  check_keys(node, "state",
             {"packet", "center", "width", "wavevector", "mode", "point", "max_mode", "ref_point"});
  if (node["packet"]) state.packet = read<std::string>(node["packet"], "state.packet");
  if (node["center"]) state.center = read<double>(node["center"], "state.center");
  if (node["width"]) state.width = read_positive(node["width"], "state.width");
  if (node["wavevector"]) state.wavevector = read<double>(node["wavevector"], "state.wavevector");
  if (node["mode"]) state.mode = read<long>(node["mode"], "state.mode");
  if (node["point"]) state.point = read<std::size_t>(node["point"], "state.point");
  if (node["max_mode"]) state.max_mode = read<long>(node["max_mode"], "state.max_mode");
  if (node["ref_point"]) state.ref_point = read<std::size_t>(node["ref_point"], "state.ref_point");
  static const std::set<std::string> kinds{"gaussian", "plane-wave", "delta", "random-smooth"};
  if (!kinds.count(state.packet)) {
    throw ConfigError("state.packet", line_of(node["packet"]), "unknown packet '" + state.packet + "'");
  }
}

void read_entangled(const YAML::Node& node, EntangledSpec& spec) {
  check_keys(node, "entangled", {"n", "refs", "dump_tensor"});
  if (node["n"]) spec.n = read<std::size_t>(node["n"], "entangled.n");
  if (node["refs"]) spec.refs = read<std::string>(node["refs"], "entangled.refs");
  if (node["dump_tensor"]) spec.dump_tensor = read<bool>(node["dump_tensor"], "entangled.dump_tensor");
  if (spec.refs != "equal" && spec.refs != "distinct") {
    throw ConfigError("entangled.refs", line_of(node["refs"]), "must be 'equal' or 'distinct'");
  }
  if (spec.n < 1 || spec.n > 3) {
    throw ConfigError("entangled.n", line_of(node["n"]), "must be 1, 2 or 3");
  }
}

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : std::runtime_error("config error in '" + field + "'" +
                         (line > 0 ? " (line " + std::to_string(line) + ")" : "") + ": " + message),
      field_(std::move(field)),
      line_(line) {}

double RunConfig::tolerance_for(const std::string& check, double fallback) const {
  if (tolerance) return *tolerance;
  const auto it = tolerances.find(check);
  return it != tolerances.end() ? it->second : fallback;
}

void RunConfig::validate() const {
  if (grid.dims < 1 || grid.dims > 3) throw ConfigError("grid.dims", 0, "must be 1, 2 or 3");
  if (grid.n != 0 && grid.n < 4) throw ConfigError("grid.n", 0, "must be >= 4");
  if (!(grid.length > 0.0)) throw ConfigError("grid.length", 0, "must be positive");
  if (tolerance && (*tolerance < 0.0 || !std::isfinite(*tolerance))) {
    throw ConfigError("tolerance", 0, "must be a finite number >= 0");
  }
  if (entangled.n < 1 || entangled.n > 3) throw ConfigError("entangled.n", 0, "must be 1, 2 or 3");
  if (entangled.refs != "equal" && entangled.refs != "distinct") {
    throw ConfigError("entangled.refs", 0, "must be 'equal' or 'distinct'");
  }
  if (axiom_scale_pairs == 0 || axiom_operand_triples == 0) {
    throw ConfigError("axioms", 0, "sample counts must be positive");
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["subcommand"] = subcommand;
  j["grid"] = {{"dims", grid.dims}, {"n", grid.n}, {"length", grid.length}};
  j["field"] = {{"preset", field.preset}, {"alpha", field.alpha}, {"alpha_imag", field.alpha_imag}};
  if (field.width) j["field"]["width"] = *field.width;
  if (field.csv) j["field"]["csv"] = *field.csv;
  j["derivative"] = std::string(to_string(scheme));
  j["well_depth"] = well_depth;
  j["physics"] = {{"hbar", physics.hbar},
                  {"masses", physics.masses},
                  {"paper_signs", physics.paper_signs}};
  j["state"] = {{"packet", state.packet},         {"center", state.center},
                {"width", state.width},           {"wavevector", state.wavevector},
                {"mode", state.mode},             {"point", state.point},
                {"max_mode", state.max_mode},     {"ref_point", state.ref_point}};
  j["entangled"] = {{"n", entangled.n}, {"refs", entangled.refs},
                    {"dump_tensor", entangled.dump_tensor}};
  j["axioms"] = {{"scale_pairs", axiom_scale_pairs},
                 {"operand_triples", axiom_operand_triples},
                 {"hilbert", hilbert}};
  j["tolerance"] = tolerance ? nlohmann::json(*tolerance) : nlohmann::json(nullptr);
  j["tolerances"] = tolerances;
  j["seed"] = seed;
  return j;
}

RunConfig parse_config(const std::string& yaml_text, RunConfig base) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("config", e.mark.line + 1, e.msg);
  }
  if (root.IsNull()) return base;
  check_keys(root, "",
             {"grid", "field", "derivative", "well_depth", "physics", "state", "entangled",
              "axioms", "tolerance", "tolerances", "out", "seed"});
  RunConfig cfg = std::move(base);
  if (root["grid"]) read_grid(root["grid"], cfg.grid);
  if (root["field"]) read_field(root["field"], cfg.field);
  if (root["derivative"]) {
    const YAML::Node n = root["derivative"];
    try {
      cfg.scheme = parse_derivative_scheme(read<std::string>(n, "derivative"));
    } catch (const std::invalid_argument& e) {
      throw ConfigError("derivative", line_of(n), e.what());
    }
  }
  if (root["well_depth"]) cfg.well_depth = read<double>(root["well_depth"], "well_depth");
  if (root["physics"]) read_physics(root["physics"], cfg.physics);
  if (root["state"]) read_state(root["state"], cfg.state);
  if (root["entangled"]) read_entangled(root["entangled"], cfg.entangled);
  if (root["axioms"]) {
    const YAML::Node a = root["axioms"];
    check_keys(a, "axioms", {"scale_pairs", "operand_triples", "hilbert"});
    if (a["scale_pairs"]) cfg.axiom_scale_pairs = read<std::size_t>(a["scale_pairs"], "axioms.scale_pairs");
    if (a["operand_triples"]) {
      cfg.axiom_operand_triples = read<std::size_t>(a["operand_triples"], "axioms.operand_triples");
    }
    if (a["hilbert"]) cfg.hilbert = read<bool>(a["hilbert"], "axioms.hilbert");
  }
  if (root["tolerance"]) {
    const double t = read<double>(root["tolerance"], "tolerance");
    if (t < 0.0 || !std::isfinite(t)) {
      throw ConfigError("tolerance", line_of(root["tolerance"]), "must be a finite number >= 0");
    }
    cfg.tolerance = t;
  }
  if (root["tolerances"]) {
    const YAML::Node t = root["tolerances"];
    if (!t.IsMap()) throw ConfigError("tolerances", line_of(t), "expected a mapping");
    for (const auto& kv : t) {
      const auto key = kv.first.as<std::string>();
      cfg.tolerances[key] = read<double>(kv.second, "tolerances." + key);
    }
  }
  if (root["out"]) cfg.out_dir = read<std::string>(root["out"], "out");
  if (root["seed"]) cfg.seed = read<std::uint64_t>(root["seed"], "seed");
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", 0, "cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  RunConfig cfg = parse_config(text.str(), std::move(base));
  cfg.config_path = path;
  return cfg;
}

}  // namespace scaleqm::runner
