#pragma once

// Run configuration for the scaleqm command line runner: a YAML document
// with optional command line overrides.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "scaleqm/differentiation.hpp"

namespace scaleqm::runner {

/// A config value that could not be read. `line` is 1-based, 0 when unknown.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, int line, const std::string& message);

  [[nodiscard]] const std::string& field() const noexcept { return field_; }
  [[nodiscard]] int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

struct GridSpec {
  int dims = 1;
  /// 0 means "use the suite default".
  std::size_t n = 0;
  double length = 20.0;
};

struct FieldSpec {
  std::string preset = "sine";
  double alpha = 0.3;
  double alpha_imag = 0.0;
  std::optional<double> width;
  /// Per-point gamma table; replaces the preset when set.
  std::optional<std::string> csv;
};

struct PhysicsSpec {
  double hbar = 1.0;
  std::vector<double> masses{1.0};
  bool paper_signs = false;
};

struct StateSpec {
  std::string packet = "gaussian";
  double center = 0.4;  // fraction of L
  double width = 0.1;   // fraction of L
  double wavevector = 1.0;
  long mode = 1;
  std::size_t point = 0;
  long max_mode = 3;
  std::size_t ref_point = 0;
};

struct EntangledSpec {
  std::size_t n = 2;
  std::string refs = "equal";  // or "distinct"
  bool dump_tensor = false;
};

struct RunConfig {
  std::string subcommand = "all";
  GridSpec grid;
  FieldSpec field;
  DerivativeScheme scheme = DerivativeScheme::Spectral;
  double well_depth = 1.0;
  PhysicsSpec physics;
  StateSpec state;
  EntangledSpec entangled;
  std::size_t axiom_scale_pairs = 200;
  std::size_t axiom_operand_triples = 200;
  bool hilbert = false;
  /// Replaces every per-check tolerance when set.
  std::optional<double> tolerance;
  std::map<std::string, double> tolerances;
  std::string out_dir = "results";
  std::uint64_t seed = 42;
  /// Source of the config file, echoed in reports.
  std::string config_path;

  /// Tolerance of `check`: the global override, then the per-check table, then the default.
  [[nodiscard]] double tolerance_for(const std::string& check, double fallback) const;
  /// Throws ConfigError on inconsistent values.
  void validate() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Parses YAML text. Unknown keys and malformed values raise ConfigError.
[[nodiscard]] RunConfig parse_config(const std::string& yaml_text, RunConfig base = {});
/// Reads and parses a file. I/O failures raise ConfigError with field "config".
[[nodiscard]] RunConfig load_config(const std::string& path, RunConfig base = {});

}  // namespace scaleqm::runner
