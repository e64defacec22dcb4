// scaleqm: runs the check suites and writes CSV/JSON reports.
//
// Exit status: 0 when every check passed, 1 when any failed, 2 on a
// configuration or I/O error.

#include <cstdlib>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "scaleqm/error.hpp"
#include "scaleqm_runner/config.hpp"
#include "scaleqm_runner/suites.hpp"

namespace {

struct Overrides {
  std::string config;
  std::optional<std::size_t> grid_n;
  std::optional<int> dims;
  std::optional<std::string> field;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  std::optional<std::string> out;
  bool paper_signs = false;
  bool hilbert = false;
  std::optional<std::size_t> n;
  std::optional<std::string> refs;
  bool dump_tensor = false;
};

void add_common(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "YAML run configuration");
  app.add_option("--grid-n", o.grid_n, "Grid points per axis (default depends on the suite)");
  app.add_option("--dims", o.dims, "Grid dimensions, 1 to 3");
  app.add_option("--field", o.field, "gamma preset")
      ->check(CLI::IsMember({"constant", "linear-periodic", "sine", "gaussian-bump-periodicized"}));
  app.add_option("--alpha", o.alpha, "Real amplitude of the gamma preset");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--tol", o.tol, "Use this tolerance for every check");
  app.add_option("--out", o.out, "Output directory (default $SCALEQM_OUT, then ./results)");
  app.add_flag("--paper-signs", o.paper_signs, "Use +i hbar d/dz and +hbar^2/2m laplacian");
  app.add_flag("--hilbert", o.hilbert, "axioms: include the Hilbert-space checks");
  app.add_option("--n", o.n, "entangled: number of particles, 1 to 3");
  app.add_option("--refs", o.refs, "entangled: reference tuple, equal or distinct")
      ->check(CLI::IsMember({"equal", "distinct"}));
  app.add_flag("--dump-tensor", o.dump_tensor, "entangled: write the scaled tensor (n <= 2, N <= 64)");
}

scaleqm::runner::RunConfig resolve(const std::string& subcommand, const Overrides& o) {
  using scaleqm::runner::RunConfig;
  RunConfig base;
  if (const char* env = std::getenv("SCALEQM_OUT"); env != nullptr && *env != '\0') {
    base.out_dir = env;
  }
  RunConfig cfg = o.config.empty() ? base : scaleqm::runner::load_config(o.config, base);
  cfg.subcommand = subcommand;
  if (o.grid_n) cfg.grid.n = *o.grid_n;
  if (o.dims) cfg.grid.dims = *o.dims;
  if (o.field) cfg.field.preset = *o.field;
  if (o.alpha) cfg.field.alpha = *o.alpha;
  if (o.seed) cfg.seed = *o.seed;
  if (o.tol) cfg.tolerance = *o.tol;
  if (o.out) cfg.out_dir = *o.out;
  if (o.paper_signs) cfg.physics.paper_signs = true;
  if (o.hilbert) cfg.hilbert = true;
  if (o.n) cfg.entangled.n = *o.n;
  if (o.refs) cfg.entangled.refs = *o.refs;
  if (o.dump_tensor) cfg.entangled.dump_tensor = true;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check suites for scaled number structures on periodic grids"};
  app.require_subcommand(1);
  Overrides o;
  add_common(app, o);

  std::string chosen;
  for (const char* name : {"axioms", "single", "spectrum", "momentum", "entangled", "all"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->callback([&chosen, name] { chosen = name; });
  }
  app.get_subcommand("axioms")->description("Projected field and value-map identities");
  app.get_subcommand("single")->description("Scaled wave packets and modified operators");
  app.get_subcommand("spectrum")->description("Spectra of the standard and modified Hamiltonians");
  app.get_subcommand("momentum")->description("Momentum representation by convolution");
  app.get_subcommand("entangled")->description("n-particle scaling and operators");
  app.get_subcommand("all")->description("Every suite in sequence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto cfg = resolve(chosen, o);
    const auto results = scaleqm::runner::run_and_write(cfg);
    bool ok = true;
    for (const auto& r : results) {
      scaleqm::runner::print_suite(std::cout, r);
      ok = ok && r.all_passed();
    }
    std::cout << "reports written to " << cfg.out_dir << '\n';
    return ok ? 0 : 1;
  } catch (const scaleqm::runner::ConfigError& e) {
    std::cerr << "scaleqm: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "scaleqm: " << e.what() << '\n';
    return 2;
  }
}
