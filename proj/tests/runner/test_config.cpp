#include "scaleqm_runner/config.hpp"

#include <gtest/gtest.h>

namespace scaleqm::runner {
namespace {

ConfigError parse_error(const std::string& yaml) {
  try {
    (void)parse_config(yaml);
  } catch (const ConfigError& e) {
    return e;
  }
  ADD_FAILURE() << "no ConfigError for:\n" << yaml;
  return ConfigError("", 0, "");
}

TEST(Config, ReadsEverySection) {
  const RunConfig cfg = parse_config(R"(
grid: {dims: 2, n: 16, length: 5.0}
field: {preset: gaussian-bump-periodicized, alpha: 0.5, alpha_imag: -0.1, width: 0.7}
derivative: central4
well_depth: 2.5
physics: {hbar: 0.5, masses: [1.0, 2.0], paper_signs: true}
state: {packet: plane-wave, mode: 3, ref_point: 4}
entangled: {n: 2, refs: distinct, dump_tensor: true}
axioms: {scale_pairs: 10, operand_triples: 20, hilbert: true}
tolerances: {convolution_duality: 1.0e-9}
out: some/dir
seed: 99
)");
  EXPECT_EQ(cfg.grid.dims, 2);
  EXPECT_EQ(cfg.grid.n, 16u);
  EXPECT_EQ(cfg.grid.length, 5.0);
  EXPECT_EQ(cfg.field.preset, "gaussian-bump-periodicized");
  EXPECT_EQ(cfg.field.alpha_imag, -0.1);
  EXPECT_EQ(*cfg.field.width, 0.7);
  EXPECT_EQ(cfg.scheme, DerivativeScheme::Central4);
  EXPECT_EQ(cfg.well_depth, 2.5);
  EXPECT_EQ(cfg.physics.masses, (std::vector<double>{1.0, 2.0}));
  EXPECT_TRUE(cfg.physics.paper_signs);
  EXPECT_EQ(cfg.state.packet, "plane-wave");
  EXPECT_EQ(cfg.state.mode, 3);
  EXPECT_EQ(cfg.state.ref_point, 4u);
  EXPECT_EQ(cfg.entangled.refs, "distinct");
  EXPECT_TRUE(cfg.entangled.dump_tensor);
  EXPECT_EQ(cfg.axiom_scale_pairs, 10u);
  EXPECT_TRUE(cfg.hilbert);
  EXPECT_EQ(cfg.out_dir, "some/dir");
  EXPECT_EQ(cfg.seed, 99u);
  EXPECT_EQ(cfg.tolerance_for("convolution_duality", 1e-10), 1e-9);
  EXPECT_EQ(cfg.tolerance_for("other", 1e-10), 1e-10);
}

TEST(Config, EmptyDocumentKeepsBase) {
  RunConfig base;
  base.seed = 5;
  EXPECT_EQ(parse_config("", base).seed, 5u);
}

TEST(Config, ErrorsNameFieldAndLine) {
  auto e = parse_error("grid:\n  dims: 1\n  bogus: 3\n");
  EXPECT_EQ(e.field(), "grid.bogus");
  EXPECT_EQ(e.line(), 3);

  e = parse_error("seed: 1\nfield:\n  preset: wobble\n");
  EXPECT_EQ(e.field(), "field.preset");
  EXPECT_EQ(e.line(), 3);

  e = parse_error("physics:\n  hbar: -1\n");
  EXPECT_EQ(e.field(), "physics.hbar");
  EXPECT_EQ(e.line(), 2);

  e = parse_error("grid:\n  n: lots\n");
  EXPECT_EQ(e.field(), "grid.n");
  EXPECT_EQ(e.line(), 2);

  e = parse_error("derivative: upwind\n");
  EXPECT_EQ(e.field(), "derivative");
  EXPECT_EQ(e.line(), 1);

  e = parse_error("entangled: {n: 4}\n");
  EXPECT_EQ(e.field(), "entangled.n");

  e = parse_error("field: [1\n");
  EXPECT_EQ(e.field(), "config");
  EXPECT_GT(e.line(), 0);

  EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
}

TEST(Config, GlobalToleranceWins) {
  RunConfig cfg = parse_config("tolerance: 0.5\ntolerances: {a: 1.0e-3}\n");
  EXPECT_EQ(cfg.tolerance_for("a", 1.0), 0.5);
  cfg.tolerance = 0.0;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tolerance = -1.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(Config, MissingFileIsAConfigError) {
  try {
    (void)load_config("/nonexistent/scaleqm.yaml");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "config");
  }
}

TEST(Config, JsonEchoOmitsOutputLocation) {
  RunConfig cfg;
  cfg.out_dir = "/tmp/x";
  const auto j = cfg.to_json();
  EXPECT_FALSE(j.contains("out"));
  EXPECT_EQ(j["field"]["preset"], "sine");
  EXPECT_EQ(j["seed"], 42);
}

}  // namespace
}  // namespace scaleqm::runner
