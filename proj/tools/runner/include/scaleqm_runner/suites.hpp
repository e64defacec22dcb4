#pragma once

#include <string>
#include <vector>

#include "scaleqm_runner/config.hpp"
#include "scaleqm_runner/report.hpp"

namespace scaleqm::runner {

// Grid sizes used when the config leaves grid.n unset.
inline constexpr std::size_t kDefaultSingleN = 64;
inline constexpr std::size_t kDefaultSpectrumN = 64;
inline constexpr std::size_t kDefaultMomentumN = 256;
inline constexpr std::size_t kDefaultEntangledN = 32;

[[nodiscard]] SuiteResult run_axioms(const RunConfig& cfg);
[[nodiscard]] SuiteResult run_single(const RunConfig& cfg);
[[nodiscard]] SuiteResult run_spectrum(const RunConfig& cfg);
[[nodiscard]] SuiteResult run_momentum(const RunConfig& cfg);
[[nodiscard]] SuiteResult run_entangled(const RunConfig& cfg);

/// Suites selected by cfg.subcommand; "all" runs every suite in a fixed order.
/// Throws ConfigError for an unknown subcommand.
[[nodiscard]] std::vector<SuiteResult> run_suites(const RunConfig& cfg);

/// Runs the selected suites and writes every report under cfg.out_dir.
/// Returns the results for printing.
std::vector<SuiteResult> run_and_write(const RunConfig& cfg);

}  // namespace scaleqm::runner
