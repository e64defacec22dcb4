#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace scaleqm::runner {

struct CheckResult {
  std::string name;
  std::size_t grid_n = 0;
  std::size_t particles = 0;
  std::size_t samples = 0;
  double error = 0.0;
  double tolerance = 0.0;
  /// error <= tolerance with a strictly positive tolerance; NaN errors fail.
  bool pass = false;
};

/// Builds a CheckResult and evaluates `pass`.
[[nodiscard]] CheckResult make_check(std::string name, double error, double tolerance,
                                     std::size_t grid_n = 0, std::size_t particles = 0,
                                     std::size_t samples = 0);

struct Table {
  std::string file;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  std::vector<Table> tables;
  nlohmann::json config;

  [[nodiscard]] bool all_passed() const;
  [[nodiscard]] std::size_t passed() const;
  [[nodiscard]] double max_error() const;
};

/// Fixed-format scientific notation used in every report.
[[nodiscard]] std::string format_number(double v);

/// Writes <suite>_checks.csv, the suite's tables and <suite>_summary.json.
/// Throws std::runtime_error on I/O failure.
void write_suite(const std::filesystem::path& dir, const SuiteResult& result);

/// Writes summary.json listing every suite of a combined run.
void write_run_summary(const std::filesystem::path& dir, const std::vector<SuiteResult>& suites);

/// One line per check, for the terminal.
void print_suite(std::ostream& out, const SuiteResult& result);

}  // namespace scaleqm::runner
