#include "scaleqm_runner/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>

namespace scaleqm::runner {
namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out = open_for_write(path);
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

const char* pass_text(bool pass) { return pass ? "true" : "false"; }

nlohmann::json summary_json(const SuiteResult& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["n_checks"] = r.checks.size();
  j["n_passed"] = r.passed();
  j["max_error"] = r.max_error();
  j["config"] = r.config;
  return j;
}

}  // namespace

CheckResult make_check(std::string name, double error, double tolerance, std::size_t grid_n,
                       std::size_t particles, std::size_t samples) {
  CheckResult c;
  c.name = std::move(name);
  c.error = error;
  c.tolerance = tolerance;
  c.grid_n = grid_n;
  c.particles = particles;
  c.samples = samples;
  c.pass = tolerance > 0.0 && !std::isnan(error) && error <= tolerance;
  return c;
}

bool SuiteResult::all_passed() const { return passed() == checks.size(); }

std::size_t SuiteResult::passed() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; }));
}

double SuiteResult::max_error() const {
  double m = 0.0;
  for (const auto& c : checks) {
    if (std::isnan(c.error)) return c.error;
    m = std::max(m, c.error);
  }
  return m;
}

std::string format_number(double v) { return fmt::format("{:.6e}", v); }

void write_suite(const std::filesystem::path& dir, const SuiteResult& r) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  if (r.suite == "axioms") {
    header = {"check_name", "n_samples", "max_rel_error", "tolerance", "pass"};
    for (const auto& c : r.checks) {
      rows.push_back({c.name, std::to_string(c.samples), format_number(c.error),
                      format_number(c.tolerance), pass_text(c.pass)});
    }
  } else if (r.suite == "entangled") {
    header = {"check_name", "n", "grid_N", "max_abs_error", "pass"};
    for (const auto& c : r.checks) {
      rows.push_back({c.name, std::to_string(c.particles), std::to_string(c.grid_n),
                      format_number(c.error), pass_text(c.pass)});
    }
  } else {
    header = {"check_name", "grid_N", "max_abs_error", "tolerance", "pass"};
    for (const auto& c : r.checks) {
      rows.push_back({c.name, std::to_string(c.grid_n), format_number(c.error),
                      format_number(c.tolerance), pass_text(c.pass)});
    }
  }
  write_csv(dir / (r.suite + "_checks.csv"), header, rows);
  for (const auto& t : r.tables) write_csv(dir / t.file, t.header, t.rows);

  std::ofstream out = open_for_write(dir / (r.suite + "_summary.json"));
  out << summary_json(r).dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing summary for " + r.suite);
}

void write_run_summary(const std::filesystem::path& dir, const std::vector<SuiteResult>& suites) {
  std::filesystem::create_directories(dir);
  nlohmann::json j = nlohmann::json::array();
  for (const auto& s : suites) {
    nlohmann::json entry = summary_json(s);
    entry.erase("config");
    j.push_back(entry);
  }
  nlohmann::json root;
  root["suites"] = j;
  root["config"] = suites.empty() ? nlohmann::json(nullptr) : suites.front().config;
  std::ofstream out = open_for_write(dir / "summary.json");
  out << root.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing summary.json");
}

void print_suite(std::ostream& out, const SuiteResult& r) {
  for (const auto& c : r.checks) {
    out << fmt::format("[{}] {:<4} {:<40} err={} tol={}\n", r.suite, c.pass ? "ok" : "FAIL",
                       c.name, format_number(c.error), format_number(c.tolerance));
  }
  out << fmt::format("[{}] {}/{} checks passed\n", r.suite, r.passed(), r.checks.size());
}

}  // namespace scaleqm::runner
