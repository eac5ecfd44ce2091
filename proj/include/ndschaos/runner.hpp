#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ndschaos/config.hpp"
#include "ndschaos/harness.hpp"

namespace ndschaos {

enum ExitCode : int { ExitPass = 0, ExitFailure = 1, ExitConfig = 2, ExitHypothesis = 3 };

struct KatoRow {
  std::string system;
  std::size_t probe = 0;
  Point center;
  double radius = 0.0;
  double max_separation = 0.0;
  bool sensitive = false;
};

struct OrbitRow {
  std::size_t point = 0;
  std::int64_t n = 0;
  Point state;
};

struct LabeledReport {
  std::string label;  // prefixes artifact ids when a run has several reports
  ExperimentReport report;
};

struct RunResult {
  std::vector<LabeledReport> reports;
  std::vector<KatoRow> kato_rows;
  std::vector<OrbitRow> orbit_rows;
};

// Runs the configured experiment. Library errors inside an experiment are
// recorded as a failing check, not thrown.
RunResult execute(const RunConfig& cfg);

int exit_code(const RunConfig& cfg, const RunResult& r);

// Writes config.toml, report.txt, profiles.csv, xi.csv, estimates.csv,
// verdicts.csv, plus kato.csv / orbits.csv / SVG charts when relevant.
// Throws Error(IOError).
void write_outputs(const RunConfig& cfg, const RunResult& r, const std::filesystem::path& dir);

// execute + write_outputs into cfg.output; returns the exit code.
int run(const RunConfig& cfg);

// n values listed in xi.csv: powers of two, window checkpoints, the horizon.
std::vector<std::int64_t> xi_table_ns(const PairDistanceProfile& p, const Window& w);

// Minimal SVG line chart; no external dependencies.
struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};
std::string svg_line_chart(const std::string& title, const std::string& x_label, const std::string& y_label,
                           const std::vector<Series>& series, bool log_x);

}  // namespace ndschaos
