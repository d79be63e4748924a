#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scatter/comparison.hpp"
#include "scatter/config.hpp"

namespace scatter::cli {

std::string_view version();

struct SourceOutcome {
  Source source = Source::eikonal;
  std::size_t k_index = 0;
  double k = 0.0;
  bool ok = false;
  std::string error;
  double seconds = 0.0;
  std::string csv;  ///< file name inside the output directory, empty on failure
  CrossSectionTable table;
  std::optional<double> total_closed_form;
};

struct PairResult {
  std::size_t k_index = 0;
  Source a = Source::eikonal;
  Source b = Source::partial_wave;
  double max_deviation = 0.0;  ///< over theta <= report.theta_max
  Verdict verdict = Verdict::diverges;
};

struct RunManifest {
  std::string config_echo;
  std::string version;
  double wall_seconds = 0.0;
  std::vector<SourceOutcome> outcomes;  ///< k-major, sources in config order
  std::vector<PairResult> pairs;
  std::vector<FormulaComparison> formulas;
  std::vector<std::string> warnings;
  std::vector<std::string> files;  ///< every emitted file except the manifest

  /// 0 all sources succeeded, 1 all failed, 2 some failed.
  int exit_code() const;
};

/// Evaluates every source at every k, writes the CSV files, summary.csv,
/// report.txt, the optional plot.gp and manifest.txt into
/// cfg.output_directory. Progress lines go to log when given.
RunManifest run_scan(const RunConfig& cfg, std::ostream* log = nullptr);

}  // namespace scatter::cli
