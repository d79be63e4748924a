#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scatter/born.hpp"
#include "scatter/cross_sections.hpp"
#include "scatter/partial_wave.hpp"

namespace scatter::cli {

enum class Spacing { linear, log };

struct PotentialSpec {
  enum class Kind { yukawa, gauss, tabulated };
  Kind kind = Kind::yukawa;
  double g = 0.0;
  double mu = 1.0;
  double alpha = 1.0;
  std::filesystem::path file;  ///< resolved against the config directory
  Interpolation interpolation = Interpolation::pchip;

  PotentialModel build() const;
};

struct ThetaGrid {
  double min = 0.0;
  double max = 1.0;
  int count = 64;
  Spacing spacing = Spacing::linear;

  std::vector<double> values() const;
};

struct ReportSettings {
  /// Pairs compared per theta; empty means every pair of requested sources.
  std::vector<std::pair<Source, Source>> pairs;
  double tolerance = 0.02;
  double theta_max = 0.2;
};

struct RunConfig {
  PotentialSpec potential;
  double mass = 1.0;
  double hbar = 1.0;
  std::vector<double> k{1.0};
  ThetaGrid theta;
  std::vector<Source> sources{Source::eikonal, Source::born1, Source::partial_wave};
  quad::QuadratureSettings quadrature;
  EikonalOptions eikonal;
  BornSettings born;
  PartialWaveSettings partial_wave;
  std::filesystem::path output_directory = "scatter_out";
  bool emit_plot_script = false;
  bool totals = true;
  int total_points = 1025;
  ReportSettings report;
  int threads = 1;

  /// Throws ConfigError naming the field and the violated constraint.
  void validate() const;
};

/// Sectioned key = value text; '#' and ';' start comments. Relative paths
/// are resolved against base_dir. Unknown sections or keys raise ConfigError
/// naming them. Missing keys keep the defaults of RunConfig.
RunConfig parse_config(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text of cfg with every default filled in; parses back to cfg.
std::string to_text(const RunConfig& cfg);

/// Comma or whitespace separated source labels.
std::vector<Source> parse_source_list(std::string_view list);

/// Shortest round-trip decimal form.
std::string format_number(double x);
/// Fixed 17-significant-digit scientific form used in CSV files.
std::string format_csv(double x);

}  // namespace scatter::cli
