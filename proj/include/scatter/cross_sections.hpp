#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scatter/eikonal.hpp"

namespace scatter {

enum class Source { eikonal, born1, born_resummed, partial_wave, paper_closed };

std::string_view to_string(Source s);
/// Throws ConfigError for an unknown label.
Source parse_source(std::string_view label);

struct CrossSectionRow {
  double theta = 0.0;
  double q = 0.0;
  double re_f = 0.0;
  double im_f = 0.0;
  double dsigma_domega = 0.0;
};

struct CrossSectionTable {
  Source source = Source::eikonal;
  std::vector<CrossSectionRow> rows;
  std::optional<double> total_integrated;
  std::optional<double> total_optical;
};

/// |f|^2.
double differential(const Amplitude& f);

CrossSectionRow make_row(const Amplitude& f);

struct TotalEstimate {
  double value = 0.0;
  /// |I(all rows) - I(every other row)| / 15.
  double error_estimate = 0.0;
};

/// 2 pi int_0^pi |f|^2 sin(theta) dtheta. The integrand is interpolated by
/// piecewise cubic Hermite segments (three-point slopes) and integrated
/// exactly. Rows must be sorted and span [0, pi]; a grid too sparse for
/// rel_tol raises ConvergenceError.
TotalEstimate total_integrated(std::span<const CrossSectionRow> rows, double rel_tol = 1e-6);

/// (4 pi / k) Im f(0). f0.theta must be 0.
double total_optical(const Amplitude& f0, double k);

/// Printed small-angle differential cross sections, eps = 0:
///   Yukawa  4 (g k / hbar v)^2 / (mu^2 - 4 k^2 sin^2(theta/2))^2
///   Gauss   (pi / 4 alpha^3) (g k / hbar v)^2 exp(-k^2 sin^2(theta/2) / alpha)
double paper_differential(const PotentialModel& p, const Kinematics& kin, double theta);

/// Printed total cross sections, eps = 0:
///   Yukawa  16 pi (g k)^2 / ((hbar v)^2 mu^2 (mu^2 - 4 k^2))
///   Gauss   (pi^2 / 2 alpha^2) (g / hbar v)^2 (1 - exp(-k^2 / alpha))
/// Yukawa at mu^2 = 4 k^2 raises PoleError.
double paper_totals(const PotentialModel& p, const Kinematics& kin);

}  // namespace scatter
