#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scatter/quadrature.hpp"

namespace scatter {

enum class Verdict { consistent, suspected_typo, diverges };

/// "CONSISTENT", "SUSPECTED_TYPO", "DIVERGES".
std::string_view to_string(Verdict v);

/// consistent when the printed form is within tolerance, suspected_typo when
/// only the named edit is, diverges otherwise.
Verdict classify(double literal_deviation, double variant_deviation, double tolerance);

struct FormulaComparison {
  std::string name;
  std::string reference;  ///< what the printed form is measured against
  std::string variant;    ///< the single edit tried when the literal form fails
  double literal_deviation = 0.0;  ///< max relative deviation over the samples
  double variant_deviation = 0.0;
  /// reference / literal, for rows where that ratio is constant.
  std::optional<double> ratio;
  Verdict verdict = Verdict::diverges;
};

/// Weak-coupling benchmark the printed closed forms are checked at.
struct ComparisonSettings {
  double g = 0.01;
  double mu = 1.0;
  double alpha = 1.0;
  double mass = 1.0;
  double k = 5.0;
  double hbar = 1.0;
  double theta_max = 0.2;
  int theta_samples = 41;
  /// Uniform grid on [0, pi] for integrated totals.
  int total_points = 2049;
  std::vector<double> impact_parameters{0.25, 0.5, 1.0, 2.0, 4.0};
  double tolerance = 0.01;
  quad::QuadratureSettings quadrature{};
};

/// Every printed phase, amplitude, differential and total cross section for
/// the Yukawa and Gauss potentials, each against its oracle. Pole hits count
/// as infinite deviation.
std::vector<FormulaComparison> compare_paper_formulas(const ComparisonSettings& settings = {});

}  // namespace scatter
