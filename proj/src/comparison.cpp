#include "scatter/comparison.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "scatter/born.hpp"
#include "scatter/cross_sections.hpp"
#include "scatter/errors.hpp"
#include "scatter/special_functions.hpp"

namespace scatter {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

using Sample = std::function<double(double)>;

double relative(double value, double reference) {
  if (reference == 0.0) return value == 0.0 ? 0.0 : kInf;
  return std::abs(value - reference) / std::abs(reference);
}

// Max relative deviation of candidate from reference over xs.
double max_deviation(const Sample& candidate, const Sample& reference,
                     const std::vector<double>& xs) {
  double worst = 0.0;
  for (double x : xs) {
    double c = 0.0;
    try {
      c = candidate(x);
    } catch (const PoleError&) {
      return kInf;
    }
    if (!std::isfinite(c)) return kInf;
    worst = std::max(worst, relative(c, reference(x)));
  }
  return worst;
}

FormulaComparison make(std::string name, std::string reference, std::string variant,
                       double literal, double alt, double tol) {
  FormulaComparison c;
  c.name = std::move(name);
  c.reference = std::move(reference);
  c.variant = std::move(variant);
  c.literal_deviation = literal;
  c.variant_deviation = alt;
  c.verdict = classify(literal, alt, tol);
  return c;
}

double born_total(const PotentialModel& p, const Kinematics& kin, int points,
                  const quad::QuadratureSettings& s) {
  std::vector<CrossSectionRow> rows;
  rows.reserve(points);
  for (int i = 0; i < points; ++i) {
    const double th = i == points - 1 ? kPi : kPi * i / (points - 1);
    rows.push_back(make_row(born1_amplitude(p, kin, th, s)));
  }
  return total_integrated(rows).value;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent:
      return "CONSISTENT";
    case Verdict::suspected_typo:
      return "SUSPECTED_TYPO";
    case Verdict::diverges:
      return "DIVERGES";
  }
  return "DIVERGES";
}

Verdict classify(double literal_deviation, double variant_deviation, double tolerance) {
  if (literal_deviation <= tolerance) return Verdict::consistent;
  if (variant_deviation <= tolerance) return Verdict::suspected_typo;
  return Verdict::diverges;
}

std::vector<FormulaComparison> compare_paper_formulas(const ComparisonSettings& cs) {
  if (!(cs.theta_max > 0.0 && cs.theta_max <= kPi) || cs.theta_samples < 2 ||
      cs.total_points < 5 || !(cs.tolerance > 0.0))
    throw DomainError("compare_paper_formulas: invalid settings");

  const Kinematics kin(cs.mass, cs.k, cs.hbar);
  const PotentialModel yukawa = Yukawa(cs.g, cs.mu);
  const PotentialModel gauss = Gauss(cs.g, cs.alpha);
  const double hv = kin.hbar_v();
  const double k = cs.k;
  const double mu2 = cs.mu * cs.mu;
  const double al = cs.alpha;
  const double tol = cs.tolerance;
  const auto& qs = cs.quadrature;

  std::vector<double> thetas(cs.theta_samples);
  for (int i = 0; i < cs.theta_samples; ++i)
    thetas[i] = cs.theta_max * i / (cs.theta_samples - 1);
  const auto& bs = cs.impact_parameters;

  std::vector<FormulaComparison> out;

  // Phases against the line integral of V.
  {
    const Sample reference = [&](double b) { return chi(yukawa, kin, b, qs); };
    const Sample printed = [&](double b) {
      return 2.0 * cs.g / hv * special::bessel_k0(cs.mu * b);
    };
    const Sample flipped = [&](double b) { return -printed(b); };
    out.push_back(make("yukawa_phase", "chi by quadrature", "overall sign flipped",
                       max_deviation(printed, reference, bs),
                       max_deviation(flipped, reference, bs), tol));
  }
  {
    const Sample reference = [&](double b) { return chi(gauss, kin, b, qs); };
    const Sample printed = [&](double b) {
      return cs.g / hv * std::exp(-al * b * b) * std::sqrt(kPi / al);
    };
    const Sample edited = [&](double b) { return -printed(b); };
    out.push_back(make("gauss_phase", "chi by quadrature", "overall sign flipped",
                       max_deviation(printed, reference, bs),
                       max_deviation(edited, reference, bs), tol));
  }

  // Small-angle amplitudes, compared as |f|^2 against the first Born term.
  const Sample born_y = [&](double th) { return differential(born1_amplitude(yukawa, kin, th, qs)); };
  const Sample born_g = [&](double th) { return differential(born1_amplitude(gauss, kin, th, qs)); };
  {
    const Sample printed = [&](double th) {
      return differential(amplitude_paper_closed(yukawa, kin, th));
    };
    const Sample edited = [&](double th) {
      const double f = 2.0 * cs.g * k / hv / (mu2 + k * k * th * th);
      return f * f;
    };
    out.push_back(make("yukawa_amplitude", "|born1|^2", "mu^2 + k^2 theta^2 in the denominator",
                       max_deviation(printed, born_y, thetas),
                       max_deviation(edited, born_y, thetas), tol));
  }
  {
    const Sample printed = [&](double th) { return paper_differential(yukawa, kin, th); };
    const Sample edited = [&](double th) {
      const double s = std::sin(0.5 * th);
      const double den = mu2 + 4.0 * k * k * s * s;
      const double a = cs.g * k / hv;
      return 4.0 * a * a / (den * den);
    };
    const double lit = max_deviation(printed, born_y, thetas);
    const double alt = max_deviation(edited, born_y, thetas);
    out.push_back(make("yukawa_differential", "|born1|^2",
                       "mu^2 + 4 k^2 sin^2(theta/2) in the denominator", lit, alt, tol));
    out.push_back(make("yukawa_differential_standard_sign", "|born1|^2", "none", alt, alt, tol));
  }
  {
    const Sample printed = [&](double th) {
      return differential(amplitude_paper_closed(gauss, kin, th));
    };
    const Sample edited = [&](double th) {
      const double f =
          0.5 / al * std::sqrt(kPi / al) * cs.g * k / hv * std::exp(-k * k * th * th / (4.0 * al));
      return f * f;
    };
    out.push_back(make("gauss_amplitude", "|born1|^2", "exponent -k^2 theta^2 / (4 alpha)",
                       max_deviation(printed, born_g, thetas),
                       max_deviation(edited, born_g, thetas), tol));
  }
  {
    const Sample printed = [&](double th) { return paper_differential(gauss, kin, th); };
    const Sample edited = [&](double th) {
      const double s = std::sin(0.5 * th);
      const double a = cs.g * k / hv;
      return kPi / (4.0 * al * al * al) * a * a * std::exp(-2.0 * k * k * s * s / al);
    };
    out.push_back(make("gauss_differential", "|born1|^2", "exponent doubled",
                       max_deviation(printed, born_g, thetas),
                       max_deviation(edited, born_g, thetas), tol));
  }

  // Totals.
  {
    const double reference = born_total(yukawa, kin, cs.total_points, qs);
    double lit = kInf;
    double printed = 0.0;
    try {
      printed = paper_totals(yukawa, kin);
      lit = relative(printed, reference);
    } catch (const PoleError&) {
    }
    const double gk = cs.g * k;
    const double edited = 16.0 * kPi * gk * gk / (hv * hv * mu2 * (mu2 + 4.0 * k * k));
    auto row = make("yukawa_total", "2 pi int |born1|^2 sin(theta) dtheta",
                    "mu^2 + 4 k^2 in the denominator", lit, relative(edited, reference), tol);
    if (printed != 0.0) row.ratio = reference / printed;
    out.push_back(std::move(row));
  }
  {
    std::vector<CrossSectionRow> rows;
    rows.reserve(cs.total_points);
    for (int i = 0; i < cs.total_points; ++i) {
      CrossSectionRow r;
      r.theta = i == cs.total_points - 1 ? kPi : kPi * i / (cs.total_points - 1);
      r.dsigma_domega = paper_differential(gauss, kin, r.theta);
      rows.push_back(r);
    }
    const double reference = total_integrated(rows).value;
    const double printed = paper_totals(gauss, kin);
    auto row = make("gauss_total", "2 pi int (printed differential) sin(theta) dtheta",
                    "factor 2", relative(printed, reference), relative(2.0 * printed, reference),
                    tol);
    row.ratio = reference / printed;
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace scatter
