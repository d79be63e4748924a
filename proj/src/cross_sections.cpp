#include "scatter/cross_sections.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "scatter/errors.hpp"

namespace scatter {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleTolerance = 1e-14;

constexpr std::array<std::pair<Source, std::string_view>, 5> kLabels{{
    {Source::eikonal, "eikonal"},
    {Source::born1, "born1"},
    {Source::born_resummed, "born_resummed"},
    {Source::partial_wave, "partial_wave"},
    {Source::paper_closed, "paper_closed"},
}};

// Three-point derivative of the parabola through (x0,y0), (x1,y1), (x2,y2)
// evaluated at x.
double parabola_slope(double x0, double y0, double x1, double y1, double x2, double y2, double x) {
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double c = (d12 - d01) / (x2 - x0);
  return d01 + c * ((x - x0) + (x - x1));
}

double hermite_integral(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = i == 0 ? 1 : (i == n - 1 ? n - 2 : i);
    d[i] = parabola_slope(x[c - 1], y[c - 1], x[c], y[c], x[c + 1], y[c + 1], x[i]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x[i + 1] - x[i];
    sum += 0.5 * h * (y[i] + y[i + 1]) + h * h * (d[i] - d[i + 1]) / 12.0;
  }
  return sum;
}

}  // namespace

std::string_view to_string(Source s) {
  for (const auto& [src, label] : kLabels)
    if (src == s) return label;
  return "unknown";
}

Source parse_source(std::string_view label) {
  for (const auto& [src, name] : kLabels)
    if (name == label) return src;
  throw ConfigError("unknown source '" + std::string(label) + "'");
}

double differential(const Amplitude& f) { return std::norm(f.value); }

CrossSectionRow make_row(const Amplitude& f) {
  CrossSectionRow row;
  row.theta = f.theta;
  row.q = f.q;
  row.re_f = f.value.real();
  row.im_f = f.value.imag();
  row.dsigma_domega = row.re_f * row.re_f + row.im_f * row.im_f;
  return row;
}

TotalEstimate total_integrated(std::span<const CrossSectionRow> rows, double rel_tol) {
  if (rows.size() < 5) throw DomainError("total_integrated: need at least 5 rows");
  if (!(rel_tol > 0.0)) throw DomainError("total_integrated: rel_tol must be > 0");
  if (std::abs(rows.front().theta) > 1e-12 || std::abs(rows.back().theta - kPi) > 1e-12)
    throw DomainError("total_integrated: rows must span [0, pi]");

  std::vector<double> x(rows.size()), y(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x[i] = rows[i].theta;
    if (i > 0 && !(x[i] > x[i - 1]))
      throw DomainError("total_integrated: theta must be strictly increasing");
    y[i] = rows[i].dsigma_domega * std::sin(x[i]);
  }
  const double full = 2.0 * kPi * hermite_integral(x, y);

  std::vector<double> xh, yh;
  for (std::size_t i = 0; i < x.size(); i += 2) {
    xh.push_back(x[i]);
    yh.push_back(y[i]);
  }
  if (xh.back() != x.back()) {
    xh.push_back(x.back());
    yh.push_back(y.back());
  }
  const double half = 2.0 * kPi * hermite_integral(xh, yh);

  TotalEstimate est{full, std::abs(full - half) / 15.0};
  if (est.error_estimate > rel_tol * std::abs(full) && est.error_estimate > 1e-300)
    throw ConvergenceError("total_integrated: theta grid too sparse for requested tolerance",
                           full, est.error_estimate);
  return est;
}

double total_optical(const Amplitude& f0, double k) {
  if (f0.theta != 0.0) throw DomainError("total_optical: amplitude must be at theta = 0");
  if (!(k > 0.0)) throw DomainError("total_optical: k must be > 0");
  return 4.0 * kPi / k * f0.value.imag();
}

double paper_differential(const PotentialModel& p, const Kinematics& kin, double theta) {
  if (!(theta >= 0.0 && theta <= kPi))
    throw DomainError("paper_differential: theta must lie in [0, pi]");
  const double k = kin.k();
  const double s2 = std::sin(0.5 * theta) * std::sin(0.5 * theta);
  if (const auto* y = std::get_if<Yukawa>(&p)) {
    const double a = y->g() * k / kin.hbar_v();
    const double mu2 = y->mu() * y->mu();
    const double den = mu2 - 4.0 * k * k * s2;
    if (std::abs(den) <= kPoleTolerance * mu2)
      throw PoleError("paper_differential: mu^2 = 4 k^2 sin^2(theta/2)");
    return 4.0 * a * a / (den * den);
  }
  if (const auto* gs = std::get_if<Gauss>(&p)) {
    const double a = gs->g() * k / kin.hbar_v();
    const double al = gs->alpha();
    return kPi / (4.0 * al * al * al) * a * a * std::exp(-k * k * s2 / al);
  }
  throw UnsupportedModelError("paper_differential: only Yukawa and Gauss have printed forms");
}

double paper_totals(const PotentialModel& p, const Kinematics& kin) {
  const double k = kin.k();
  if (const auto* y = std::get_if<Yukawa>(&p)) {
    const double mu2 = y->mu() * y->mu();
    const double den = mu2 - 4.0 * k * k;
    if (std::abs(den) <= kPoleTolerance * mu2) throw PoleError("paper_totals: mu^2 = 4 k^2");
    const double gk = y->g() * k;
    return 16.0 * kPi * gk * gk / (kin.hbar_v() * kin.hbar_v() * mu2 * den);
  }
  if (const auto* gs = std::get_if<Gauss>(&p)) {
    const double al = gs->alpha();
    const double a = gs->g() / kin.hbar_v();
    return kPi * kPi / (2.0 * al * al) * a * a * -std::expm1(-k * k / al);
  }
  throw UnsupportedModelError("paper_totals: only Yukawa and Gauss have printed forms");
}

}  // namespace scatter
