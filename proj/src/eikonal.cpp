#include "scatter/eikonal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "scatter/errors.hpp"
#include "scatter/special_functions.hpp"

namespace scatter {

namespace {

constexpr double kPi = std::numbers::pi;

void require_angle(double theta, const char* fn) {
  if (!(theta >= 0.0 && theta <= kPi))
    throw DomainError(std::string(fn) + ": theta must lie in [0, pi]");
}

bool has_closed_phase(const PotentialModel& p) {
  return !std::holds_alternative<TabulatedRadial>(p);
}

}  // namespace

std::complex<double> expm1i(double x) {
  const double s = std::sin(0.5 * x);
  return {-2.0 * s * s, std::sin(x)};
}

double momentum_transfer(const Kinematics& kin, double theta, MomentumTransfer mode) {
  return mode == MomentumTransfer::exact ? 2.0 * kin.k() * std::sin(0.5 * theta)
                                         : kin.k() * theta;
}

quad::RealResult line_integral(const PotentialModel& p, double b,
                               const quad::QuadratureSettings& settings) {
  if (!(b >= 0.0)) throw DomainError("line_integral: b must be >= 0");
  if (std::holds_alternative<Yukawa>(p) && b == 0.0)
    throw SingularityError("line_integral: Yukawa line integral diverges at b = 0");
  const double b2 = b * b;
  auto along = [&](double z) { return evaluate(p, std::sqrt(b2 + z * z)); };

  quad::RealResult half;
  if (const auto* t = std::get_if<TabulatedRadial>(&p)) {
    const double R = t->last_radius();
    if (b >= R) return {};
    // Split at the z where the line crosses each table knot.
    std::vector<double> cuts{0.0};
    for (double r : t->radii())
      if (r > b) cuts.push_back(std::sqrt(r * r - b2));
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (!(cuts[i + 1] > cuts[i])) continue;
      const auto part = quad::integrate_adaptive(along, cuts[i], cuts[i + 1], settings);
      half.value += part.value;
      half.error_estimate += part.error_estimate;
      half.evaluations += part.evaluations;
    }
  } else {
    half = quad::integrate_semi_infinite(along, settings);
  }
  return {2.0 * half.value, 2.0 * half.error_estimate, half.evaluations};
}

double chi(const PotentialModel& p, const Kinematics& kin, double b,
           const quad::QuadratureSettings& settings) {
  return -line_integral(p, b, settings).value / kin.hbar_v();
}

double chi_closed(const PotentialModel& p, const Kinematics& kin, double b) {
  if (!(b >= 0.0)) throw DomainError("chi_closed: b must be >= 0");
  if (const auto* y = std::get_if<Yukawa>(&p)) {
    if (b == 0.0) throw SingularityError("chi_closed: Yukawa phase diverges at b = 0");
    if (y->g() == 0.0) return 0.0;
    return -2.0 * y->g() / kin.hbar_v() * special::bessel_k0(y->mu() * b);
  }
  if (const auto* g = std::get_if<Gauss>(&p)) {
    return -g->g() / kin.hbar_v() * std::sqrt(kPi / g->alpha()) *
           std::exp(-g->alpha() * b * b);
  }
  throw UnsupportedModelError("chi_closed: no closed form for tabulated potentials");
}

double phase(const PotentialModel& p, const Kinematics& kin, double b,
             const quad::QuadratureSettings& settings, PhaseMethod method) {
  if (method == PhaseMethod::closed_form_when_available && has_closed_phase(p))
    return chi_closed(p, kin, b);
  return chi(p, kin, b, settings);
}

PhaseProfile sample_phase(const PotentialModel& p, const Kinematics& kin,
                          std::span<const double> b_grid,
                          const quad::QuadratureSettings& settings, PhaseMethod method) {
  PhaseProfile profile;
  profile.provenance = method == PhaseMethod::closed_form_when_available && has_closed_phase(p)
                           ? PhaseProfile::Provenance::closed_form
                           : PhaseProfile::Provenance::quadrature;
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    if (!(b_grid[i] >= 0.0) || (i > 0 && !(b_grid[i] > b_grid[i - 1])))
      throw DomainError("sample_phase: b grid must be strictly increasing and >= 0");
  }
  profile.b_grid.assign(b_grid.begin(), b_grid.end());
  profile.chi.reserve(b_grid.size());
  for (double b : b_grid) profile.chi.push_back(phase(p, kin, b, settings, method));
  return profile;
}

Amplitude amplitude_eikonal(const PotentialModel& p, const Kinematics& kin, double theta,
                            const quad::QuadratureSettings& settings,
                            const EikonalOptions& options) {
  require_angle(theta, "amplitude_eikonal");
  const double q = momentum_transfer(kin, theta, options.transfer);
  const auto inner = settings.nested();
  const quad::ComplexIntegrand profile = [&](double b) {
    return expm1i(phase(p, kin, b, inner, options.phase));
  };
  const std::complex<double> prefactor{0.0, -kin.k()};
  quad::ComplexResult r;
  try {
    r = quad::hankel0(profile, q, settings);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), prefactor * e.best_estimate(), kin.k() * e.error_bound());
  }
  Amplitude a;
  a.theta = theta;
  a.q = q;
  a.value = prefactor * r.value;
  a.error_estimate = kin.k() * r.error_estimate;
  a.error_target = kin.k() * settings.target(std::abs(r.value));
  return a;
}

Amplitude amplitude_paper_closed(const PotentialModel& p, const Kinematics& kin, double theta) {
  require_angle(theta, "amplitude_paper_closed");
  Amplitude a;
  a.theta = theta;
  a.q = momentum_transfer(kin, theta);
  const double kt = kin.k() * theta;
  if (const auto* y = std::get_if<Yukawa>(&p)) {
    const double mu2 = y->mu() * y->mu();
    const double denom = mu2 - kt * kt;
    if (std::abs(denom) <= 1e-14 * mu2)
      throw PoleError("amplitude_paper_closed: Yukawa form is singular at k theta = mu");
    a.value = 2.0 * y->g() * kin.k() / kin.hbar_v() / denom;
    return a;
  }
  if (const auto* g = std::get_if<Gauss>(&p)) {
    const double alpha = g->alpha();
    a.value = 1.0 / (2.0 * alpha) * std::sqrt(kPi / alpha) * g->g() * kin.k() / kin.hbar_v() *
              std::exp(-kt * kt / (8.0 * alpha));
    return a;
  }
  throw UnsupportedModelError("amplitude_paper_closed: only Yukawa and Gauss have closed forms");
}

}  // namespace scatter
