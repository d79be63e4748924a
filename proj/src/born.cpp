#include "scatter/born.hpp"

#include <cmath>
#include <numbers>

#include "scatter/errors.hpp"

namespace scatter {

void BornSettings::validate() const {
  if (lambda_nodes < 4) throw DomainError("BornSettings: lambda_nodes must be >= 4");
  spatial.validate();
}

Amplitude born1_amplitude(const PotentialModel& p, const Kinematics& kin, double theta,
                          const quad::QuadratureSettings& settings, MomentumTransfer transfer) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw DomainError("born1_amplitude: theta must lie in [0, pi]");
  Amplitude a;
  a.theta = theta;
  a.q = momentum_transfer(kin, theta, transfer);
  const double hbar2 = kin.hbar() * kin.hbar();
  a.value = -kin.mass() / (2.0 * std::numbers::pi * hbar2) * fourier3d(p, a.q, settings);
  return a;
}

std::complex<double> lambda_average(double x) {
  // exp(i x / 2) sin(x / 2) / (x / 2)
  const double h = 0.5 * x;
  const double sinc = std::abs(h) < 1e-4 ? 1.0 - h * h / 6.0 : std::sin(h) / h;
  return std::polar(sinc, h);
}

std::complex<double> lambda_average_numeric(double x, int nodes) {
  const auto rule = quad::gauss_legendre_unit(nodes);
  std::complex<double> sum{};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    sum += rule.weights[i] * std::polar(1.0, rule.nodes[i] * x);
  return sum;
}

Amplitude born_resummed_amplitude(const PotentialModel& p, const Kinematics& kin, double theta,
                                  const BornSettings& settings, const EikonalOptions& options) {
  settings.validate();
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw DomainError("born_resummed_amplitude: theta must lie in [0, pi]");
  const double q = momentum_transfer(kin, theta, options.transfer);
  const auto& s = settings.spatial;
  const auto inner = s.nested();
  const quad::ComplexIntegrand integrand = [&](double b) -> std::complex<double> {
    double z = 0.0;
    try {
      z = line_integral(p, b, inner).value;
    } catch (const ConvergenceError& e) {
      // Residual inner error sits below the outer target; keep the estimate.
      z = e.best_estimate().real();
    }
    if (z == 0.0) return {};
    const double x = phase(p, kin, b, inner, options.phase);
    const auto lam = settings.numeric_lambda ? lambda_average_numeric(x, settings.lambda_nodes)
                                             : lambda_average(x);
    return z * lam;
  };
  const double scale = -kin.mass() / (kin.hbar() * kin.hbar());
  quad::ComplexResult r;
  try {
    r = quad::hankel0(integrand, q, s);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), scale * e.best_estimate(), std::abs(scale) * e.error_bound());
  }
  Amplitude a;
  a.theta = theta;
  a.q = q;
  a.value = scale * r.value;
  a.error_estimate = std::abs(scale) * r.error_estimate;
  a.error_target = std::abs(scale) * s.target(std::abs(r.value));
  return a;
}

}  // namespace scatter
