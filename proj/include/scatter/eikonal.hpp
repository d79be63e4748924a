#pragma once

#include <complex>
#include <span>
#include <vector>

#include "scatter/kinematics.hpp"
#include "scatter/potentials.hpp"
#include "scatter/quadrature.hpp"

namespace scatter {

enum class MomentumTransfer {
  exact,        ///< q = 2 k sin(theta / 2)
  small_angle,  ///< q = k theta, the form that appears under J0 in the closed formulas
};

enum class PhaseMethod {
  closed_form_when_available,  ///< K0 / Gaussian forms for Yukawa, Gauss
  quadrature,                  ///< always integrate V along the line
};

struct EikonalOptions {
  MomentumTransfer transfer = MomentumTransfer::exact;
  PhaseMethod phase = PhaseMethod::closed_form_when_available;
};

/// Complex scattering amplitude f(theta), in length units.
struct Amplitude {
  double theta = 0.0;
  double q = 0.0;
  std::complex<double> value{};
  /// Absolute quadrature error bound on value (0 for closed forms).
  double error_estimate = 0.0;
  /// Tolerance the producing quadrature aimed for.
  double error_target = 0.0;
};

struct PhaseProfile {
  enum class Provenance { closed_form, quadrature };
  std::vector<double> b_grid;
  std::vector<double> chi;
  Provenance provenance = Provenance::quadrature;
};

double momentum_transfer(const Kinematics& kin, double theta,
                         MomentumTransfer mode = MomentumTransfer::exact);

/// Line integral int_{-inf}^{inf} V(sqrt(b^2 + z^2)) dz by quadrature (twice
/// the half line). Diverges logarithmically for Yukawa at b = 0, which raises
/// SingularityError.
quad::RealResult line_integral(const PotentialModel& p, double b,
                               const quad::QuadratureSettings& settings = {});

/// Eikonal phase chi(b) = -(1 / (hbar v)) int V dz, by quadrature.
double chi(const PotentialModel& p, const Kinematics& kin, double b,
           const quad::QuadratureSettings& settings = {});

/// Closed-form phase: -(2g / hbar v) K0(mu b) for Yukawa,
/// -(g / hbar v) sqrt(pi / alpha) exp(-alpha b^2) for Gauss.
double chi_closed(const PotentialModel& p, const Kinematics& kin, double b);

/// chi through the method chosen in options.
double phase(const PotentialModel& p, const Kinematics& kin, double b,
             const quad::QuadratureSettings& settings, PhaseMethod method);

/// Samples chi on a strictly increasing impact-parameter grid.
PhaseProfile sample_phase(const PotentialModel& p, const Kinematics& kin,
                          std::span<const double> b_grid,
                          const quad::QuadratureSettings& settings = {},
                          PhaseMethod method = PhaseMethod::closed_form_when_available);

/// Glauber amplitude f = -i k int_0^inf J0(q b) (exp(i chi(b)) - 1) b db, the
/// impact-parameter form (k / 2 pi i) int d^2b exp(i q.b) (exp(i chi) - 1)
/// after the azimuthal integral. Accepts theta in [0, pi].
Amplitude amplitude_eikonal(const PotentialModel& p, const Kinematics& kin, double theta,
                            const quad::QuadratureSettings& settings = {},
                            const EikonalOptions& options = {});

/// The closed small-angle amplitudes printed for the Yukawa and Gauss
/// potentials, with every (1 + i eps) factor at eps = 0:
///   Yukawa  (2 g k / hbar v) / (mu^2 - k^2 theta^2)
///   Gauss   (1 / 2 alpha) sqrt(pi / alpha) (g k / hbar v) exp(-k^2 theta^2 / 8 alpha)
/// Kept for comparison reports only. Yukawa at k theta = mu raises PoleError.
Amplitude amplitude_paper_closed(const PotentialModel& p, const Kinematics& kin, double theta);

/// exp(i x) - 1 without cancellation for small x.
std::complex<double> expm1i(double x);

}  // namespace scatter
