#pragma once

#include <complex>

#include "scatter/eikonal.hpp"

namespace scatter {

struct BornSettings {
  /// Gauss-Legendre order for the numeric lambda integral (cross-check mode).
  int lambda_nodes = 16;
  /// Integrate lambda numerically instead of (exp(i chi) - 1) / (i chi).
  bool numeric_lambda = false;
  quad::QuadratureSettings spatial{};

  void validate() const;
};

/// First Born amplitude f_B(q) = -(m / (2 pi hbar^2)) V~(q), with V~ from
/// fourier3d and q = 2 k sin(theta / 2).
Amplitude born1_amplitude(const PotentialModel& p, const Kinematics& kin, double theta,
                          const quad::QuadratureSettings& settings = {},
                          MomentumTransfer transfer = MomentumTransfer::exact);

/// int_0^1 exp(i lambda x) d lambda = (exp(i x) - 1) / (i x), equal to 1 at x = 0.
std::complex<double> lambda_average(double x);

/// Same integral by an n-point Gauss-Legendre rule.
std::complex<double> lambda_average_numeric(double x, int nodes);

/// Born series resummed on linearised propagators, restricted to the
/// small-angle geometry (k' direction = k direction, q transverse):
///   f = -(m / hbar^2) int_0^inf J0(q b) Z(b) Lambda(chi(b)) b db,
/// with Z(b) the line integral of V at impact parameter b (by quadrature) and
/// Lambda the lambda average of exp(i lambda chi).
Amplitude born_resummed_amplitude(const PotentialModel& p, const Kinematics& kin, double theta,
                                  const BornSettings& settings = {},
                                  const EikonalOptions& options = {});

}  // namespace scatter
