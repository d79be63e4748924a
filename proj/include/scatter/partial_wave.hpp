#pragma once

#include <optional>
#include <vector>

#include "scatter/eikonal.hpp"

namespace scatter {

struct PhaseShiftSet {
  double k = 0.0;
  int l_max = 0;
  std::vector<double> delta;  ///< delta_l in (-pi/2, pi/2], l = 0 .. l_max
  double r_max = 0.0;         ///< inner matching radius actually used
  double dr = 0.0;
};

/// Controls for the automatic choices. Unset fields are derived:
///   l_max  ceil(k r_eff) + 10, r_eff enclosing 99.99% of int |V| r^2 dr,
///          then extended in steps of 10 until |delta_lmax| < tail_tolerance;
///   r_max  radius where 2 m |V| / (hbar k)^2 < 1e-12;
///   dr     min(0.002 / k, 0.002).
struct PartialWaveSettings {
  std::optional<int> l_max;
  std::optional<double> r_max;
  std::optional<double> dr;
  double tail_tolerance = 1e-8;
  int l_cap = 3000;
  int threads = 1;
};

/// Regular solutions of u'' = [l(l+1)/r^2 + 2mV/hbar^2 - k^2] u by Numerov,
/// matched to kr [cos(delta) j_l(kr) - sin(delta) n_l(kr)] at r_max and a
/// quarter wavelength beyond. Requires k dr < 0.1 and a decayed potential at
/// r_max (RangeError otherwise).
PhaseShiftSet phase_shifts(const PotentialModel& p, const Kinematics& kin, int l_max,
                           double r_max, double dr, int threads = 1);

/// phase_shifts with the automatic choices described on PartialWaveSettings.
PhaseShiftSet phase_shifts(const PotentialModel& p, const Kinematics& kin,
                           const PartialWaveSettings& settings);

int default_l_max(const PotentialModel& p, const Kinematics& kin);
double default_r_max(const PotentialModel& p, const Kinematics& kin);
double default_dr(const Kinematics& kin);

/// f(theta) = (1 / 2ik) sum (2l+1)(exp(2i delta_l) - 1) P_l(cos theta).
Amplitude amplitude_partial_wave(const PhaseShiftSet& ps, double theta);

/// 4 pi / k^2 sum (2l+1) sin^2(delta_l).
double partial_wave_total(const PhaseShiftSet& ps);

}  // namespace scatter
