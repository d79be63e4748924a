#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "scatter/errors.hpp"
#include "scatter/partial_wave.hpp"

using namespace scatter;
using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

TEST_CASE("free particle has no phase shifts") {
  const Kinematics kin(1.0, 2.0);
  const auto ps = phase_shifts(Gauss(0, 1), kin, 20, 6.0, 1e-3);
  for (double d : ps.delta) CHECK(std::abs(d) < 1e-9);
  CHECK(std::abs(amplitude_partial_wave(ps, 0.3).value) < 1e-8);
}

TEST_CASE("attractive square well s-wave") {
  // tan d0 = [k tan(Ka) - K tan(ka)] / [K + k tan(ka) tan(Ka)], K = sqrt(k^2 + 2 m V0 / hbar^2)
  const double V0 = 1, a = 1, k = 1, m = 1;
  const double K = std::sqrt(k * k + 2 * m * V0);
  const double t = (k * std::tan(K * a) - K * std::tan(k * a)) / (K + k * std::tan(k * a) * std::tan(K * a));
  const PotentialModel well = TabulatedRadial({0, a, a + 1e-12, 3}, {-V0, -V0, 0, 0}, Interpolation::linear);
  // The jump sits midway between grid nodes, where its error is second order.
  const auto ps = phase_shifts(well, Kinematics(m, k), 0, 4.0, 1.0 / 5000.5);
  CHECK(std::tan(ps.delta[0]) == doctest::Approx(t).epsilon(1e-5));
}

TEST_CASE("weak Yukawa follows the Born phase-shift integral") {
  // d_l ~ -(2 m k / hbar^2) int V(r) j_l(kr)^2 r^2 dr, integrated here by Simpson.
  const double g = 0.01, k = 2.0;
  const auto ps = phase_shifts(Yukawa(g, 1.0), Kinematics(1.0, k), PartialWaveSettings{});
  for (int l = 0; l <= 6; ++l) {
    const int n = 200000;
    const double R = 50.0, h = R / n;
    double s = 0.0;
    for (int i = 1; i <= n; ++i) {
      const double r = i * h;
      const double jl = std::sph_bessel(l, k * r);
      s += (i == n ? 1.0 : (i % 2 ? 4.0 : 2.0)) * g * r * std::exp(-r) * jl * jl;
    }
    const double born = -2.0 * k * s * h / 3.0;
    CHECK_MESSAGE(std::abs(ps.delta[l] - born) < 0.01 * std::abs(born), "l = " << l);
  }
}

TEST_CASE("optical theorem holds for the partial-wave sum") {
  for (const PotentialModel& p : {PotentialModel(Yukawa(0.5, 1)), PotentialModel(Gauss(-2, 1))}) {
    const Kinematics kin(1.0, 3.0);
    const auto ps = phase_shifts(p, kin, PartialWaveSettings{});
    const double optical = 4 * kPi / kin.k() * amplitude_partial_wave(ps, 0.0).value.imag();
    CHECK(std::abs(partial_wave_total(ps) - optical) <= 1e-10 * optical);
    CHECK(std::abs(ps.delta[ps.l_max]) < 1e-8);
  }
}

TEST_CASE("phase shifts converge in dr and r_max") {
  for (const PotentialModel& p : {PotentialModel(Yukawa(0.5, 1)), PotentialModel(Gauss(0.5, 1))}) {
    const Kinematics kin(1.0, 5.0);
    const double r = default_r_max(p, kin);
    const double dr = default_dr(kin);
    const int l = default_l_max(p, kin) + 20;
    const auto base = phase_shifts(p, kin, l, r, dr);
    const auto fine = phase_shifts(p, kin, l, r, dr / 2);
    const auto far = phase_shifts(p, kin, l, 1.5 * r, dr);
    for (int i = 0; i <= l; ++i) {
      CHECK(std::abs(base.delta[i] - fine.delta[i]) < 1e-8);
      CHECK(std::abs(base.delta[i] - far.delta[i]) < 1e-8);
    }
  }
}

TEST_CASE("sign of the s-wave shift follows the sign of the potential") {
  const Kinematics slow(1.0, 0.3);
  CHECK(phase_shifts(Yukawa(-0.2, 1), slow, PartialWaveSettings{}).delta[0] > 0.0);
  CHECK(phase_shifts(Yukawa(0.2, 1), slow, PartialWaveSettings{}).delta[0] < 0.0);
  CHECK(phase_shifts(Gauss(-0.2, 1), slow, PartialWaveSettings{}).delta[0] > 0.0);
  CHECK(phase_shifts(Gauss(0.2, 1), slow, PartialWaveSettings{}).delta[0] < 0.0);
}

TEST_CASE("amplitude assembly") {
  PhaseShiftSet ps;
  ps.k = 2.0;
  ps.l_max = 3;
  ps.delta = {0, 0, 0, 0};
  CHECK(amplitude_partial_wave(ps, 0.4).value == C{});
  ps.delta[0] = kPi / 2;
  const auto f = amplitude_partial_wave(ps, 1.1);
  CHECK(std::abs(f.value - C(0, 0.5)) < 1e-15);
  CHECK(partial_wave_total(ps) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(f.q == doctest::Approx(4 * std::sin(0.55)).epsilon(1e-15));
  ps.delta.pop_back();
  CHECK_THROWS_AS(amplitude_partial_wave(ps, 0.1), DomainError);
}

TEST_CASE("grid checks") {
  const Kinematics kin(1.0, 10.0);
  CHECK_THROWS_AS(phase_shifts(Gauss(1, 1), kin, 5, 8.0, 0.02), DomainError);
  CHECK_THROWS_AS(phase_shifts(Yukawa(1, 1), kin, 5, 3.0, 1e-3), RangeError);
  CHECK(default_dr(Kinematics(1, 0.5)) == 0.002);
  CHECK(default_dr(kin) == doctest::Approx(2e-4));
}

TEST_CASE("thread count does not change the shifts") {
  const Kinematics kin(1.0, 10.0);
  PartialWaveSettings one, four;
  four.threads = 4;
  const auto a = phase_shifts(Yukawa(0.5, 1), kin, one);
  const auto b = phase_shifts(Yukawa(0.5, 1), kin, four);
  CHECK(a.l_max == b.l_max);
  CHECK(a.delta == b.delta);
}
