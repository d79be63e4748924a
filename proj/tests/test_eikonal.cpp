#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "scatter/born.hpp"
#include "scatter/errors.hpp"
#include "scatter/special_functions.hpp"

using namespace scatter;
using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;

namespace {

bool close(C a, C b, double rel) { return std::abs(a - b) <= rel * std::abs(b); }

// Romberg-refined trapezoid of h(b) on [0, B], h(0) = 0.
template <typename F>
C romberg(const F& h, double B, int n) {
  auto trap = [&](int m) {
    const double step = B / m;
    C s = 0.5 * h(B);
    for (int i = 1; i < m; ++i) s += h(i * step);
    return s * step;
  };
  const C t1 = trap(n), t2 = trap(2 * n), t3 = trap(4 * n);
  const C r1 = (4.0 * t2 - t1) / 3.0, r2 = (4.0 * t3 - t2) / 3.0;
  return (16.0 * r2 - r1) / 15.0;
}

}  // namespace

TEST_CASE("kinematics") {
  const Kinematics kin(2.0, 3.0, 0.5);
  CHECK(kin.velocity() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(kin.energy() == doctest::Approx(0.5625).epsilon(1e-15));
  CHECK(kin.hbar_v() == doctest::Approx(0.375).epsilon(1e-15));
  CHECK_THROWS_AS(Kinematics(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(Kinematics(1.0, -1.0), DomainError);
  CHECK(momentum_transfer(kin, 0.4) == doctest::Approx(6 * std::sin(0.2)).epsilon(1e-15));
  CHECK(momentum_transfer(kin, 0.4, MomentumTransfer::small_angle) == doctest::Approx(1.2));
}

TEST_CASE("phase by quadrature matches the closed forms") {
  const Kinematics kin(1.0, 2.0);
  const PotentialModel y = Yukawa(0.7, 1.5);
  const PotentialModel g = Gauss(-0.4, 0.8);
  for (double s : {0.1, 0.5, 1.0, 2.0, 5.0}) {
    const double by = s / 1.5, bg = s / std::sqrt(0.8);
    CHECK(std::abs(chi(y, kin, by) - chi_closed(y, kin, by)) <= 1e-8 * std::abs(chi_closed(y, kin, by)));
    CHECK(std::abs(chi(g, kin, bg) - chi_closed(g, kin, bg)) <= 1e-8 * std::abs(chi_closed(g, kin, bg)));
  }
  const Kinematics unit(1.0, 1.0);
  CHECK(chi(Gauss(1, 1), unit, 0.0) == doctest::Approx(-std::sqrt(kPi)).epsilon(1e-12));
  CHECK(chi_closed(Yukawa(1, 1), unit, 1.0) == doctest::Approx(-2 * special::bessel_k0(1.0)).epsilon(1e-15));
  CHECK(chi_closed(Gauss(1, 1), unit, 1.0) == doctest::Approx(-std::sqrt(kPi) * std::exp(-1.0)).epsilon(1e-15));
  CHECK(std::abs(chi_closed(y, kin, 20 / 1.5)) < 1e-8 * std::abs(chi_closed(y, kin, 1 / 1.5)));
  CHECK(chi(Gauss(0, 1), unit, 0.3) == 0.0);
  CHECK_THROWS_AS(chi(Yukawa(1, 1), unit, 0.0), SingularityError);
  CHECK_THROWS_AS(chi_closed(Yukawa(1, 1), unit, 0.0), SingularityError);
  CHECK_THROWS_AS(chi_closed(TabulatedRadial({0, 1, 2}, {1, 0.5, 0}), unit, 1.0), UnsupportedModelError);
}

TEST_CASE("line integral of a tabulated well") {
  // Square well of depth 1 and radius 1: int V dz = -2 sqrt(1 - b^2).
  const PotentialModel well = TabulatedRadial({0, 1, 1 + 1e-9, 2}, {-1, -1, 0, 0}, Interpolation::linear);
  for (double b : {0.0, 0.3, 0.8, 0.99}) {
    CHECK(line_integral(well, b).value == doctest::Approx(-2 * std::sqrt(1 - b * b)).epsilon(1e-7));
  }
  CHECK(line_integral(well, 1.5).value == 0.0);
}

TEST_CASE("phase profiles") {
  const Kinematics kin(1.0, 1.0);
  std::vector<double> grid{0.1, 0.5, 1.0, 3.0, 8.0};
  const auto p = sample_phase(Gauss(1, 1), kin, grid);
  CHECK(p.provenance == PhaseProfile::Provenance::closed_form);
  CHECK(std::abs(p.chi.back()) < 1e-8);
  const auto q = sample_phase(Gauss(1, 1), kin, grid, {}, PhaseMethod::quadrature);
  CHECK(q.provenance == PhaseProfile::Provenance::quadrature);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(p.chi[i] - q.chi[i]) < 1e-12);
  std::vector<double> bad{0.5, 0.2};
  CHECK_THROWS_AS(sample_phase(Gauss(1, 1), kin, bad), DomainError);
}

TEST_CASE("zero potential scatters nothing") {
  const Kinematics kin(1.0, 3.0);
  for (double th : {0.0, 0.3, 2.0}) {
    CHECK(amplitude_eikonal(Gauss(0, 1), kin, th).value == C{});
    CHECK(amplitude_eikonal(Yukawa(0, 1), kin, th).value == C{});
  }
}

TEST_CASE("weak coupling follows the first Born term") {
  const Kinematics kin(1.0, 5.0);
  const PotentialModel y = Yukawa(0.01, 1.0);
  const auto e = amplitude_eikonal(y, kin, 0.1);
  const auto b = born1_amplitude(y, kin, 0.1);
  CHECK(std::abs(e.value - b.value) < 0.01 * std::abs(b.value));
  CHECK(e.q == doctest::Approx(10 * std::sin(0.05)).epsilon(1e-15));
}

TEST_CASE("forward amplitude against a trapezoid oracle") {
  const Kinematics kin(1.0, 5.0);
  const PotentialModel g = Gauss(0.01, 1.0);
  const auto e = amplitude_eikonal(g, kin, 0.0);
  const C oracle = C(0, -5.0) * romberg([&](double b) { return expm1i(chi_closed(g, kin, b)) * b; }, 9.0, 2000);
  CHECK(std::abs(e.value - oracle) < 1e-8 * std::abs(oracle));
}

TEST_CASE("Yukawa amplitude at finite q against a trapezoid oracle") {
  const Kinematics kin(1.0, 2.0);
  const PotentialModel y = Yukawa(0.3, 1.0);
  const double theta = 2 * std::asin(0.25);  // q = 1
  const auto e = amplitude_eikonal(y, kin, theta);
  // b = t^2 removes the b ln b behaviour at the origin.
  auto h = [&](double t) {
    if (t == 0.0) return C{};
    const double b = t * t;
    return expm1i(chi_closed(y, kin, b)) * std::cyl_bessel_j(0.0, b) * b * 2.0 * t;
  };
  const C oracle = C(0, -2.0) * romberg(h, 6.0, 6000);
  CHECK(std::abs(e.value - oracle) < 1e-8 * std::abs(oracle));
}

TEST_CASE("forward imaginary part is non-negative") {
  const Kinematics kin(1.0, 4.0);
  for (const PotentialModel& p : {PotentialModel(Yukawa(0.5, 1)), PotentialModel(Yukawa(-2, 1)),
                                  PotentialModel(Gauss(3, 1)), PotentialModel(Gauss(-1, 0.2))}) {
    CHECK(amplitude_eikonal(p, kin, 0.0).value.imag() >= 0.0);
  }
}

TEST_CASE("amplitude depends on g and v only through g / hbar v") {
  const PotentialModel a = Yukawa(0.4, 1.0), b = Yukawa(0.2, 1.0);
  const Kinematics ka(1.0, 6.0), kb(2.0, 6.0);  // doubling m halves hbar v
  for (double th : {0.0, 0.05, 0.3}) {
    CHECK(close(amplitude_eikonal(a, ka, th).value, amplitude_eikonal(b, kb, th).value, 1e-10));
  }
  const PotentialModel g1 = Gauss(0.4, 1.0), g2 = Gauss(0.8, 1.0);
  const Kinematics k1(1.0, 3.0, 1.0), k2(1.0, 3.0, std::sqrt(2.0));  // hbar^2 doubles
  CHECK(close(amplitude_eikonal(g1, k1, 0.2).value, amplitude_eikonal(g2, k2, 0.2).value, 1e-10));
}

TEST_CASE("quadrature phases give the same amplitude") {
  const Kinematics kin(1.0, 4.0);
  EikonalOptions opt;
  opt.phase = PhaseMethod::quadrature;
  const PotentialModel g = Gauss(0.5, 1.0);
  CHECK(close(amplitude_eikonal(g, kin, 0.1, {}, opt).value, amplitude_eikonal(g, kin, 0.1).value, 1e-9));
}

TEST_CASE("printed closed forms") {
  const Kinematics kin(1.0, 2.0);
  const double hv = kin.hbar_v();
  const auto gz = amplitude_paper_closed(Gauss(0.3, 0.5), kin, 0.0);
  const double g0 = 0.5 / 0.5 * std::sqrt(kPi / 0.5) * 0.3 * 2.0 / hv;
  CHECK(gz.value.real() == doctest::Approx(g0).epsilon(1e-15));
  const double th = std::sqrt(8 * 0.5 * std::log(2.0)) / 2.0;
  CHECK(amplitude_paper_closed(Gauss(0.3, 0.5), kin, th).value.real() == doctest::Approx(g0 / 2).epsilon(1e-14));
  const auto yz = amplitude_paper_closed(Yukawa(0.3, 1.5), kin, 0.0);
  CHECK(yz.value.real() == doctest::Approx(2 * 0.3 * 2.0 / (hv * 2.25)).epsilon(1e-15));
  CHECK_THROWS_AS(amplitude_paper_closed(Yukawa(0.3, 1.0), kin, 0.5), PoleError);
  CHECK_THROWS_AS(amplitude_paper_closed(TabulatedRadial({0, 1, 2}, {1, 0.5, 0}), kin, 0.1), UnsupportedModelError);
}

TEST_CASE("angle domain") {
  const Kinematics kin(1.0, 2.0);
  CHECK_THROWS_AS(amplitude_eikonal(Gauss(1, 1), kin, -0.1), DomainError);
  CHECK_THROWS_AS(amplitude_eikonal(Gauss(1, 1), kin, 3.2), DomainError);
  CHECK_NOTHROW(amplitude_eikonal(Gauss(1, 1), kin, kPi));
}

TEST_CASE("expm1i keeps small phases accurate") {
  const C v = expm1i(1e-9);
  CHECK(v.imag() == doctest::Approx(1e-9).epsilon(1e-15));
  CHECK(v.real() == doctest::Approx(-5e-19).epsilon(1e-9));
}
