#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "scatter/errors.hpp"
#include "quadrature_corpus.hpp"
#include "scatter/quadrature.hpp"

using namespace scatter;
using namespace scatter::quad;
constexpr double kPi = std::numbers::pi;

TEST_CASE("error estimates bound the true error over the corpus") {
  QuadratureSettings s;
  s.rel_tol = 1e-10;
  int within_target = 0;
  for (const auto& c : test::quadrature_corpus()) {
    CAPTURE(c.name);
    RealResult r;
    if (std::isinf(c.b)) {
      r = integrate_semi_infinite(c.f, s, c.a);
    } else {
      r = integrate_adaptive(c.f, c.a, c.b, s);
    }
    const double err = std::abs(r.value - c.exact);
    CHECK(err <= r.error_estimate);
    if (err <= s.target(std::abs(c.exact))) ++within_target;
  }
  // Only the algebraic 1/x^2 tail is truncated beyond the tolerance.
  CHECK(within_target >= 19);
}

TEST_CASE("complex integrands") {
  const auto r = integrate_adaptive([](double x) { return std::polar(1.0, x); }, 0.0, 1.0);
  const Complex exact = (std::polar(1.0, 1.0) - 1.0) / Complex(0, 1);
  CHECK(std::abs(r.value - exact) < 1e-14);
  const auto s = integrate_semi_infinite([](double x) { return Complex(std::exp(-x), std::exp(-2 * x)); });
  CHECK(std::abs(s.value - Complex(1.0, 0.5)) < 1e-12);
}

TEST_CASE("budget exhaustion raises ConvergenceError with a best estimate") {
  QuadratureSettings s;
  s.max_subdivisions = 8;
  s.rel_tol = 1e-14;
  try {
    integrate_adaptive([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, s);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.error_bound() > 0.0);
    CHECK(std::abs(e.best_estimate().real() - 10.0) < 10.0);
  }
}

TEST_CASE("non-decaying tails raise DivergenceError") {
  CHECK_THROWS_AS(integrate_semi_infinite([](double x) { return 1 / std::sqrt(1 + x); }), DivergenceError);
  CHECK_THROWS_AS(integrate_semi_infinite([](double) { return 1.0; }), DivergenceError);
}

TEST_CASE("inner failures propagate unchanged") {
  QuadratureSettings inner;
  inner.max_subdivisions = 8;
  inner.rel_tol = 1e-15;
  auto f = [&](double x) {
    return integrate_adaptive([](double t) { return std::pow(t, -0.9); }, 0.0, 1.0, inner).value * x;
  };
  try {
    integrate_adaptive(f, 0.0, 1.0);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::string(e.what()).find("integrate_adaptive") != std::string::npos);
  }
}

TEST_CASE("Hankel transform of a Gaussian") {
  // int_0^inf exp(-a b^2) J0(q b) b db = exp(-q^2 / 4a) / 2a
  for (double a : {0.5, 1.0, 3.0}) {
    for (double q : {0.0, 0.1, 1.0, 4.0, 10.0}) {
      const auto r = hankel0([a](double b) { return std::exp(-a * b * b); }, q);
      const double exact = std::exp(-q * q / (4 * a)) / (2 * a);
      CAPTURE(a);
      CAPTURE(q);
      CHECK(std::abs(r.value - exact) <= std::max(r.error_estimate, 1e-15));
      CHECK(std::abs(r.value - exact) < 1e-10 * exact + 1e-15);
    }
  }
}

TEST_CASE("Hankel transform against a trapezoid oracle") {
  // Fine trapezoid sum with the library J0; the integrand vanishes at both
  // ends, so the rule is spectrally accurate.
  auto g = [](double b) { return std::exp(-0.7 * b * b) * (1 + b); };
  for (double q : {0.3, 2.0, 7.0}) {
    auto trapezoid = [&](double h) {
      double sum = 0.0;
      for (int i = 1; i * h < 12.0; ++i) {
        const double b = i * h;
        sum += g(b) * std::cyl_bessel_j(0.0, q * b) * b;
      }
      return sum * h;
    };
    // Two Romberg steps remove the h^2 and h^4 terms from the b = 0 end.
    const double t1 = trapezoid(4e-3), t2 = trapezoid(2e-3), t3 = trapezoid(1e-3);
    const double r1 = (4 * t2 - t1) / 3, r2 = (4 * t3 - t2) / 3;
    const double oracle = (16 * r2 - r1) / 15;
    const auto r = hankel0(g, q);
    CHECK(std::abs(r.value - oracle) < 1e-11);
  }
}

TEST_CASE("Hankel transform with an algebraic tail") {
  // int_0^inf J0(q b) b / (b^2 + c^2)^(3/2) db = exp(-q c) / c
  for (double q : {0.5, 2.0, 6.0}) {
    const double c = 1.3;
    const auto r = hankel0([c](double b) { return 1 / std::pow(b * b + c * c, 1.5); }, q);
    const double exact = std::exp(-q * c) / c;
    CHECK(std::abs(r.value - exact) < 1e-8 * exact);
  }
}

TEST_CASE("Hankel transform is linear and independent of the block count") {
  auto f = [](double b) { return std::exp(-b * b); };
  auto g = [](double b) { return 1 / std::pow(1 + b * b, 2); };
  const double q = 1.7;
  const auto rf = hankel0(f, q);
  const auto rg = hankel0(g, q);
  const auto rs = hankel0([&](double b) { return f(b) + 2 * g(b); }, q);
  CHECK(std::abs(rs.value - (rf.value + 2 * rg.value)) < 1e-10 * std::abs(rs.value));

  QuadratureSettings s;
  s.oscillatory_blocks = 14;
  const auto rg2 = hankel0(g, q, s);
  CHECK(std::abs(rg2.value - rg.value) < 1e-10 * std::abs(rg.value));

  const auto rc = hankel0([&](double b) { return Complex(g(b), f(b)); }, q);
  CHECK(std::abs(rc.value.real() - rg.value) < 1e-10 * std::abs(rg.value));
  CHECK(std::abs(rc.value.imag() - rf.value) < 1e-10 * std::abs(rf.value));
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {1, 4, 16, 40}) {
    const auto rule = gauss_legendre_unit(n);
    double w = 0.0;
    for (double x : rule.weights) w += x;
    CHECK(std::abs(w - 1.0) < 1e-14);
    const int deg = 2 * n - 1;
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += rule.weights[i] * std::pow(rule.nodes[i], deg);
    CHECK(std::abs(m - 1.0 / (deg + 1)) < 1e-14);
  }
  CHECK_THROWS_AS(gauss_legendre_unit(0), DomainError);
}

TEST_CASE("settings validation") {
  QuadratureSettings s;
  s.rel_tol = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return x; }, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(hankel0([](double x) { return x; }, -1.0), DomainError);
  const auto n = QuadratureSettings{}.nested();
  CHECK(n.rel_tol < QuadratureSettings{}.rel_tol);
}
