#pragma once

#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace scatter::test {

struct Case {
  std::string name;
  std::function<double(double)> f;
  double a, b;  // b = inf for semi-infinite
  double exact;
};

inline std::vector<Case> quadrature_corpus() {
  const double inf = INFINITY;
  return {
      {"x^5", [](double x) { return std::pow(x, 5); }, 0, 1, 1.0 / 6},
      {"exp", [](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1},
      {"sqrt", [](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3},
      {"1/sqrt", [](double x) { return 1 / std::sqrt(x); }, 0, 1, 2.0},
      {"log", [](double x) { return std::log(x); }, 0, 1, -1.0},
      {"sin", [](double x) { return std::sin(x); }, 0, std::numbers::pi, 2.0},
      {"lorentz", [](double x) { return 1 / (1 + x * x); }, 0, 1, std::numbers::pi / 4},
      {"runge", [](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0)},
      {"cos^2(20x)", [](double x) { return std::pow(std::cos(20 * x), 2); }, 0, 2 * std::numbers::pi, std::numbers::pi},
      {"x^-0.75", [](double x) { return std::pow(x, -0.75); }, 0, 1, 4.0},
      {"gauss", [](double x) { return std::exp(-x * x); }, 0, 10, 0.5 * std::sqrt(std::numbers::pi) * std::erf(10.0)},
      {"kink", [](double x) { return std::abs(x - 1.0 / 3); }, 0, 1, 5.0 / 18},
      {"sin(100x)", [](double x) { return std::sin(100 * x); }, 0, 1, (1 - std::cos(100.0)) / 100},
      {"step", [](double x) { return x < 1.2345 ? 1.0 : 0.0; }, 0, 3, 1.2345},
      {"x log x", [](double x) { return x * std::log(x); }, 0, 1, -0.25},
      {"exp(-x)", [](double x) { return std::exp(-x); }, 0, inf, 1.0},
      {"x exp(-x^2)", [](double x) { return x * std::exp(-x * x); }, 0, inf, 0.5},
      {"exp(-x) cos x", [](double x) { return std::exp(-x) * std::cos(x); }, 0, inf, 0.5},
      {"x^2 exp(-x)", [](double x) { return x * x * std::exp(-x); }, 0, inf, 2.0},
      {"1/(1+x^2)", [](double x) { return 1 / (1 + x * x); }, 0, inf, std::numbers::pi / 2},
  };
}

}  // namespace scatter::test
