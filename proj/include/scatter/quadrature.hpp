#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

namespace scatter::quad {

using Complex = std::complex<double>;
using RealIntegrand = std::function<double(double)>;
using ComplexIntegrand = std::function<Complex(double)>;

struct QuadratureSettings {
  double rel_tol = 1e-11;
  double abs_tol = 1e-15;
  int max_subdivisions = 4000;
  /// Upper end of the explicitly integrated range of a semi-infinite
  /// integral; what lies beyond is bounded from tail samples.
  double tail_cut = 1e3;
  /// J0-zero blocks summed directly before Euler acceleration starts.
  int oscillatory_blocks = 8;
  /// Hard cap on the number of J0 blocks.
  int max_blocks = 20000;

  void validate() const;
  double target(double magnitude) const;
  /// Settings for an integral nested inside another one: tolerances scaled
  /// by factor (floored at 1e-15) so inner noise stays below the outer target.
  QuadratureSettings nested(double factor = 0.1) const;
};

template <typename T>
struct QuadratureResult {
  T value{};
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
};

using RealResult = QuadratureResult<double>;
using ComplexResult = QuadratureResult<Complex>;

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b].
/// Throws ConvergenceError (carrying the best estimate) when the subdivision
/// budget runs out before max(abs_tol, rel_tol |value|) is met.
RealResult integrate_adaptive(const RealIntegrand& f, double a, double b,
                              const QuadratureSettings& settings = {});
ComplexResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                 const QuadratureSettings& settings = {});

/// Integral over [lower, inf) through x = lower + t/(1-t). The mapped range is
/// cut at x = tail_cut; the remainder is bounded by |f(X)| X from samples and
/// added to the error estimate. Throws DivergenceError when x |f| does not
/// shrink along the tail.
RealResult integrate_semi_infinite(const RealIntegrand& f,
                                   const QuadratureSettings& settings = {},
                                   double lower = 0.0);
ComplexResult integrate_semi_infinite(const ComplexIntegrand& f,
                                      const QuadratureSettings& settings = {},
                                      double lower = 0.0);

/// Order-zero Hankel-type integral  int_0^inf g(b) J0(q b) b db.
/// Integrates between consecutive zeros of J0(qb); after oscillatory_blocks
/// blocks the alternating partial sums are Euler-accelerated. For
/// q <= 1e-12 / tail_cut the non-oscillatory semi-infinite path is used.
RealResult hankel0(const RealIntegrand& g, double q,
                   const QuadratureSettings& settings = {});
ComplexResult hankel0(const ComplexIntegrand& g, double q,
                      const QuadratureSettings& settings = {});

namespace detail {
template <typename F>
concept Callable = !std::is_same_v<std::decay_t<F>, RealIntegrand> &&
                   !std::is_same_v<std::decay_t<F>, ComplexIntegrand> &&
                   std::is_invocable_v<F&, double>;

template <typename F>
auto wrap(F&& f) {
  if constexpr (std::is_convertible_v<std::invoke_result_t<F&, double>, double>)
    return RealIntegrand(std::forward<F>(f));
  else
    return ComplexIntegrand(std::forward<F>(f));
}
}  // namespace detail

// Plain callables (lambdas) dispatch on their return type.
template <detail::Callable F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureSettings& settings = {}) {
  return integrate_adaptive(detail::wrap(std::forward<F>(f)), a, b, settings);
}

template <detail::Callable F>
auto integrate_semi_infinite(F&& f, const QuadratureSettings& settings = {}, double lower = 0.0) {
  return integrate_semi_infinite(detail::wrap(std::forward<F>(f)), settings, lower);
}

template <detail::Callable F>
auto hankel0(F&& g, double q, const QuadratureSettings& settings = {}) {
  return hankel0(detail::wrap(std::forward<F>(g)), q, settings);
}

struct GaussLegendreRule {
  std::vector<double> nodes;    ///< on [0, 1]
  std::vector<double> weights;  ///< sum to 1
};

/// n-point Gauss-Legendre rule mapped to [0, 1].
GaussLegendreRule gauss_legendre_unit(int n);

}  // namespace scatter::quad
