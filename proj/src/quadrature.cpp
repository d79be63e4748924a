#include "scatter/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <type_traits>

#include "scatter/errors.hpp"
#include "scatter/special_functions.hpp"

namespace scatter::quad {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (descending; 0 last) with the
// embedded 7-point Gauss rule at the odd indices.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

double magnitude(double v) { return std::abs(v); }
double magnitude(const Complex& v) { return std::abs(v); }

Complex to_complex(double v) { return {v, 0.0}; }
Complex to_complex(const Complex& v) { return v; }

template <typename T>
T from_complex(const Complex& v) {
  if constexpr (std::is_same_v<T, double>) {
    return v.real();
  } else {
    return v;
  }
}

// Carries a ConvergenceError raised inside an integrand past the catch
// blocks that handle failures of the integration itself.
struct IntegrandFailure {
  std::exception_ptr error;
};

template <typename F>
auto guarded(const F& f) {
  return [&f](double x) {
    try {
      return f(x);
    } catch (const ConvergenceError&) {
      throw IntegrandFailure{std::current_exception()};
    }
  };
}

template <typename Run>
auto unwrap(Run&& run) {
  try {
    return run();
  } catch (const IntegrandFailure& failure) {
    std::rethrow_exception(failure.error);
  }
}

template <typename T>
struct Segment {
  double a;
  double b;
  T value;
  double error;
};

template <typename T, typename F>
Segment<T> kronrod15(const F& f, double a, double b) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(centre);
  T res_g = fc * kWg[3];
  T res_k = fc * kWgk[7];
  double res_abs = magnitude(res_k);
  T fv1[7];
  T fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(centre - dx);
    fv2[j] = f(centre + dx);
    const T pair = fv1[j] + fv2[j];
    res_k += kWgk[j] * pair;
    res_abs += kWgk[j] * (magnitude(fv1[j]) + magnitude(fv2[j]));
    if (j % 2 == 1) res_g += kWg[j / 2] * pair;
  }
  const T mean = res_k * 0.5;
  double res_asc = kWgk[7] * magnitude(fc - mean);
  for (int j = 0; j < 7; ++j)
    res_asc += kWgk[j] * (magnitude(fv1[j] - mean) + magnitude(fv2[j] - mean));

  const double scale = std::abs(half);
  res_abs *= scale;
  res_asc *= scale;
  double err = magnitude((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0)
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * kEps))
    err = std::max(50.0 * kEps * res_abs, err);
  return {a, b, res_k * half, err};
}

template <typename T, typename F>
QuadratureResult<T> adaptive(const F& f, double a, double b,
                             const QuadratureSettings& s) {
  if (!(a < b)) throw DomainError("integrate_adaptive: requires a < b");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_adaptive: limits must be finite");

  auto worse = [](const Segment<T>& x, const Segment<T>& y) {
    return x.error < y.error;
  };
  std::priority_queue<Segment<T>, std::vector<Segment<T>>, decltype(worse)> heap(worse);

  Segment<T> first = kronrod15<T>(f, a, b);
  std::size_t evaluations = 15;
  T total = first.value;
  double total_err = first.error;
  heap.push(first);
  int segments = 1;

  auto finite = [](const T& v) { return std::isfinite(magnitude(v)); };
  if (!finite(total)) throw DomainError("integrate_adaptive: integrand not finite");

  bool stalled = false;
  while (total_err > s.target(magnitude(total))) {
    if (segments >= s.max_subdivisions) break;
    Segment<T> worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      stalled = true;
      break;
    }
    heap.pop();
    Segment<T> left = kronrod15<T>(f, worst.a, mid);
    Segment<T> right = kronrod15<T>(f, mid, worst.b);
    evaluations += 30;
    total += (left.value + right.value) - worst.value;
    total_err += (left.error + right.error) - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
    if (!finite(left.value) || !finite(right.value))
      throw DomainError("integrate_adaptive: integrand not finite");
  }

  // Re-sum to shed the drift of the incremental updates.
  T value{};
  double err = 0.0;
  std::vector<Segment<T>> parts;
  parts.reserve(heap.size());
  while (!heap.empty()) {
    parts.push_back(heap.top());
    heap.pop();
  }
  std::sort(parts.begin(), parts.end(),
            [](const Segment<T>& x, const Segment<T>& y) { return x.a < y.a; });
  for (const auto& p : parts) {
    value += p.value;
    err += p.error;
  }

  if (err > s.target(magnitude(value))) {
    throw ConvergenceError(
        std::string("integrate_adaptive: ") +
            (stalled ? "interval width at round-off limit"
                     : "subdivision budget exhausted") +
            " (error " + std::to_string(err) + ")",
        to_complex(value), err);
  }
  return {value, err, evaluations};
}

template <typename T, typename F>
QuadratureResult<T> semi_infinite(const F& f, const QuadratureSettings& s,
                                  double lower) {
  if (!std::isfinite(lower)) throw DomainError("integrate_semi_infinite: lower must be finite");
  const double span = s.tail_cut;
  // Tail probe: x |f| must shrink over successive doublings past the cut.
  double probe[4];
  for (int i = 0; i < 4; ++i) {
    const double d = span * std::ldexp(1.0, i);
    probe[i] = magnitude(f(lower + d)) * d;
  }
  // For |f| ~ x^-p the remainder is X |f(X)| / (p - 1); p comes from the
  // first doubling, and X |f(X)| itself is kept as a floor for faster decay.
  const double decay = probe[1] > 0.0 ? std::log2(probe[0] / probe[1]) : INFINITY;
  const double tail_bound = 1.1 * probe[0] * std::max(1.0, 1.0 / std::max(decay, 1e-3));
  const bool shrinking = probe[3] < probe[0] && probe[2] < probe[0];
  if (!shrinking && probe[3] > s.abs_tol)
    throw DivergenceError("integrate_semi_infinite: integrand tail is not decaying");

  const double t_cut = span / (1.0 + span);
  auto mapped = [&](double t) -> T {
    const double one_minus = 1.0 - t;
    return f(lower + t / one_minus) / (one_minus * one_minus);
  };
  QuadratureResult<T> r;
  try {
    r = adaptive<T>(mapped, 0.0, t_cut, s);
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(e.what(), e.best_estimate(), e.error_bound() + tail_bound);
  }
  r.evaluations += 4;
  r.error_estimate += tail_bound;
  return r;
}

template <typename T>
T euler_accelerate(const std::vector<T>& partial, std::size_t window) {
  window = std::min(window, partial.size());
  std::vector<T> level(partial.end() - static_cast<std::ptrdiff_t>(window), partial.end());
  while (level.size() > 1) {
    for (std::size_t i = 0; i + 1 < level.size(); ++i)
      level[i] = 0.5 * (level[i] + level[i + 1]);
    level.pop_back();
  }
  return level.front();
}

template <typename T, typename G>
QuadratureResult<T> hankel(const G& g, double q, const QuadratureSettings& s) {
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("hankel0: requires finite q >= 0");
  if (q <= 1e-12 / s.tail_cut) {
    auto integrand = [&](double b) -> T { return g(b) * b; };
    return semi_infinite<T>(integrand, s, 0.0);
  }
  auto integrand = [&](double b) -> T { return g(b) * (special::bessel_j0(q * b) * b); };

  std::vector<T> partial;
  std::vector<Complex> partial_c;
  T sum{};
  double err = 0.0;
  std::size_t evaluations = 0;
  T previous{};
  bool have_previous = false;
  int settled = 0;
  double lo = 0.0;
  std::string first_failure;

  auto finish = [&](const T& value, double bound) -> QuadratureResult<T> {
    if (!first_failure.empty() && bound > s.target(magnitude(value)))
      throw ConvergenceError("hankel0: " + first_failure, to_complex(value), bound, partial_c);
    return {value, bound, evaluations};
  };

  auto fail = [&](const std::string& why, const T& best, double bound) {
    throw ConvergenceError("hankel0: " + why, to_complex(best), bound, partial_c);
  };

  for (int n = 1; n <= s.max_blocks; ++n) {
    const double hi = special::j0_zero(n) / q;
    QuadratureSettings block = s;
    block.abs_tol = std::max(s.abs_tol, 1e-3 * s.rel_tol * magnitude(sum));
    QuadratureResult<T> term;
    const bool last = hi > s.tail_cut;
    try {
      term = last ? semi_infinite<T>(integrand, block, lo)
                  : adaptive<T>(integrand, lo, hi, block);
    } catch (const ConvergenceError& e) {
      // Keep going with the block's best estimate; the final bound decides.
      term.value = from_complex<T>(e.best_estimate());
      term.error_estimate = e.error_bound();
      if (first_failure.empty())
        first_failure = std::string("block ") + std::to_string(n) + ": " + e.what();
    }
    sum += term.value;
    err += term.error_estimate;
    evaluations += term.evaluations;
    partial.push_back(sum);
    partial_c.push_back(to_complex(sum));
    if (last) return finish(sum, err);

    if (n >= s.oscillatory_blocks) {
      const auto window = static_cast<std::size_t>(n - s.oscillatory_blocks + 1);
      const T estimate = euler_accelerate(partial, std::min<std::size_t>(window, 12));
      if (have_previous) {
        const double change = magnitude(estimate - previous);
        settled = change <= s.target(magnitude(estimate)) ? settled + 1 : 0;
        if (settled >= 2) return finish(estimate, err + change);
      }
      previous = estimate;
      have_previous = true;
    }
    lo = hi;
  }
  fail("block budget exhausted before the alternating sums settled", sum, err);
  return {};
}

}  // namespace

void QuadratureSettings::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadratureSettings: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSettings: abs_tol must be >= 0");
  if (max_subdivisions < 8) throw DomainError("QuadratureSettings: max_subdivisions must be >= 8");
  if (!(tail_cut > 0.0)) throw DomainError("QuadratureSettings: tail_cut must be > 0");
  if (oscillatory_blocks < 1) throw DomainError("QuadratureSettings: oscillatory_blocks must be >= 1");
  if (max_blocks < oscillatory_blocks) throw DomainError("QuadratureSettings: max_blocks must be >= oscillatory_blocks");
}

double QuadratureSettings::target(double magnitude) const {
  return std::max(abs_tol, rel_tol * magnitude);
}

QuadratureSettings QuadratureSettings::nested(double factor) const {
  QuadratureSettings s = *this;
  s.rel_tol = std::max(1e-15, rel_tol * factor);
  s.abs_tol = abs_tol * factor;
  return s;
}

RealResult integrate_adaptive(const RealIntegrand& f, double a, double b,
                              const QuadratureSettings& settings) {
  return unwrap([&] { return adaptive<double>(guarded(f), a, b, settings); });
}

ComplexResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                 const QuadratureSettings& settings) {
  return unwrap([&] { return adaptive<Complex>(guarded(f), a, b, settings); });
}

RealResult integrate_semi_infinite(const RealIntegrand& f,
                                   const QuadratureSettings& settings, double lower) {
  return unwrap([&] { return semi_infinite<double>(guarded(f), settings, lower); });
}

ComplexResult integrate_semi_infinite(const ComplexIntegrand& f,
                                      const QuadratureSettings& settings, double lower) {
  return unwrap([&] { return semi_infinite<Complex>(guarded(f), settings, lower); });
}

RealResult hankel0(const RealIntegrand& g, double q, const QuadratureSettings& settings) {
  return unwrap([&] { return hankel<double>(guarded(g), q, settings); });
}

ComplexResult hankel0(const ComplexIntegrand& g, double q,
                      const QuadratureSettings& settings) {
  return unwrap([&] { return hankel<Complex>(guarded(g), q, settings); });
}

GaussLegendreRule gauss_legendre_unit(int n) {
  if (n < 1) throw DomainError("gauss_legendre_unit: n must be >= 1");
  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = 0.5 * (1.0 - x);
    rule.nodes[hi] = 0.5 * (1.0 + x);
    rule.weights[lo] = 0.5 * w;
    rule.weights[hi] = 0.5 * w;
  }
  return rule;
}

}  // namespace scatter::quad
