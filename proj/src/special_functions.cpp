#include "scatter/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "scatter/errors.hpp"

namespace scatter::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kJ0Seam = 8.0;
constexpr double kK0Seam = 2.0;

template <std::size_t N>
double polynomial(const double (&c)[N], double x) {
  double r = c[N - 1];
  for (std::size_t i = N - 1; i-- > 0;) r = r * x + c[i];
  return r;
}

void require_finite(double x, const char* fn) {
  if (!std::isfinite(x))
    throw DomainError(std::string(fn) + ": argument must be finite");
}

}  // namespace

void AccuracySpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("AccuracySpec: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("AccuracySpec: abs_tol must be >= 0");
}

bool AccuracySpec::accepts(double value, double exact) const {
  return std::abs(value - exact) <= std::max(abs_tol, rel_tol * std::abs(exact));
}

namespace detail {

double j0_series(double x) {
  // sum_k (-x^2/4)^k / (k!)^2, accumulated in extended precision since the
  // largest term near x = 8 is ~1e2 while the sum is O(0.1).
  const long double y = -static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 1; k < 200; ++k) {
    term *= y / (static_cast<long double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum) + 1e-30L) break;
  }
  return static_cast<double>(sum);
}

double j0_asymptotic(double x) {
  // J0(x) = sqrt(2/(pi x)) [P0(x) cos(z) - Q0(x) sin(z)], z = x - pi/4, with
  // P0 and Q0 as rational functions of (8/x)^2. Coefficients from Hart,
  // Computer Approximations (1968), as tabulated in Boost.Math.
  static constexpr double PC[] = {
      2.2779090197304684302e+04, 4.1345386639580765797e+04,
      2.1170523380864944322e+04, 3.4806486443249270347e+03,
      1.5376201909008354296e+02, 8.8961548424210455236e-01};
  static constexpr double QC[] = {
      2.2779090197304684318e+04, 4.1370412495510416640e+04,
      2.1215350561880115730e+04, 3.5028735138235608207e+03,
      1.5711159858080893649e+02, 1.0};
  static constexpr double PS[] = {
      -8.9226600200800094098e+01, -1.8591953644342993800e+02,
      -1.1183429920482737611e+02, -2.2300261666214198472e+01,
      -1.2441026745835638459e+00, -8.8033303048680751817e-03};
  static constexpr double QS[] = {
      5.7105024128512061905e+03, 1.1951131543434613647e+04,
      7.2642780169211018836e+03, 1.4887231232283756582e+03,
      9.0593769594993125859e+01, 1.0};
  const double y = 8.0 / x;
  const double y2 = y * y;
  const double rc = polynomial(PC, y2) / polynomial(QC, y2);
  const double rs = polynomial(PS, y2) / polynomial(QS, y2);
  const double z = x - 0.25 * kPi;
  return std::sqrt(2.0 / (x * kPi)) * (rc * std::cos(z) - y * rs * std::sin(z));
}

double k0_series(double x) {
  // K0(x) = -(ln(x/2) + gamma) I0(x) + sum_{k>=1} (x^2/4)^k / (k!)^2 H_k
  const long double y = static_cast<long double>(x) * x / 4.0L;
  long double term = 1.0L;
  long double i0 = 1.0L;
  long double harmonic = 0.0L;
  long double tail = 0.0L;
  for (int k = 1; k < 200; ++k) {
    term *= y / (static_cast<long double>(k) * k);
    harmonic += 1.0L / k;
    i0 += term;
    tail += term * harmonic;
    if (term * harmonic < 1e-22L * tail) break;
  }
  const long double lead =
      std::log(static_cast<long double>(x) / 2.0L) + std::numbers::egamma_v<long double>;
  return static_cast<double>(-lead * i0 + tail);
}

double k0_continued_fraction(double x) {
  // Steed's evaluation of Temme's second continued fraction for K_nu, nu = 0.
  // Converges for x >= ~1; the library switches to it at x = 2.
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < 1e-17) break;
  }
  return std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
}

}  // namespace detail

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  x = std::abs(x);
  return x < kJ0Seam ? detail::j0_series(x) : detail::j0_asymptotic(x);
}

double bessel_k0(double x) {
  require_finite(x, "bessel_k0");
  if (!(x > 0.0)) throw DomainError("bessel_k0: requires x > 0 (K0 diverges at 0)");
  return x <= kK0Seam ? detail::k0_series(x) : detail::k0_continued_fraction(x);
}

double legendre_p(int l, double x) {
  if (l < 0) throw DomainError("legendre_p: l must be >= 0");
  if (!(std::abs(x) <= 1.0)) throw DomainError("legendre_p: requires |x| <= 1");
  double prev = 1.0;
  if (l == 0) return prev;
  double cur = x;
  for (int n = 1; n < l; ++n) {
    const double next = ((2 * n + 1) * x * cur - n * prev) / (n + 1);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> legendre_p_all(int l_max, double x) {
  if (l_max < 0) throw DomainError("legendre_p_all: l_max must be >= 0");
  if (!(std::abs(x) <= 1.0)) throw DomainError("legendre_p_all: requires |x| <= 1");
  std::vector<double> p(static_cast<std::size_t>(l_max) + 1);
  p[0] = 1.0;
  if (l_max >= 1) p[1] = x;
  for (int n = 1; n < l_max; ++n)
    p[n + 1] = ((2 * n + 1) * x * p[n] - n * p[n - 1]) / (n + 1);
  return p;
}

void spherical_bessel_all(int l_max, double x, std::vector<double>& j,
                          std::vector<double>& n) {
  if (l_max < 0) throw DomainError("spherical_bessel: l must be >= 0");
  require_finite(x, "spherical_bessel");
  if (!(x > 0.0)) throw DomainError("spherical_bessel: requires x > 0");
  const auto size = static_cast<std::size_t>(l_max) + 1;
  j.assign(size, 0.0);
  n.assign(size, 0.0);

  const double s = std::sin(x);
  const double c = std::cos(x);
  n[0] = -c / x;
  if (l_max >= 1) n[1] = -c / (x * x) - s / x;
  for (int l = 1; l < l_max; ++l) n[l + 1] = (2 * l + 1) / x * n[l] - n[l - 1];

  const double j0 = s / x;
  if (x > l_max) {
    j[0] = j0;
    if (l_max >= 1) j[1] = s / (x * x) - c / x;
    for (int l = 1; l < l_max; ++l) j[l + 1] = (2 * l + 1) / x * j[l] - j[l - 1];
    return;
  }

  // Miller: recur downward from well above l_max, then normalise.
  const int top = l_max + 16 + static_cast<int>(std::sqrt(40.0 * (l_max + 1)));
  double upper = 0.0;
  double cur = 1e-300;
  for (int l = top; l > 0; --l) {
    const double lower = (2 * l + 1) / x * cur - upper;
    upper = cur;
    cur = lower;
    if (l - 1 <= l_max) j[l - 1] = cur;
    if (l <= l_max) j[l] = upper;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      upper *= 1e-250;
      for (int m = l - 1; m <= l_max; ++m) j[m] *= 1e-250;
    }
  }
  const double j1 = s / (x * x) - c / x;
  // Normalise against whichever of j0, j1 is farther from a zero.
  const double scale = (std::abs(j0) >= std::abs(j1) || l_max == 0)
                           ? j0 / j[0]
                           : j1 / j[1];
  for (auto& v : j) v *= scale;
}

SphericalBesselPair spherical_bessel(int l, double x) {
  std::vector<double> j;
  std::vector<double> n;
  spherical_bessel_all(l, x, j, n);
  return {j.back(), n.back()};
}

double j0_zero(int n) {
  if (n < 1) throw DomainError("j0_zero: index must be >= 1");
  static std::mutex mutex;
  static std::vector<double> cache;
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) < n) {
    const int m = static_cast<int>(cache.size()) + 1;
    double lo = (m - 0.5) * kPi;
    double hi = m * kPi;
    double f_lo = bessel_j0(lo);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double f_mid = bessel_j0(mid);
      if ((f_mid > 0.0) == (f_lo > 0.0)) {
        lo = mid;
        f_lo = f_mid;
      } else {
        hi = mid;
      }
    }
    cache.push_back(std::abs(bessel_j0(lo)) <= std::abs(bessel_j0(hi)) ? lo : hi);
  }
  return cache[static_cast<std::size_t>(n) - 1];
}

}  // namespace scatter::special
