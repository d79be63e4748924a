#pragma once

#include <vector>

namespace scatter::special {

/// Accuracy contract shared by the special functions. A value v is accepted
/// against the exact value e when |v - e| <= max(abs_tol, rel_tol * |e|).
struct AccuracySpec {
  double rel_tol = 1e-13;
  double abs_tol = 1e-15;

  /// Throws DomainError unless rel_tol > 0 and abs_tol >= 0.
  void validate() const;
  bool accepts(double value, double exact) const;
};

/// Contract met by every function in this header.
inline constexpr AccuracySpec kDefaultAccuracy{};

/// Bessel function of the first kind, order zero.
/// Power series below |x| = 8, Hankel asymptotic form with rational P0/Q0 above.
double bessel_j0(double x);

/// Modified Bessel function of the second kind (Macdonald function), order
/// zero. Requires x > 0.
double bessel_k0(double x);

/// Legendre polynomial P_l(x) by upward recurrence; |x| <= 1.
double legendre_p(int l, double x);

/// P_0(x) .. P_lmax(x) in one pass.
std::vector<double> legendre_p_all(int l_max, double x);

struct SphericalBesselPair {
  double j;  ///< regular j_l(x)
  double n;  ///< irregular n_l(x) = y_l(x), with n_0 = -cos(x)/x
};

/// Spherical Bessel functions of order l at x > 0. j_l uses upward recurrence
/// for x > l and Miller's downward recurrence otherwise; n_l is always upward.
SphericalBesselPair spherical_bessel(int l, double x);

/// j_l and n_l for l = 0 .. l_max at a single x.
void spherical_bessel_all(int l_max, double x, std::vector<double>& j,
                          std::vector<double>& n);

/// n-th positive zero of J0 (n >= 1). Zeros are located once by bisection on
/// the interlacing bracket ((n - 1/2)pi, n pi) and cached process-wide.
double j0_zero(int n);

namespace detail {
// Individual branches, exposed so the seams can be tested.
double j0_series(double x);
double j0_asymptotic(double x);
double k0_series(double x);
double k0_continued_fraction(double x);
}  // namespace detail

}  // namespace scatter::special
