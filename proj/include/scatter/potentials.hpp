#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "scatter/quadrature.hpp"

namespace scatter {

/// V(r) = (g / r) exp(-mu r). g carries energy x length, mu > 0.
class Yukawa {
 public:
  Yukawa(double g, double mu);
  double g() const noexcept { return g_; }
  double mu() const noexcept { return mu_; }

 private:
  double g_;
  double mu_;
};

/// V(r) = g exp(-alpha r^2). g carries energy, alpha > 0.
class Gauss {
 public:
  Gauss(double g, double alpha);
  double g() const noexcept { return g_; }
  double alpha() const noexcept { return alpha_; }

 private:
  double g_;
  double alpha_;
};

enum class Interpolation {
  pchip,   ///< monotone piecewise cubic Hermite (Fritsch-Carlson slopes)
  linear,
};

/// Radial potential sampled at strictly increasing r >= 0. Interpolated
/// inside the table, held at V(r0) below the first sample, exactly zero past
/// the last sample (which must itself be ~0 relative to max |V|).
class TabulatedRadial {
 public:
  TabulatedRadial(std::vector<double> r, std::vector<double> v,
                  Interpolation rule = Interpolation::pchip);

  double operator()(double r) const;
  std::span<const double> radii() const noexcept { return r_; }
  std::span<const double> values() const noexcept { return v_; }
  Interpolation rule() const noexcept { return rule_; }
  double last_radius() const noexcept { return r_.back(); }
  TabulatedRadial scaled(double factor) const;

 private:
  std::vector<double> r_;
  std::vector<double> v_;
  std::vector<double> slope_;
  Interpolation rule_;
};

using PotentialModel = std::variant<Yukawa, Gauss, TabulatedRadial>;

/// V(r). Yukawa at r = 0 raises SingularityError; r < 0 raises DomainError.
double evaluate(const PotentialModel& p, double r);

/// Three-dimensional transform V~(q) = int d^3r exp(-i q.r) V(r), without any
/// (2 pi)^-3 factor. Closed forms for Yukawa and Gauss; radial quadrature of
/// 4 pi int r^2 V(r) sinc(q r) dr for tables.
double fourier3d(const PotentialModel& p, double q,
                 const quad::QuadratureSettings& settings = {});

/// The radial quadrature route of fourier3d, for any model.
double fourier3d_radial(const PotentialModel& p, double q,
                        const quad::QuadratureSettings& settings = {});

/// Same model with its strength multiplied by factor.
PotentialModel scaled(const PotentialModel& p, double factor);

/// Radius past which the model is identically zero, if any.
std::optional<double> support_radius(const PotentialModel& p);

/// Smallest radius R with int_0^R |V| r^2 dr >= fraction * int_0^inf |V| r^2 dr.
double effective_radius(const PotentialModel& p, double fraction = 0.9999);

/// Radius beyond which |V(r)| <= threshold (tail assumed monotone).
double decay_radius(const PotentialModel& p, double threshold);

/// Two-column (r, V) text, whitespace separated, '#' starts a comment.
TabulatedRadial read_tabulated(std::istream& in, Interpolation rule = Interpolation::pchip);
TabulatedRadial read_tabulated(const std::filesystem::path& path,
                               Interpolation rule = Interpolation::pchip);

}  // namespace scatter
