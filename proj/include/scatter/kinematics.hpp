#pragma once

namespace scatter {

/// Projectile kinematics. The default unit system is hbar = 1, mass = 1;
/// every formula keeps hbar explicit so other systems are a constructor call.
class Kinematics {
 public:
  Kinematics(double mass, double k, double hbar = 1.0);

  double mass() const noexcept { return mass_; }
  double k() const noexcept { return k_; }
  double hbar() const noexcept { return hbar_; }
  /// v = hbar k / m
  double velocity() const noexcept { return hbar_ * k_ / mass_; }
  /// E = hbar^2 k^2 / (2 m)
  double energy() const noexcept { return hbar_ * hbar_ * k_ * k_ / (2.0 * mass_); }
  /// hbar v, the quantity every eikonal phase is divided by.
  double hbar_v() const noexcept { return hbar_ * velocity(); }

 private:
  double mass_;
  double k_;
  double hbar_;
};

}  // namespace scatter
