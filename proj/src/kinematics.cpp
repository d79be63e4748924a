#include "scatter/kinematics.hpp"

#include <cmath>

#include "scatter/errors.hpp"

namespace scatter {

Kinematics::Kinematics(double mass, double k, double hbar) : mass_(mass), k_(k), hbar_(hbar) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw DomainError("Kinematics: mass must be > 0");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("Kinematics: k must be > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("Kinematics: hbar must be > 0");
}

}  // namespace scatter
