#include "scatter/partial_wave.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "scatter/errors.hpp"
#include "scatter/parallel.hpp"
#include "scatter/special_functions.hpp"

namespace scatter {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRangeThreshold = 1e-12;
constexpr double kRescale = 1e200;

// Potential part of the radial equation on the uniform grid r_n = n h,
// shared by every l.
class NumerovGrid {
 public:
  NumerovGrid(const PotentialModel& p, const Kinematics& kin, double r_max, double dr)
      : k_(kin.k()), h_(dr) {
    if (!(dr > 0.0)) throw DomainError("phase_shifts: dr must be > 0");
    if (!(k_ * dr < 0.1)) throw DomainError("phase_shifts: requires k dr < 0.1");
    if (!(r_max > 4.0 * dr)) throw DomainError("phase_shifts: r_max must exceed a few steps");
    inner_ = static_cast<int>(std::lround(r_max / dr));
    const int quarter = std::max(1, static_cast<int>(std::lround(0.5 * kPi / k_ / dr)));
    outer_ = inner_ + quarter;

    const double to_w = 2.0 * kin.mass() / (kin.hbar() * kin.hbar());
    const double k2 = k_ * k_;
    for (int idx : {inner_, outer_}) {
      const double r = idx * dr;
      if (!(std::abs(evaluate(p, r)) * to_w / k2 < kRangeThreshold))
        throw RangeError("phase_shifts: potential has not decayed at r = " + std::to_string(r) +
                         " (2m|V|/(hbar k)^2 >= 1e-12)");
    }
    w_.assign(static_cast<std::size_t>(outer_) + 1, 0.0);
    for (int n = 1; n <= outer_; ++n) {
      const double v = evaluate(p, n * dr);
      free_ = free_ && v == 0.0;
      w_[n] = to_w * v - k2;
    }

    // Frobenius data from s(r) = r W(r) ~ w_m1 + w_0 r near the origin.
    const double s1 = h_ * w_[1];
    const double s2 = 2.0 * h_ * w_[2];
    w0_ = (s2 - s1) / h_;
    w_m1_ = 2.0 * s1 - s2;
  }

  double r1() const { return inner_ * h_; }
  double r2() const { return outer_ * h_; }
  double h() const { return h_; }
  double k() const { return k_; }
  bool free() const { return free_; }

  // Ratio-free matching data: u at the two radii (common scale).
  std::pair<double, double> solve(int l) const {
    const double ll = l * (l + 1.0);
    const double c = h_ * h_ / 12.0;
    // Start where the centrifugal term keeps h^2 f / 12 <= 0.01.
    int n0 = std::max(1, static_cast<int>(std::ceil(std::sqrt(ll / 0.12))));
    if (n0 + 1 >= inner_) return {0.0, 0.0};
    const double a1 = w_m1_ / (2.0 * (l + 1));
    const double a2 = (w_m1_ * a1 + w0_) / (2.0 * (2 * l + 3));
    auto series = [&](double r) { return 1.0 + a1 * r + a2 * r * r; };
    const double ra = n0 * h_;
    const double rb = (n0 + 1) * h_;
    double u_prev = 1.0;
    double u_cur = std::pow(rb / ra, l + 1) * series(rb) / series(ra);

    auto f = [&](int n) {
      const double r = n * h_;
      return ll / (r * r) + w_[n];
    };
    double f_prev = f(n0);
    double f_cur = f(n0 + 1);
    double u_inner = n0 + 1 == inner_ ? u_cur : 0.0;
    for (int n = n0 + 1; n < outer_; ++n) {
      const double f_next = f(n + 1);
      const double u_next =
          (2.0 * (1.0 + 5.0 * c * f_cur) * u_cur - (1.0 - c * f_prev) * u_prev) /
          (1.0 - c * f_next);
      u_prev = u_cur;
      u_cur = u_next;
      f_prev = f_cur;
      f_cur = f_next;
      if (std::abs(u_cur) > kRescale) {
        u_prev /= kRescale;
        u_cur /= kRescale;
        u_inner /= kRescale;
      }
      if (n + 1 == inner_) u_inner = u_cur;
    }
    return {u_inner, u_cur};
  }

 private:
  double k_;
  double h_;
  int inner_ = 0;
  int outer_ = 0;
  std::vector<double> w_;
  double w0_ = 0.0;
  bool free_ = true;
  double w_m1_ = 0.0;
};

void compute_shifts(const NumerovGrid& grid, int l_from, int l_to, std::vector<double>& delta,
                    int threads) {
  std::vector<double> j1, n1, j2, n2;
  const double x1 = grid.k() * grid.r1();
  const double x2 = grid.k() * grid.r2();
  special::spherical_bessel_all(l_to, x1, j1, n1);
  special::spherical_bessel_all(l_to, x2, j2, n2);
  delta.resize(static_cast<std::size_t>(l_to) + 1, 0.0);
  if (grid.free()) return;
  parallel_for(static_cast<std::size_t>(l_to - l_from + 1), threads, [&](std::size_t i) {
    const int l = l_from + static_cast<int>(i);
    const auto [u1, u2] = grid.solve(l);
    if (u1 == 0.0 && u2 == 0.0) {
      delta[l] = 0.0;
      return;
    }
    const double jh1 = x1 * j1[l], nh1 = x1 * n1[l];
    const double jh2 = x2 * j2[l], nh2 = x2 * n2[l];
    double d = std::atan2(u2 * jh1 - u1 * jh2, u2 * nh1 - u1 * nh2);
    if (d > 0.5 * kPi) d -= kPi;
    if (d <= -0.5 * kPi) d += kPi;
    delta[l] = d;
  });
}

}  // namespace

int default_l_max(const PotentialModel& p, const Kinematics& kin) {
  return static_cast<int>(std::ceil(kin.k() * effective_radius(p, 0.9999))) + 10;
}

double default_r_max(const PotentialModel& p, const Kinematics& kin) {
  const double threshold =
      kRangeThreshold * kin.hbar() * kin.hbar() * kin.k() * kin.k() / (2.0 * kin.mass());
  // Margin so the two matching radii sit strictly inside the decayed region.
  return 1.05 * decay_radius(p, 0.5 * threshold) + 1.0 / kin.k();
}

double default_dr(const Kinematics& kin) { return std::min(0.002 / kin.k(), 0.002); }

PhaseShiftSet phase_shifts(const PotentialModel& p, const Kinematics& kin, int l_max,
                           double r_max, double dr, int threads) {
  if (l_max < 0) throw DomainError("phase_shifts: l_max must be >= 0");
  const NumerovGrid grid(p, kin, r_max, dr);
  PhaseShiftSet ps;
  ps.k = kin.k();
  ps.l_max = l_max;
  ps.r_max = grid.r1();
  ps.dr = dr;
  compute_shifts(grid, 0, l_max, ps.delta, threads);
  return ps;
}

PhaseShiftSet phase_shifts(const PotentialModel& p, const Kinematics& kin,
                           const PartialWaveSettings& settings) {
  const double r_max = settings.r_max.value_or(default_r_max(p, kin));
  const double dr = settings.dr.value_or(default_dr(kin));
  if (settings.l_max) return phase_shifts(p, kin, *settings.l_max, r_max, dr, settings.threads);

  const NumerovGrid grid(p, kin, r_max, dr);
  PhaseShiftSet ps;
  ps.k = kin.k();
  ps.r_max = grid.r1();
  ps.dr = dr;
  int l_max = std::min(default_l_max(p, kin), settings.l_cap);
  compute_shifts(grid, 0, l_max, ps.delta, settings.threads);
  while (std::abs(ps.delta[l_max]) >= settings.tail_tolerance && l_max < settings.l_cap) {
    const int next = std::min(l_max + 10, settings.l_cap);
    compute_shifts(grid, l_max + 1, next, ps.delta, settings.threads);
    l_max = next;
  }
  ps.l_max = l_max;
  return ps;
}

Amplitude amplitude_partial_wave(const PhaseShiftSet& ps, double theta) {
  if (!(theta >= 0.0 && theta <= kPi))
    throw DomainError("amplitude_partial_wave: theta must lie in [0, pi]");
  if (ps.delta.size() != static_cast<std::size_t>(ps.l_max) + 1 || !(ps.k > 0.0))
    throw DomainError("amplitude_partial_wave: inconsistent phase-shift set");
  const auto p = special::legendre_p_all(ps.l_max, std::cos(theta));
  // (exp(2i d) - 1) / 2i = exp(i d) sin d
  std::complex<double> sum{};
  for (int l = ps.l_max; l >= 0; --l) {
    const double d = ps.delta[l];
    sum += (2.0 * l + 1.0) * std::sin(d) * p[l] * std::polar(1.0, d);
  }
  Amplitude a;
  a.theta = theta;
  a.q = 2.0 * ps.k * std::sin(0.5 * theta);
  a.value = sum / ps.k;
  return a;
}

double partial_wave_total(const PhaseShiftSet& ps) {
  double sum = 0.0;
  for (int l = ps.l_max; l >= 0; --l) {
    const double s = std::sin(ps.delta[l]);
    sum += (2.0 * l + 1.0) * s * s;
  }
  return 4.0 * kPi * sum / (ps.k * ps.k);
}

}  // namespace scatter
