#include "scatter/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "scatter/errors.hpp"

namespace scatter {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double sign(double x) { return (x > 0.0) - (x < 0.0); }

// Fritsch-Carlson monotone slopes with the non-centred three-point end rule.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> d(n, 0.0);
  std::vector<double> h(n - 1);
  std::vector<double> delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    delta[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    d[0] = d[1] = delta[0];
    return d;
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) continue;
    const double w1 = 2.0 * h[i] + h[i - 1];
    const double w2 = h[i] + 2.0 * h[i - 1];
    d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
  }
  auto end_slope = [](double h0, double h1, double d0, double d1) {
    double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (sign(s) != sign(d0)) {
      s = 0.0;
    } else if (sign(d0) != sign(d1) && std::abs(s) > 3.0 * std::abs(d0)) {
      s = 3.0 * d0;
    }
    return s;
  };
  d[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  d[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  return d;
}

// |V| r^2, the weight whose mass defines the effective radius.
double radial_weight(const PotentialModel& p, double r) {
  if (r <= 0.0) {
    return 0.0;
  }
  return std::abs(evaluate(p, r)) * r * r;
}

}  // namespace

Yukawa::Yukawa(double g, double mu) : g_(g), mu_(mu) {
  if (!std::isfinite(g)) throw DomainError("Yukawa: g must be finite");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("Yukawa: mu must be > 0");
}

Gauss::Gauss(double g, double alpha) : g_(g), alpha_(alpha) {
  if (!std::isfinite(g)) throw DomainError("Gauss: g must be finite");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("Gauss: alpha must be > 0");
}

TabulatedRadial::TabulatedRadial(std::vector<double> r, std::vector<double> v,
                                 Interpolation rule)
    : r_(std::move(r)), v_(std::move(v)), rule_(rule) {
  if (r_.size() != v_.size()) throw DomainError("TabulatedRadial: r and V sizes differ");
  if (r_.size() < 2) throw DomainError("TabulatedRadial: need at least two samples");
  if (!(r_.front() >= 0.0)) throw DomainError("TabulatedRadial: first radius must be >= 0");
  double peak = 0.0;
  for (std::size_t i = 0; i < r_.size(); ++i) {
    if (!std::isfinite(r_[i]) || !std::isfinite(v_[i]))
      throw DomainError("TabulatedRadial: samples must be finite");
    if (i > 0 && !(r_[i] > r_[i - 1]))
      throw DomainError("TabulatedRadial: radii must be strictly increasing");
    peak = std::max(peak, std::abs(v_[i]));
  }
  if (std::abs(v_.back()) > 1e-10 * peak)
    throw DomainError("TabulatedRadial: V at the last sample must vanish (|V| <= 1e-10 max|V|)");
  if (rule_ == Interpolation::pchip) slope_ = pchip_slopes(r_, v_);
}

double TabulatedRadial::operator()(double r) const {
  if (r <= r_.front()) return v_.front();
  if (r >= r_.back()) return r == r_.back() ? v_.back() : 0.0;
  const auto it = std::upper_bound(r_.begin(), r_.end(), r);
  const std::size_t i = static_cast<std::size_t>(it - r_.begin()) - 1;
  const double h = r_[i + 1] - r_[i];
  const double t = (r - r_[i]) / h;
  if (rule_ == Interpolation::linear) return v_[i] + t * (v_[i + 1] - v_[i]);
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2.0 * t3 - 3.0 * t2 + 1.0) * v_[i] + (t3 - 2.0 * t2 + t) * h * slope_[i] +
         (-2.0 * t3 + 3.0 * t2) * v_[i + 1] + (t3 - t2) * h * slope_[i + 1];
}

TabulatedRadial TabulatedRadial::scaled(double factor) const {
  std::vector<double> v = v_;
  for (auto& x : v) x *= factor;
  return TabulatedRadial(r_, std::move(v), rule_);
}

double evaluate(const PotentialModel& p, double r) {
  if (!(r >= 0.0)) throw DomainError("potential: r must be >= 0");
  return std::visit(
      overloaded{
          [r](const Yukawa& y) {
            if (r == 0.0) throw SingularityError("Yukawa potential is singular at r = 0");
            return y.g() * std::exp(-y.mu() * r) / r;
          },
          [r](const Gauss& g) { return g.g() * std::exp(-g.alpha() * r * r); },
          [r](const TabulatedRadial& t) { return t(r); },
      },
      p);
}

double fourier3d(const PotentialModel& p, double q, const quad::QuadratureSettings& settings) {
  if (!(q >= 0.0)) throw DomainError("fourier3d: q must be >= 0");
  if (const auto* y = std::get_if<Yukawa>(&p))
    return 4.0 * kPi * y->g() / (q * q + y->mu() * y->mu());
  if (const auto* g = std::get_if<Gauss>(&p))
    return g->g() * std::pow(kPi / g->alpha(), 1.5) * std::exp(-q * q / (4.0 * g->alpha()));
  return fourier3d_radial(p, q, settings);
}

double fourier3d_radial(const PotentialModel& p, double q,
                        const quad::QuadratureSettings& settings) {
  if (!(q >= 0.0)) throw DomainError("fourier3d: q must be >= 0");
  auto integrand = [&](double r) {
    if (r <= 0.0) return 0.0;
    return r * r * evaluate(p, r) * sinc(q * r);
  };
  if (const auto* t = std::get_if<TabulatedRadial>(&p)) {
    // Piecewise over the samples: the interpolant is only C1 at the knots.
    const auto r = t->radii();
    double total = 0.0;
    if (r.front() > 0.0) total += quad::integrate_adaptive(integrand, 0.0, r.front(), settings).value;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      total += quad::integrate_adaptive(integrand, r[i], r[i + 1], settings).value;
    return 4.0 * kPi * total;
  }
  return 4.0 * kPi * quad::integrate_semi_infinite(integrand, settings).value;
}

PotentialModel scaled(const PotentialModel& p, double factor) {
  return std::visit(
      overloaded{
          [factor](const Yukawa& y) -> PotentialModel { return Yukawa(y.g() * factor, y.mu()); },
          [factor](const Gauss& g) -> PotentialModel { return Gauss(g.g() * factor, g.alpha()); },
          [factor](const TabulatedRadial& t) -> PotentialModel { return t.scaled(factor); },
      },
      p);
}

std::optional<double> support_radius(const PotentialModel& p) {
  if (const auto* t = std::get_if<TabulatedRadial>(&p)) return t->last_radius();
  return std::nullopt;
}

double effective_radius(const PotentialModel& p, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw DomainError("effective_radius: fraction must lie in (0, 1)");
  if (const auto* y = std::get_if<Yukawa>(&p)) {
    // int_0^R r e^{-mu r} dr / int_0^inf = 1 - (1 + mu R) e^{-mu R}
    auto cumulative = [&](double R) {
      const double x = y->mu() * R;
      return 1.0 - (1.0 + x) * std::exp(-x);
    };
    double lo = 0.0;
    double hi = 1.0 / y->mu();
    while (cumulative(hi) < fraction) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cumulative(mid) < fraction ? lo : hi) = mid;
    }
    return hi;
  }
  quad::QuadratureSettings s;
  s.rel_tol = 1e-10;
  auto weight = [&](double r) { return radial_weight(p, r); };
  const auto support = support_radius(p);
  auto mass_to = [&](double R) {
    if (R <= 0.0) return 0.0;
    if (support) {
      // Sum piecewise so the table knots never sit inside a Kronrod panel.
      const auto& t = std::get<TabulatedRadial>(p);
      double total = 0.0;
      double a = 0.0;
      for (double knot : t.radii()) {
        const double b = std::min(knot, R);
        if (b > a) total += quad::integrate_adaptive(weight, a, b, s).value;
        a = std::max(a, b);
        if (a >= R) break;
      }
      if (R > a) total += quad::integrate_adaptive(weight, a, std::min(R, *support), s).value;
      return total;
    }
    return quad::integrate_adaptive(weight, 0.0, R, s).value;
  };
  const double total = support ? mass_to(*support) : quad::integrate_semi_infinite(weight, s).value;
  if (!(total > 0.0)) return support ? *support : 0.0;
  double lo = 0.0;
  double hi = support ? *support : 1.0;
  if (!support) {
    while (mass_to(hi) < fraction * total) hi *= 2.0;
  }
  for (int it = 0; it < 100 && hi - lo > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mass_to(mid) < fraction * total ? lo : hi) = mid;
  }
  return hi;
}

double decay_radius(const PotentialModel& p, double threshold) {
  if (!(threshold > 0.0)) throw DomainError("decay_radius: threshold must be > 0");
  if (const auto support = support_radius(p)) return *support;
  auto small = [&](double r) { return std::abs(evaluate(p, r)) <= threshold; };
  double lo = 1.0;
  double hi = 1.0;
  if (small(1.0)) {
    lo = hi / 1.5;
    while (lo > 1e-8 && small(lo)) {
      hi = lo;
      lo /= 1.5;
    }
    if (small(lo)) return lo;
  } else {
    hi = 1.5;
    while (!small(hi)) {
      lo = hi;
      hi *= 1.5;
      if (hi > 1e8) throw RangeError("decay_radius: potential does not decay below threshold");
    }
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (small(mid) ? hi : lo) = mid;
  }
  return hi;
}

TabulatedRadial read_tabulated(std::istream& in, Interpolation rule) {
  std::vector<double> r;
  std::vector<double> v;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    double a = 0.0;
    double b = 0.0;
    if (!(fields >> a)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ConfigError("tabulated potential line " + std::to_string(line_no) + ": expected two numbers");
    }
    std::string extra;
    if (!(fields >> b) || (fields >> extra))
      throw ConfigError("tabulated potential line " + std::to_string(line_no) + ": expected two numbers");
    r.push_back(a);
    v.push_back(b);
  }
  return TabulatedRadial(std::move(r), std::move(v), rule);
}

TabulatedRadial read_tabulated(const std::filesystem::path& path, Interpolation rule) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open tabulated potential file: " + path.string());
  return read_tabulated(in, rule);
}

}  // namespace scatter
