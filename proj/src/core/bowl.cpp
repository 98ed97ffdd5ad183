#include "core/bowl.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "core/errors.hpp"
#include "core/interp.hpp"

namespace ovalbowl::bowl {

namespace {

struct State {
  double u, p;
};

// u' = p, p' = (1+p^2)(c - (d-1) p / r); regular for r > 0
State rhs(int d, double c, double r, const State& s) {
  return {s.p, (1.0 + s.p * s.p) * (c - (d - 1) * s.p / r)};
}

State rk4_step(int d, double c, double r, const State& s, double h) {
  const State k1 = rhs(d, c, r, s);
  const State k2 = rhs(d, c, r + 0.5 * h, {s.u + 0.5 * h * k1.u, s.p + 0.5 * h * k1.p});
  const State k3 = rhs(d, c, r + 0.5 * h, {s.u + 0.5 * h * k2.u, s.p + 0.5 * h * k2.p});
  const State k4 = rhs(d, c, r + h, {s.u + h * k3.u, s.p + h * k3.p});
  return {s.u + h / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
          s.p + h / 6.0 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p)};
}

}  // namespace

Profile integrate(int dimension, double speed, double r_max, double step) {
  if (dimension != 2 && dimension != 3)
    fail(ErrorKind::invalid_argument, "bowl: dimension must be 2 or 3");
  if (!(speed > 0.0)) fail(ErrorKind::invalid_argument, "bowl: speed must be positive");
  if (!(r_max > 0.0)) fail(ErrorKind::invalid_argument, "bowl: r_max must be positive");
  if (!(step > 0.0) || step > r_max / 100.0)
    fail(ErrorKind::invalid_argument, "bowl: need 0 < step <= r_max/100");

  const int n = static_cast<int>(std::ceil(r_max / step - 1e-12));
  const double h = r_max / n;  // h <= step, uniform, lands on r_max
  const int d = dimension;
  const double c = speed;
  const double alpha = c / d;  // u''(0)

  Profile prof;
  prof.dimension = d;
  prof.speed = c;
  prof.step = h;
  prof.r.resize(n + 1);
  prof.u.resize(n + 1);

  // series: u = a r^2/2 + a^3 r^4 / (4(d+2)),  p = a r + a^3 r^3 / (d+2)
  const int k_series = std::min(10, n);
  for (int k = 0; k <= k_series; ++k) {
    const double rr = k * h;
    prof.r[k] = rr;
    prof.u[k] = 0.5 * alpha * rr * rr + std::pow(alpha, 3) * std::pow(rr, 4) / (4.0 * (d + 2));
  }
  const double rs = k_series * h;
  State s{prof.u[k_series], alpha * rs + std::pow(alpha, 3) * std::pow(rs, 3) / (d + 2)};
  for (int k = k_series; k < n; ++k) {
    s = rk4_step(d, c, k * h, s, h);
    prof.r[k + 1] = (k + 1) * h;
    prof.u[k + 1] = s.u;
  }

  const double res = prof.max_ode_residual();
  if (res > 10.0 * h * h)
    fail(ErrorKind::integration_accuracy,
         "bowl: ODE residual " + std::to_string(res) + " exceeds 10*step^2; reduce step");
  return prof;
}

Profile reference_z0(double speed, double rho_max, double step) {
  Profile p = integrate(2, speed, rho_max, step);
  for (auto& v : p.u) v = -v;
  return p;
}

double Profile::value(double rr) const {
  interp::CubicSpline s(r, u);
  return s(rr);
}

double Profile::slope(double rr) const {
  interp::CubicSpline s(r, u);
  return s.deriv(rr);
}

double Profile::radius_for_depth(double depth) const {
  if (depth < 0.0 || depth > std::abs(u.back()))
    fail(ErrorKind::range, "bowl: depth outside profile range");
  interp::CubicSpline s(r, u);
  const double sign = u.back() >= 0.0 ? 1.0 : -1.0;
  return interp::brent_root([&](double rr) { return s(rr) - sign * depth; }, 0.0, r.back(),
                            1e-14 * r.back());
}

double Profile::second_deriv_at_zero() const {
  // even extension across r=0: u(-r) = u(r)
  const double h = step;
  return (-2.0 * u[2] + 32.0 * u[1] - 30.0 * u[0]) / (12.0 * h * h);
}

double Profile::max_ode_residual() const {
  const double h = step;
  double worst = 0.0;
  for (std::size_t k = 1; k + 1 < r.size(); ++k) {
    const double upp = (u[k + 1] - 2.0 * u[k] + u[k - 1]) / (h * h);
    const double up = (u[k + 1] - u[k - 1]) / (2.0 * h);
    const double res = upp / (1.0 + up * up) + (dimension - 1) * up / r[k] - speed;
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

bool Profile::convex() const {
  for (std::size_t k = 1; k + 1 < r.size(); ++k)
    if (u[k + 1] - 2.0 * u[k] + u[k - 1] <= 0.0) return false;
  return true;
}

void write_csv(const Profile& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::io, "bowl: cannot open " + path);
  char buf[128];
  std::snprintf(buf, sizeof buf, "# bowl dimension=%d speed=%.17g step=%.17g\n", p.dimension,
                p.speed, p.step);
  out << buf;
  for (std::size_t k = 0; k < p.r.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.r[k], p.u[k]);
    out << buf;
  }
}

}  // namespace ovalbowl::bowl
