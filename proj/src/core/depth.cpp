#include "core/depth.hpp"

#include <algorithm>
#include <cmath>

#include "core/bowl.hpp"
#include "core/errors.hpp"
#include "core/interp.hpp"

namespace ovalbowl::pde {

namespace {

// cached radial bowls for depth estimates, re-integrated when too short.
// The slope relaxes like p' ~ -(1+p^2)/r, so explicit RK needs step ~ 1/r
// at large radius.
const bowl::Profile& bowl_for(int dim, double depth_needed) {
  static bowl::Profile b2 = bowl::integrate(2, 1.0, 20.0, 0.02);
  static bowl::Profile b3 = bowl::integrate(3, 1.0, 20.0, 0.02);
  bowl::Profile& b = dim == 2 ? b2 : b3;
  while (std::abs(b.u.back()) < depth_needed) {
    const double r_new = b.r_max() * 1.6;
    const double step = std::min(r_new / 4000.0, 1.5 / r_new);
    b = bowl::integrate(dim, 1.0, r_new, step);
  }
  return b;
}

}  // namespace

double xi_estimate(double a, double R) {
  const double r_ell = 2.0 * R / (1.0 - a);
  const double guard = 0.5 * r_ell * r_ell + 10.0;
  const bowl::Profile& b2 = bowl_for(2, guard);
  const bowl::Profile& b3 = bowl_for(3, guard);
  interp::CubicSpline s2(b2.r, b2.u), s3(b3.r, b3.u);
  const double w3 = std::clamp(3.0 * a, 0.0, 1.0);
  return -(w3 * s3(r_ell) + (1.0 - w3) * s2(r_ell));
}

double radius_for_xi_estimate(double a, double xi_target) {
  if (!(xi_target < 0.0)) fail(ErrorKind::invalid_argument, "depth: xi_target must be negative");
  double lo = 1e-3, hi = 1.0;
  while (xi_estimate(a, hi) > xi_target) {
    hi *= 2.0;
    if (hi > 1e7) fail(ErrorKind::range, "depth: xi_target out of reach");
  }
  return interp::brent_root([&](double R) { return xi_estimate(a, R) - xi_target; }, lo, hi,
                            1e-10 * hi);
}

namespace {

std::vector<double> warm_start_guess(const Domain& dom, const Grid& grid, double xi_est,
                                     const Solution& prev) {
  // map the previous solution by scaling each semiaxis and rescaling depth
  const double sx = prev.domain.semi_x() / dom.semi_x();
  const double sr = prev.domain.semi_r() / dom.semi_r();
  double scale = xi_est / prev.xi;
  scale = std::clamp(scale, 0.05, 20.0);
  const Grid& pg = prev.grid;
  std::vector<double> u(grid.mask.size(), 0.0);
  for (int j = 0; j < grid.nr; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      if (!grid.is_interior(i, j)) continue;
      const double x = grid.x(i) * sx, r = grid.r(j) * sr;
      double v;
      if (!prev.domain.inside(x, r)) {
        v = 0.0;
      } else {
        const double fi = (x - pg.x_min) / pg.hx;
        const double fj = r / pg.hr;
        const int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, pg.nx - 2);
        const int j0 = std::clamp(static_cast<int>(std::floor(fj)), 0, pg.nr - 2);
        const double tx = fi - i0, tr = fj - j0;
        v = (1 - tx) * (1 - tr) * prev.u[pg.idx(i0, j0)] +
            tx * (1 - tr) * prev.u[pg.idx(i0 + 1, j0)] +
            (1 - tx) * tr * prev.u[pg.idx(i0, j0 + 1)] +
            tx * tr * prev.u[pg.idx(i0 + 1, j0 + 1)];
        v *= scale;
      }
      u[grid.idx(i, j)] = std::min(v, 0.0);
    }
  return u;
}

}  // namespace

Solution solve_at_radius(double a, double R, const SolveConfig& cfg, const Solution* warm) {
  const Domain dom = make_domain(a, R);
  const Grid grid = make_grid(dom, cfg.nx, cfg.nr);
  const double xi_est = xi_estimate(a, R);
  std::vector<double> u0 = warm != nullptr ? warm_start_guess(dom, grid, xi_est, *warm)
                                           : paraboloid_guess(dom, grid, xi_est);
  return newton_solve(dom, grid, u0, cfg.newton);
}

Solution find_R_for_depth(double a, double xi_target, const SolveConfig& cfg,
                          const Solution* warm) {
  if (!(xi_target < 0.0)) fail(ErrorKind::invalid_argument, "depth: xi_target must be negative");
  if (a <= cfg.a_min || a > 1.0 / 3.0 + 1e-12)
    fail(ErrorKind::invalid_argument, "depth: a outside (a_min, 1/3]");

  const double tol = cfg.depth_tol * std::abs(xi_target);
  const double R_tgt = radius_for_xi_estimate(a, xi_target);
  const double R_min = R_tgt / 100.0, R_max = R_tgt * 100.0;

  Solution cur;
  bool have = false;
  if (warm != nullptr && warm->domain.a == a) {
    cur = *warm;
    have = true;
  }

  // walk toward the estimated radius in moderate steps so Newton stays warm
  double R_next = R_tgt;
  if (!have) {
    const double R_easy =
        radius_for_xi_estimate(a, -std::min(std::abs(xi_target), 25.0));
    double R = std::min(R_easy, R_tgt);
    cur = solve_at_radius(a, R, cfg, warm);
    have = true;
  }
  while (cur.domain.R < R_tgt / 1.8 || cur.domain.R > R_tgt * 1.8) {
    const double R = cur.domain.R < R_tgt ? std::min(cur.domain.R * 1.8, R_tgt)
                                          : std::max(cur.domain.R / 1.8, R_tgt);
    cur = solve_at_radius(a, R, cfg, &cur);
  }
  if (std::abs(cur.domain.R / R_tgt - 1.0) > 1e-12 && std::abs(cur.xi - xi_target) > tol)
    cur = solve_at_radius(a, R_tgt, cfg, &cur);

  // secant in (log R, log(-xi)) with a bisection fallback on the bracket
  double lo_R = 0.0, hi_R = 0.0;  // xi(lo_R) > target > xi(hi_R)
  bool have_lo = false, have_hi = false;
  double prev_R = 0.0, prev_xi = 0.0;
  bool have_prev = false;
  for (int it = 0; it < cfg.max_depth_iter; ++it) {
    if (std::abs(cur.xi - xi_target) <= tol) return cur;
    if (cur.xi > xi_target) {
      lo_R = std::max(have_lo ? lo_R : 0.0, cur.domain.R);
      have_lo = true;
    } else {
      hi_R = have_hi ? std::min(hi_R, cur.domain.R) : cur.domain.R;
      have_hi = true;
    }
    double R_prop;
    if (have_prev && cur.xi != prev_xi && cur.domain.R != prev_R) {
      const double s = (std::log(-xi_target) - std::log(-cur.xi)) /
                       (std::log(-cur.xi) - std::log(-prev_xi));
      R_prop = std::exp(std::log(cur.domain.R) +
                        s * (std::log(cur.domain.R) - std::log(prev_R)));
    } else {
      // local power law xi ~ -c R^p with p between 1 (slab) and 2 (cap)
      const double p = 1.5;
      R_prop = cur.domain.R * std::pow(xi_target / cur.xi, 1.0 / p);
    }
    if (have_lo && have_hi) {
      if (!(R_prop > lo_R && R_prop < hi_R)) R_prop = std::sqrt(lo_R * hi_R);
    }
    R_prop = std::clamp(R_prop, R_min, R_max);
    if (R_prop == R_min || R_prop == R_max)
      fail(ErrorKind::range, "depth: no bracket for xi_target within the configured R range");
    prev_R = cur.domain.R;
    prev_xi = cur.xi;
    have_prev = true;
    cur = solve_at_radius(a, R_prop, cfg, &cur);
  }
  fail(ErrorKind::nonconvergence, "depth: secant did not reach the target depth");
}

}  // namespace ovalbowl::pde
