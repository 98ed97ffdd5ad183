#include "core/level.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "core/errors.hpp"
#include "core/interp.hpp"

namespace ovalbowl::level {

namespace {

// Root of the monotone restriction of samples (t_k, f_k) to the bracket
// [t_lo, t_hi] where f crosses `target`, via a monotone cubic through up to 4
// surrounding samples.
double bracket_root(const std::vector<double>& t, const std::vector<double>& f, std::size_t k,
                    double target, const char* what) {
  const std::size_t lo = k > 0 ? k - 1 : k;
  const std::size_t hi = std::min(k + 2, t.size() - 1);
  std::vector<double> ts(t.begin() + lo, t.begin() + hi + 1);
  std::vector<double> fs(f.begin() + lo, f.begin() + hi + 1);
  for (std::size_t m = 1; m < fs.size(); ++m)
    if (!(fs[m] > fs[m - 1]))
      fail(ErrorKind::extraction, std::string(what) + ": non-monotone samples at the crossing");
  interp::MonotoneCubic mc(ts, fs);
  return interp::brent_root([&](double tt) { return mc(tt) - target; }, t[k], t[k + 1],
                            1e-14 * (std::abs(t[k + 1]) + 1.0));
}

}  // namespace

LevelProfile extract_level(const pde::Solution& sol, double h, double cap) {
  const pde::Grid& g = sol.grid;
  const double xi = sol.xi;
  if (!(h > 0.0) || h >= -xi) fail(ErrorKind::range, "extract_level: need 0 < h < -xi");
  if (h > cap * (-xi))
    fail(ErrorKind::range, "extract_level: h exceeds the boundary-contamination cap");
  const double L = xi + h;
  const int ic = g.center_i();

  // axis crossings from the r = 0 row
  auto axis_crossing = [&](int dir) {
    std::vector<double> xs, us;
    for (int i = ic;; i += dir) {
      if (i < 0 || i >= g.nx || !g.is_interior(i, 0)) break;
      xs.push_back(dir * g.x(i));  // walk in increasing coordinate
      us.push_back(sol.u[g.idx(i, 0)]);
    }
    if (xs.size() < 4) fail(ErrorKind::extraction, "extract_level: axis row too short");
    for (std::size_t k = 0; k + 1 < xs.size(); ++k)
      if (us[k] <= L && L < us[k + 1]) return bracket_root(xs, us, k, L, "axis");
    fail(ErrorKind::extraction, "extract_level: level does not cross the axis row");
  };
  const double d_plus = axis_crossing(+1);
  const double d_minus = axis_crossing(-1);

  LevelProfile lp;
  lp.h = h;
  lp.d_plus = d_plus;
  lp.d_minus = d_minus;
  lp.x.push_back(-d_minus);
  lp.V.push_back(0.0);
  for (int i = 0; i < g.nx; ++i) {
    const double x = g.x(i);
    if (x <= -d_minus || x >= d_plus) continue;
    if (!g.is_interior(i, 0) || sol.u[g.idx(i, 0)] >= L) continue;
    std::vector<double> rs, us;
    for (int j = 0; j < g.nr && g.is_interior(i, j); ++j) {
      rs.push_back(g.r(j));
      us.push_back(sol.u[g.idx(i, j)]);
    }
    bool found = false;
    for (std::size_t k = 0; k + 1 < rs.size(); ++k)
      if (us[k] <= L && L < us[k + 1]) {
        lp.x.push_back(x);
        lp.V.push_back(bracket_root(rs, us, k, L, ("column i=" + std::to_string(i)).c_str()));
        found = true;
        break;
      }
    if (!found)
      fail(ErrorKind::extraction,
           "extract_level: no radial crossing in column i=" + std::to_string(i));
  }
  lp.x.push_back(d_plus);
  lp.V.push_back(0.0);
  return lp;
}

double RenormalizedProfile::v_max() const {
  double m = 0.0;
  for (double vv : v) m = std::max(m, vv);
  return m;
}

RenormalizedProfile renormalize_with_scale(const LevelProfile& lp, double h_scale, int ny) {
  if (!(h_scale > 0.0)) fail(ErrorKind::invalid_argument, "renormalize: h_scale must be positive");
  RenormalizedProfile rp;
  rp.h_scale = h_scale;
  rp.tau = -std::log(h_scale);
  const double s = 1.0 / std::sqrt(h_scale);
  rp.raw_y.reserve(lp.x.size());
  rp.raw_v.reserve(lp.x.size());
  for (std::size_t k = 0; k < lp.x.size(); ++k) {
    rp.raw_y.push_back(lp.x[k] * s);
    rp.raw_v.push_back(lp.V[k] * s);
  }
  interp::CubicSpline spline(lp.x, lp.V);
  rp.y.resize(ny);
  rp.v.resize(ny);
  const double y0 = -lp.d_minus * s, y1 = lp.d_plus * s;
  for (int k = 0; k < ny; ++k) {
    const double y = y0 + (y1 - y0) * k / (ny - 1);
    rp.y[k] = y;
    rp.v[k] = std::max(0.0, spline(y / s) * s);
  }
  rp.v.front() = 0.0;
  rp.v.back() = 0.0;
  return rp;
}

RenormalizedProfile renormalize(const LevelProfile& lp, int ny) {
  return renormalize_with_scale(lp, lp.h, ny);
}

InverseProfile invert_profile(const RenormalizedProfile& rp, Side side, int nv) {
  const auto& ry = rp.raw_y;
  const auto& rv = rp.raw_v;
  const std::size_t n = ry.size();
  if (n < 5) fail(ErrorKind::inversion, "invert_profile: too few samples");
  std::size_t kmax = 0;
  for (std::size_t k = 1; k < n; ++k)
    if (rv[k] > rv[kmax]) kmax = k;

  // walk from the endpoint toward the maximum collecting strictly monotone v
  std::vector<double> vs, ys;
  if (side == Side::right) {
    for (std::size_t k = n - 1; k + 1 > kmax + 1; --k) {  // k from n-1 down to kmax+1
      if (!vs.empty() && !(rv[k] > vs.back())) {
        if (k > kmax + 2)
          fail(ErrorKind::inversion, "invert_profile: right side not monotone");
        break;
      }
      vs.push_back(rv[k]);
      ys.push_back(ry[k]);
    }
  } else {
    for (std::size_t k = 0; k < kmax; ++k) {
      if (!vs.empty() && !(rv[k] > vs.back())) {
        if (k + 2 < kmax) fail(ErrorKind::inversion, "invert_profile: left side not monotone");
        break;
      }
      vs.push_back(rv[k]);
      ys.push_back(ry[k]);
    }
  }
  if (vs.size() < 4) fail(ErrorKind::inversion, "invert_profile: side branch too short");

  interp::MonotoneCubic yv(vs, ys);
  InverseProfile inv;
  inv.side = side;
  inv.tau = rp.tau;
  inv.v_max = vs.back();
  inv.v.resize(nv);
  inv.Y.resize(nv);
  for (int k = 0; k < nv; ++k) {
    const double v = inv.v_max * k / (nv - 1);
    inv.v[k] = v;
    inv.Y[k] = yv(v);
  }
  inv.Y[0] = ys.front();
  inv.y_at_zero = inv.Y[0];
  return inv;
}

InverseProfile invert_from_rows(const pde::Solution& sol, double h_eff, double h_scale,
                                Side side, int nv) {
  const pde::Grid& g = sol.grid;
  if (!(h_eff > 0.0) || h_eff >= -sol.xi)
    fail(ErrorKind::range, "invert_from_rows: level outside (0, -xi)");
  const double L = sol.xi + h_eff;
  const double s = 1.0 / std::sqrt(h_scale);
  const int ic = g.center_i();
  const int dir = side == Side::right ? +1 : -1;

  // axis anchor
  std::vector<double> xs, us;
  for (int i = ic;; i += dir) {
    if (i < 0 || i >= g.nx || !g.is_interior(i, 0)) break;
    xs.push_back(dir * g.x(i));
    us.push_back(sol.u[g.idx(i, 0)]);
  }
  if (xs.size() < 4) fail(ErrorKind::extraction, "invert_from_rows: axis row too short");
  double x_axis = 0.0;
  bool found = false;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k)
    if (us[k] <= L && L < us[k + 1]) {
      x_axis = bracket_root(xs, us, k, L, "axis");
      found = true;
      break;
    }
  if (!found) fail(ErrorKind::extraction, "invert_from_rows: level does not cross the axis");

  std::vector<double> vs{0.0}, ys{dir * x_axis * s};
  double prev_x = x_axis;
  for (int j = 1; j < g.nr; ++j) {
    const double v = g.r(j) * s;
    if (v > 1.0) break;
    std::vector<double> rxs, rus;
    for (int i = ic;; i += dir) {
      if (i < 0 || i >= g.nx || !g.is_interior(i, j)) break;
      rxs.push_back(dir * g.x(i));
      rus.push_back(sol.u[g.idx(i, j)]);
    }
    if (rxs.size() < 4) break;
    bool got = false;
    double xc = 0.0;
    for (std::size_t k = 0; k + 1 < rxs.size(); ++k)
      if (rus[k] <= L && L < rus[k + 1]) {
        xc = bracket_root(rxs, rus, k, L, "row");
        got = true;
        break;
      }
    if (!got) break;                  // row above the level's widest radius
    if (!(xc < prev_x)) break;        // reached the vertical tangent
    prev_x = xc;
    vs.push_back(v);
    ys.push_back(dir * xc * s);
  }
  if (vs.size() < 4) fail(ErrorKind::inversion, "invert_from_rows: tip branch too short");

  interp::MonotoneCubic yv(vs, ys);
  InverseProfile inv;
  inv.side = side;
  inv.tau = -std::log(h_scale);
  inv.v_max = vs.back();
  inv.v.resize(nv);
  inv.Y.resize(nv);
  for (int k = 0; k < nv; ++k) {
    inv.v[k] = inv.v_max * k / (nv - 1);
    inv.Y[k] = yv(inv.v[k]);
  }
  inv.Y[0] = ys.front();
  inv.y_at_zero = inv.Y[0];
  return inv;
}

TipProfile zoom_tip(const InverseProfile& inv, double tau, double rho_max, int n) {
  const double root = std::sqrt(std::abs(tau));
  if (rho_max / root > inv.v_max + 1e-12)
    fail(ErrorKind::range, "zoom_tip: rho_max exceeds the inverted profile's v range");
  interp::MonotoneCubic yv(inv.v, inv.Y);
  TipProfile tp;
  tp.tau = tau;
  tp.rho.resize(n);
  tp.Z.resize(n);
  const double sgn = inv.side == Side::right ? 1.0 : -1.0;
  for (int k = 0; k < n; ++k) {
    const double rho = rho_max * k / (n - 1);
    tp.rho[k] = rho;
    tp.Z[k] = root * sgn * (yv(std::min(rho / root, inv.v_max)) - inv.y_at_zero);
  }
  tp.Z[0] = 0.0;
  return tp;
}

std::vector<CurvatureSample> levelset_mean_curvatures(const pde::Solution& sol,
                                                      const LevelProfile& lp, double slope_cap) {
  const pde::Grid& g = sol.grid;
  // nodal gradient fields (centered differences at interior nodes)
  std::vector<double> px(g.mask.size(), 0.0), pr(g.mask.size(), 0.0);
  std::vector<bool> have(g.mask.size(), false);
  for (int j = 0; j < g.nr; ++j)
    for (int i = 1; i + 1 < g.nx; ++i) {
      if (!g.is_interior(i, j)) continue;
      if (!g.is_interior(i + 1, j) || !g.is_interior(i - 1, j)) continue;
      if (j + 1 >= g.nr || !g.is_interior(i, j + 1)) continue;
      if (j > 0 && !g.is_interior(i, j - 1)) continue;
      px[g.idx(i, j)] = (sol.u[g.idx(i + 1, j)] - sol.u[g.idx(i - 1, j)]) / (2.0 * g.hx);
      pr[g.idx(i, j)] = j == 0 ? 0.0
                               : (sol.u[g.idx(i, j + 1)] - sol.u[g.idx(i, j - 1)]) / (2.0 * g.hr);
      have[g.idx(i, j)] = true;
    }

  auto interp_field = [&](const std::vector<double>& f, double x, double r, bool& ok) {
    const double fi = (x - g.x_min) / g.hx, fj = r / g.hr;
    const int i0 = std::clamp(static_cast<int>(std::floor(fi)), 0, g.nx - 2);
    const int j0 = std::clamp(static_cast<int>(std::floor(fj)), 0, g.nr - 2);
    ok = have[g.idx(i0, j0)] && have[g.idx(i0 + 1, j0)] && have[g.idx(i0, j0 + 1)] &&
         have[g.idx(i0 + 1, j0 + 1)];
    const double tx = fi - i0, tr = fj - j0;
    return (1 - tx) * (1 - tr) * f[g.idx(i0, j0)] + tx * (1 - tr) * f[g.idx(i0 + 1, j0)] +
           (1 - tx) * tr * f[g.idx(i0, j0 + 1)] + tx * tr * f[g.idx(i0 + 1, j0 + 1)];
  };

  const double v_floor = 4.0 * std::max(g.hx, g.hr);
  std::vector<CurvatureSample> out;
  // interior samples sit on uniform columns: skip the two endpoint samples
  for (std::size_t k = 2; k + 2 < lp.x.size(); ++k) {
    CurvatureSample cs;
    cs.x = lp.x[k];
    const double hxs = lp.x[k + 1] - lp.x[k];
    const bool uniform = std::abs((lp.x[k] - lp.x[k - 1]) - hxs) < 1e-9 * hxs;
    const double V = lp.V[k];
    if (!uniform || V < v_floor) {
      out.push_back(cs);
      continue;
    }
    const double Vx = (lp.V[k + 1] - lp.V[k - 1]) / (2.0 * hxs);
    if (std::abs(Vx) > slope_cap) {
      out.push_back(cs);
      continue;
    }
    const double Vxx = (lp.V[k + 1] - 2.0 * lp.V[k] + lp.V[k - 1]) / (hxs * hxs);
    const double w2 = 1.0 + Vx * Vx;
    cs.H_h = -Vxx / std::pow(w2, 1.5) + 1.0 / (V * std::sqrt(w2));
    bool okx = false, okr = false;
    const double ux = interp_field(px, lp.x[k], V, okx);
    const double ur = interp_field(pr, lp.x[k], V, okr);
    if (!(okx && okr)) {
      out.push_back(cs);
      continue;
    }
    cs.H = 1.0 / std::sqrt(1.0 + ux * ux + ur * ur);
    cs.valid = true;
    out.push_back(cs);
  }
  return out;
}

std::vector<std::pair<double, double>> dense_curve(const LevelProfile& lp, int factor) {
  interp::CubicSpline spline(lp.x, lp.V);
  std::vector<std::pair<double, double>> pts;
  const std::size_t n = (lp.x.size() - 1) * factor + 1;
  const double x0 = lp.x.front(), x1 = lp.x.back();
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = x0 + (x1 - x0) * static_cast<double>(k) / (n - 1);
    pts.emplace_back(x, std::max(0.0, spline(x)));
  }
  pts.front().second = 0.0;
  pts.back().second = 0.0;
  return pts;
}

namespace {
double point_segment_dist2(double px, double py, const std::pair<double, double>& a,
                           const std::pair<double, double>& b) {
  const double vx = b.first - a.first, vy = b.second - a.second;
  const double wx = px - a.first, wy = py - a.second;
  const double vv = vx * vx + vy * vy;
  double t = vv > 0.0 ? (wx * vx + wy * vy) / vv : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double dx = wx - t * vx, dy = wy - t * vy;
  return dx * dx + dy * dy;
}

double directed_hausdorff(const std::vector<std::pair<double, double>>& A,
                          const std::vector<std::pair<double, double>>& B) {
  // both curves are x-monotone graphs: scan outward from the x-nearest segment
  std::vector<double> bx(B.size());
  for (std::size_t k = 0; k < B.size(); ++k) bx[k] = B[k].first;
  double worst = 0.0;
  for (const auto& p : A) {
    auto it = std::lower_bound(bx.begin(), bx.end(), p.first);
    std::ptrdiff_t k0 = std::clamp<std::ptrdiff_t>(it - bx.begin() - 1, 0,
                                                   static_cast<std::ptrdiff_t>(B.size()) - 2);
    double best = point_segment_dist2(p.first, p.second, B[k0], B[k0 + 1]);
    for (std::ptrdiff_t dk = 1;; ++dk) {
      bool widened = false;
      const std::ptrdiff_t kl = k0 - dk, kr = k0 + dk;
      if (kl >= 0) {
        const double gap = p.first - bx[kl + 1];
        if (gap * gap < best) {
          best = std::min(best, point_segment_dist2(p.first, p.second, B[kl], B[kl + 1]));
          widened = true;
        }
      }
      if (kr + 1 < static_cast<std::ptrdiff_t>(B.size())) {
        const double gap = bx[kr] - p.first;
        if (gap * gap < best) {
          best = std::min(best, point_segment_dist2(p.first, p.second, B[kr], B[kr + 1]));
          widened = true;
        }
      }
      if (!widened) break;
    }
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}
}  // namespace

double hausdorff_distance(const std::vector<std::pair<double, double>>& A,
                          const std::vector<std::pair<double, double>>& B) {
  if (A.size() < 2 || B.size() < 2)
    fail(ErrorKind::invalid_argument, "hausdorff: need polylines with >= 2 points");
  return std::max(directed_hausdorff(A, B), directed_hausdorff(B, A));
}

}  // namespace ovalbowl::level
