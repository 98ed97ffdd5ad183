#include "core/spectral.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "core/errors.hpp"
#include "core/interp.hpp"

namespace ovalbowl::spectral {

GaussQuadrature gauss_quadrature(int order) {
  if (order < 2) fail(ErrorKind::invalid_argument, "quadrature: order >= 2 required");
  // Golub-Welsch for the monic Hermite recurrence (weight e^{-t^2}): the
  // Jacobi matrix has zero diagonal and off-diagonals sqrt(k/2).
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order - 1);
  for (int k = 1; k < order; ++k) sub[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) fail(ErrorKind::nonconvergence, "quadrature: eigensolve failed");
  GaussQuadrature q;
  q.order = order;
  q.nodes.resize(order);
  q.weights.resize(order);
  for (int k = 0; k < order; ++k) {
    const double t = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    q.nodes[k] = 2.0 * t;                      // y = 2 t
    q.weights[k] = 2.0 * kSqrtPi * v0 * v0;    // dy = 2 dt
  }
  return q;
}

double integrate(const GaussQuadrature& q, const std::function<double(double)>& f) {
  double s = 0.0;
  for (int k = 0; k < q.order; ++k) s += q.weights[k] * f(q.nodes[k]);
  return s;
}

namespace {
// smoothed-trapezoid ramp: derivative rises via 3t^2-2t^3 over a fraction w,
// stays flat, falls symmetrically; plateau 1/(1-w) keeps the integral at 1
constexpr double kRampW = 0.19;

double ramp_unit(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double w = kRampW, p = 1.0 / (1.0 - w);
  auto G = [](double x) { return x * x * x - 0.5 * x * x * x * x; };  // ∫ 3x^2-2x^3
  if (t < w) return p * w * G(t / w);
  if (t <= 1.0 - w) return p * (0.5 * w + (t - w));
  return p * (0.5 * w + (1.0 - 2.0 * w) + w * (0.5 - G((1.0 - t) / w)));
}

double ramp_unit_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double w = kRampW, p = 1.0 / (1.0 - w);
  auto s3 = [](double x) { return x * x * (3.0 - 2.0 * x); };
  if (t < w) return p * s3(t / w);
  if (t <= 1.0 - w) return p;
  return p * s3((1.0 - t) / w);
}
}  // namespace

double Ramp::operator()(double v) const { return ramp_unit((v - lo_) / (hi_ - lo_)); }
double Ramp::deriv(double v) const { return ramp_unit_deriv((v - lo_) / (hi_ - lo_)) / (hi_ - lo_); }

CylindricalProfile::CylindricalProfile(const level::RenormalizedProfile& rp, const CutoffC& cut)
    : v_(rp.y, rp.v, /*zero_extend=*/true), cut_(cut) {}

double CylindricalProfile::operator()(double y) const {
  const double v = std::max(0.0, v_(y));
  return cut_(v) * v;
}

Projections projections(const std::function<double(double)>& v_C, const GaussQuadrature& q) {
  const double sqrt2 = std::sqrt(2.0);
  double i1 = 0.0, iy = 0.0, ipsi = 0.0, inorm = 0.0;
  for (int k = 0; k < q.order; ++k) {
    const double y = q.nodes[k], w = q.weights[k];
    const double f = v_C(y) - sqrt2;
    i1 += w * f;
    iy += w * f * y;
    ipsi += w * f * (y * y - 2.0);
    inorm += w * f * f;
  }
  Projections p;
  p.p1 = i1 / kNorm1Sq;
  p.p2 = iy / kNormYSq;
  p.c0 = ipsi / kNormPsi0Sq;
  p.norm_sq = inorm;
  const double projected =
      p.p1 * p.p1 * kNorm1Sq + p.p2 * p.p2 * kNormYSq + p.c0 * p.c0 * kNormPsi0Sq;
  p.p_minus_norm = std::sqrt(std::max(0.0, inorm - projected));
  return p;
}

double kappa_residual(const std::function<double(double)>& v_C, double tau0,
                      const GaussQuadrature& q) {
  if (!(tau0 < 0.0)) fail(ErrorKind::invalid_argument, "kappa_residual: tau0 must be negative");
  const double sqrt2 = std::sqrt(2.0);
  const double c = 1.0 / (std::sqrt(8.0) * std::abs(tau0));
  double s = 0.0;
  for (int k = 0; k < q.order; ++k) {
    const double y = q.nodes[k];
    const double g = v_C(y) - sqrt2 + c * (y * y - 2.0);
    s += q.weights[k] * g * g;
  }
  return std::abs(tau0) * std::sqrt(s);
}

double eccentricity(const std::function<double(double)>& v_C, const GaussQuadrature& q) {
  double s = 0.0;
  for (int k = 0; k < q.order; ++k) {
    const double y = q.nodes[k];
    s += q.weights[k] * v_C(y) * (2.0 - y * y);
  }
  return s;
}

level::RenormalizedProfile shifted_profile(const pde::Solution& sol, double tau0, double alpha,
                                           const SpectralConfig& cfg) {
  const double h0 = std::exp(-tau0);
  const double h_eff = h0 - alpha;
  level::LevelProfile lp = level::extract_level(sol, h_eff, cfg.cap);
  return level::renormalize_with_scale(lp, h0, cfg.ny);
}

std::pair<double, SpectralReport> find_shift(const pde::Solution& sol, double tau0,
                                             const SpectralConfig& cfg) {
  if (!(tau0 < 0.0)) fail(ErrorKind::invalid_argument, "find_shift: tau0 must be negative");
  const double h0 = std::exp(-tau0);
  const double h_max = cfg.cap * std::abs(sol.xi);
  const double h_min = 8.0 * std::max(sol.grid.hx, sol.grid.hr);
  if (!(h_min < h_max))
    fail(ErrorKind::shift_range, "find_shift: usable level window is empty");

  const GaussQuadrature q = gauss_quadrature(cfg.quad_order);
  const CutoffC cut(cfg.theta);
  const double target = std::sqrt(2.0) * kNorm1Sq;  // <sqrt(2), 1>

  auto g_of_alpha = [&](double alpha) {
    const level::RenormalizedProfile rp = shifted_profile(sol, tau0, alpha, cfg);
    const CylindricalProfile vc(rp, cut);
    double s = 0.0;
    for (int k = 0; k < q.order; ++k) s += q.weights[k] * vc(q.nodes[k]);
    return s - target;
  };

  // p^M(alpha) is monotonically decreasing; bracket by geometric expansion
  // within the usable level window h_eff = h0 - alpha in (h_min, h_max]
  const double alpha_lo_limit = h0 - h_max;  // most negative allowed
  const double alpha_hi_limit = h0 - h_min;
  const double a0 = std::clamp(0.0, alpha_lo_limit, alpha_hi_limit);
  double g0 = g_of_alpha(a0);
  double lo = a0, hi = a0, glo = g0, ghi = g0;
  double step = 0.05 * h0;
  while (glo < 0.0) {  // need smaller alpha (deeper level) to fatten the profile
    if (lo <= alpha_lo_limit + 1e-12 * h0)
      fail(ErrorKind::shift_range, "find_shift: root below the usable level range");
    lo = std::max(lo - step, alpha_lo_limit);
    glo = g_of_alpha(lo);
    step *= 2.0;
  }
  step = 0.05 * h0;
  while (ghi > 0.0) {
    if (hi >= alpha_hi_limit - 1e-12 * h0)
      fail(ErrorKind::shift_range, "find_shift: root above the usable level range");
    hi = std::min(hi + step, alpha_hi_limit);
    ghi = g_of_alpha(hi);
    step *= 2.0;
  }
  const double alpha =
      (glo == 0.0) ? lo
                   : (ghi == 0.0 ? hi : interp::brent_root(g_of_alpha, lo, hi, 1e-13 * h0));

  const level::RenormalizedProfile rp = shifted_profile(sol, tau0, alpha, cfg);
  const CylindricalProfile vc(rp, cut);
  auto f = [&](double y) { return vc(y); };
  const Projections pr = projections(f, q);

  SpectralReport rep;
  rep.tau0 = tau0;
  rep.alpha_shift = alpha;
  rep.p_plus_residual =
      std::sqrt(pr.p1 * pr.p1 * kNorm1Sq + pr.p2 * pr.p2 * kNormYSq);
  rep.c0 = pr.c0;
  rep.p_minus_norm = pr.p_minus_norm;
  rep.kappa_residual = kappa_residual(f, tau0, q);
  rep.eccentricity = eccentricity(f, q);
  rep.theta = cfg.theta;
  rep.quad_order = cfg.quad_order;
  rep.cap = cfg.cap;
  rep.a = sol.domain.a;
  rep.xi = sol.xi;
  rep.h0 = h0;
  if (rep.p_plus_residual > cfg.centering_tol)
    fail(ErrorKind::shift_range,
         "find_shift: centering residual " + std::to_string(rep.p_plus_residual) +
             " above tolerance");
  return {alpha, rep};
}

}  // namespace ovalbowl::spectral
