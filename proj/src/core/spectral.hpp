#pragma once
#include <functional>
#include <vector>

#include "core/interp.hpp"
#include "core/level.hpp"
#include "core/pde.hpp"

namespace ovalbowl::spectral {

// Quadrature for the Gaussian pairing <f,g> = ∫ f g e^{-y^2/4} dy:
// Gauss-Hermite nodes/weights for e^{-t^2} with y = 2t, weights doubled.
struct GaussQuadrature {
  int order = 0;
  std::vector<double> nodes, weights;
};

GaussQuadrature gauss_quadrature(int order);

// moment constants of the weight e^{-y^2/4}
inline constexpr double kSqrtPi = 1.7724538509055160273;
inline constexpr double kNorm1Sq = 2.0 * kSqrtPi;    // <1,1>
inline constexpr double kNormYSq = 4.0 * kSqrtPi;    // <y,y>
inline constexpr double kNormPsi0Sq = 16.0 * kSqrtPi;  // <y^2-2, y^2-2>

double integrate(const GaussQuadrature& q, const std::function<double(double)>& f);

// C^2 monotone ramp from 0 to 1 on [lo, hi] with max slope < 4.94/(hi-lo)
// (smoothed-trapezoid derivative profile).
class Ramp {
 public:
  Ramp() = default;
  Ramp(double lo, double hi) : lo_(lo), hi_(hi) {}
  double operator()(double v) const;
  double deriv(double v) const;

 private:
  double lo_ = 0.0, hi_ = 1.0;
};

// cylindrical cutoff phi_C: 0 for v <= 5θ/8, 1 for v >= 7θ/8, 0 <= phi' <= 5/θ
struct CutoffC {
  double theta = 0.2;
  Ramp ramp;
  explicit CutoffC(double th) : theta(th), ramp(5.0 * th / 8.0, 7.0 * th / 8.0) {}
  CutoffC() : CutoffC(0.2) {}
  double operator()(double v) const { return ramp(v); }
  double deriv(double v) const { return ramp.deriv(v); }
};

// tip cutoff phi_T: 1 for v <= θ, 0 for v >= 2θ
struct CutoffT {
  double theta = 0.2;
  Ramp ramp;
  explicit CutoffT(double th) : theta(th), ramp(th, 2.0 * th) {}
  double operator()(double v) const { return 1.0 - ramp(v); }
};

// zeta for the tip weight: 0 for v <= θ/4, 1 for v >= θ/2
struct Zeta {
  double theta = 0.2;
  Ramp ramp;
  explicit Zeta(double th) : theta(th), ramp(th / 4.0, th / 2.0) {}
  double operator()(double v) const { return ramp(v); }
};

struct SpectralConfig {
  double theta = 0.2;
  int quad_order = 80;
  double cap = 0.3;             // usable levels: h <= cap * |xi|
  double centering_tol = 1e-8;  // on the unstable-projection norm after the shift
  int ny = 2048;
  int nv = 1024;
  double tau0 = -5.0;
};

struct SpectralReport {
  double tau0 = 0.0;
  double alpha_shift = 0.0;
  double p_plus_residual = 0.0;  // Gaussian norm of the unstable projection of v_C - sqrt(2)
  double c0 = 0.0;               // psi_0 = y^2-2 coefficient
  double kappa_residual = 0.0;   // |tau0| * || v_C - sqrt(2) + (y^2-2)/(sqrt(8)|tau0|) ||
  double eccentricity = 0.0;     // <v_C, 2 - y^2>
  double p_minus_norm = 0.0;
  double theta = 0.0;
  int quad_order = 0;
  double cap = 0.0;
  double a = 0.0, xi = 0.0, h0 = 0.0;
};

// Cylindrical profile evaluator: y -> phi_C(v(y)) v(y), zero beyond the
// sampled diameter.
class CylindricalProfile {
 public:
  CylindricalProfile(const level::RenormalizedProfile& rp, const CutoffC& cut);
  double operator()(double y) const;

 private:
  interp::CubicSpline v_;
  CutoffC cut_;
};

struct Projections {
  double p1 = 0.0;  // <f,1>/||1||^2 of f = v_C - sqrt(2)
  double p2 = 0.0;  // <f,y>/||y||^2
  double c0 = 0.0;  // <f,psi0>/||psi0||^2
  double p_minus_norm = 0.0;
  double norm_sq = 0.0;  // ||f||^2
};

Projections projections(const std::function<double(double)>& v_C, const GaussQuadrature& q);
double kappa_residual(const std::function<double(double)>& v_C, double tau0,
                      const GaussQuadrature& q);
double eccentricity(const std::function<double(double)>& v_C, const GaussQuadrature& q);

// Unique axial shift alpha with p_+(v_C(tau0) - sqrt(2)) = 0 for the shifted
// surface; the y-component vanishes by reflection symmetry and is checked,
// not solved for. Returns alpha and the full report at tau0.
std::pair<double, SpectralReport> find_shift(const pde::Solution& sol, double tau0,
                                             const SpectralConfig& cfg);

// Profile of the alpha-shifted surface at renormalized time tau0.
level::RenormalizedProfile shifted_profile(const pde::Solution& sol, double tau0, double alpha,
                                           const SpectralConfig& cfg);

}  // namespace ovalbowl::spectral
