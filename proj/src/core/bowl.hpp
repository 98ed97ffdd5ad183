#pragma once
#include <string>
#include <vector>

namespace ovalbowl::bowl {

// Rotationally symmetric graphical translator profile in R^{d+1},
//   u'' / (1 + u'^2) + (d-1) u'/r = c,   u(0) = u'(0) = 0,
// sampled on a uniform r-grid. dimension d=2 is the surface in R^3,
// d=3 the hypersurface in R^4.
struct Profile {
  int dimension = 3;
  double speed = 1.0;
  double step = 0.0;
  std::vector<double> r;
  std::vector<double> u;

  double r_max() const { return r.back(); }
  double value(double rr) const;
  double slope(double rr) const;
  // radius at which the profile reaches the given depth (value() inverse)
  double radius_for_depth(double depth) const;
  // 4th-order symmetric estimate of u''(0)
  double second_deriv_at_zero() const;
  // sup over interior nodes of the centered-difference ODE residual
  double max_ode_residual() const;
  // discrete u'' > 0 at every interior node
  bool convex() const;
};

// Series start over [0, 10*step], classical RK4 beyond. The step is shrunk
// (never grown) so the samples land exactly on r_max.
Profile integrate(int dimension, double speed, double r_max, double step);

// Tip-region target: Z0 = -u for the dimension-2 bowl of the given speed.
// Z0(0) = 0, Z0 <= 0, Z0 concave.
Profile reference_z0(double speed, double rho_max, double step);

void write_csv(const Profile& p, const std::string& path);

}  // namespace ovalbowl::bowl
