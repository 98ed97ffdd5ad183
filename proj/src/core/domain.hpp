#pragma once
#include <cstdint>
#include <vector>

namespace ovalbowl::pde {

// Half-domain { (x, r) : a^2 x^2 + ((1-a)/2)^2 r^2 < R^2, r >= 0 }.
// x is the reflection-symmetric axis coordinate, r the rotation radius.
struct Domain {
  double a = 1.0 / 3.0;
  double R = 1.0;

  double b() const { return 0.5 * (1.0 - a); }
  double semi_x() const { return R / a; }
  double semi_r() const { return R / b(); }
  bool inside(double x, double r) const {
    const double bb = b();
    return a * a * x * x + bb * bb * r * r < R * R;
  }
  // positive boundary crossing along x at fixed r (requires |b r| < R)
  double cross_x(double r) const;
  // boundary crossing along r at fixed x (requires |a x| < R)
  double cross_r(double x) const;
};

Domain make_domain(double a, double R);

enum class NodeClass : std::uint8_t { exterior = 0, boundary = 1, interior = 2 };

// Uniform tensor grid over [-X, X] x [0, R_r] with the ellipse slightly
// padded so no interior node touches the array edge. nx must be odd so a
// column sits exactly on x = 0.
struct Grid {
  int nx = 0, nr = 0;
  double x_min = 0.0, hx = 0.0, hr = 0.0;
  std::vector<NodeClass> mask;

  int idx(int i, int j) const { return j * nx + i; }
  // centered so x(ic - k) == -x(ic + k) exactly in floating point
  double x(int i) const { return (i - (nx - 1) / 2) * hx; }
  double r(int j) const { return j * hr; }
  int center_i() const { return (nx - 1) / 2; }
  bool is_interior(int i, int j) const { return mask[idx(i, j)] == NodeClass::interior; }
  int interior_count() const;
};

Grid make_grid(const Domain& dom, int nx, int nr);

}  // namespace ovalbowl::pde
