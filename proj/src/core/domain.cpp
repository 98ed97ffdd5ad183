#include "core/domain.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace ovalbowl::pde {

Domain make_domain(double a, double R) {
  if (!(a > 0.0) || a > 1.0 / 3.0 + 1e-12)
    fail(ErrorKind::invalid_argument, "domain: a must lie in (0, 1/3]");
  if (!(R > 0.0)) fail(ErrorKind::invalid_argument, "domain: R must be positive");
  return Domain{a, R};
}

double Domain::cross_x(double r) const {
  const double bb = b();
  const double s = R * R - bb * bb * r * r;
  if (s <= 0.0) fail(ErrorKind::range, "domain: no x-crossing at this radius");
  return std::sqrt(s) / a;
}

double Domain::cross_r(double x) const {
  const double s = R * R - a * a * x * x;
  if (s <= 0.0) fail(ErrorKind::range, "domain: no r-crossing at this x");
  return std::sqrt(s) / b();
}

int Grid::interior_count() const {
  int n = 0;
  for (const auto m : mask) n += (m == NodeClass::interior);
  return n;
}

Grid make_grid(const Domain& dom, int nx, int nr) {
  if (nx < 9 || nr < 5) fail(ErrorKind::invalid_argument, "grid: nx >= 9 and nr >= 5 required");
  if (nx % 2 == 0) fail(ErrorKind::invalid_argument, "grid: nx must be odd (column at x = 0)");

  Grid g;
  g.nx = nx;
  g.nr = nr;
  // pad ~2 cells beyond the ellipse so every interior node has two grid
  // neighbors on each side inside the array
  const double X = dom.semi_x() * (1.0 + 5.0 / (nx - 1));
  const double Rr = dom.semi_r() * (1.0 + 5.0 / (nr - 1));
  g.hx = 2.0 * X / (nx - 1);
  g.hr = Rr / (nr - 1);
  g.x_min = -((nx - 1) / 2) * g.hx;  // == x(0)
  g.mask.assign(static_cast<std::size_t>(nx) * nr, NodeClass::exterior);
  for (int j = 0; j < nr; ++j)
    for (int i = 0; i < nx; ++i)
      if (dom.inside(g.x(i), g.r(j))) g.mask[g.idx(i, j)] = NodeClass::interior;
  // boundary ring: non-interior 4-neighbors of interior nodes (plus, for the
  // transverse half-node derivatives, diagonal neighbors)
  for (int j = 0; j < nr; ++j)
    for (int i = 0; i < nx; ++i) {
      if (g.mask[g.idx(i, j)] != NodeClass::interior) continue;
      for (int dj = -1; dj <= 1; ++dj)
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di, jj = j + dj;
          if (jj < 0) continue;  // below the axis: handled by the even-symmetry ghost row
          if (ii < 0 || ii >= nx || jj >= nr) {
            fail(ErrorKind::invalid_argument, "grid: interior node touches the array edge");
          }
          if (g.mask[g.idx(ii, jj)] == NodeClass::exterior)
            g.mask[g.idx(ii, jj)] = NodeClass::boundary;
        }
    }
  return g;
}

}  // namespace ovalbowl::pde
