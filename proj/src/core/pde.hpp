#pragma once
#include <string>
#include <vector>

#include "core/domain.hpp"

namespace ovalbowl::pde {

// Discrete solution of the SO(2)-reduced translator Dirichlet problem on an
// ellipsoidal half-domain. u <= 0 with minimum xi at the origin; u is stored
// on the full grid with boundary/exterior nodes at 0 (the zero Dirichlet
// value lives on the analytic ellipse, which the scheme reaches through
// one-dimensional ghost reconstruction, see assemble_residual).
struct Solution {
  Domain domain;
  Grid grid;
  std::vector<double> u;
  double xi = 0.0;
  double residual_inf = 0.0;
  int newton_iters = 0;
  bool monotone_r_ok = true;
  bool negative_interior_ok = true;
  std::string warning;
};

struct NewtonOptions {
  double tol = 1e-10;       // residual sup-norm
  int max_iter = 60;
  int max_backtrack = 40;
  double mono_tol_scale = 1e-10;  // monotonicity flag tolerance, scaled by 1+|xi|
};

// Residual of  d/dx(u_x/W) + (1/r) d/dr(r u_r/W) - 1/W,  W = sqrt(1+u_x^2+u_r^2),
// in the expanded centered form
//   [(1+u_r^2) u_xx - 2 u_x u_r u_xr + (1+u_x^2) u_rr]/W^3 + u_r/(r W) - 1/W
// with all derivatives by centered differences at the node. At r = 0 the
// singular radial term is replaced by its even-symmetry limit 2 d/dr(u_r/W)
// via a ghost row u(x,-r) = u(x,r), turning the radial part into 2 u_rr/W.
// Values read at boundary-mask nodes are reconstructed along the read
// direction by one-dimensional interpolation through the zero Dirichlet value
// at the ellipse crossing and up to three interior nodes; stored boundary
// values are ignored (and kept at zero). Entries at non-interior nodes are 0.
std::vector<double> assemble_residual(const std::vector<double>& u, const Grid& grid,
                                      const Domain& dom);

// Directional derivative of assemble_residual at u along du (for gradient checks).
std::vector<double> residual_directional_derivative(const std::vector<double>& u,
                                                    const std::vector<double>& du,
                                                    const Grid& grid, const Domain& dom);

// Paraboloid with the domain's boundary and the given center depth:
// xi_est * (1 - a^2 x^2/R^2 - b^2 r^2/R^2), clipped to the masked region.
std::vector<double> paraboloid_guess(const Domain& dom, const Grid& grid, double xi_est);

// Damped Newton with an analytically assembled sparse Jacobian. The problem is
// reflection symmetric in x, so the system is solved on the half grid x >= 0
// and mirrored; u0 is symmetrized first. Throws ErrorKind::nonconvergence with
// the last residual in the message if max_iter is exhausted.
Solution newton_solve(const Domain& dom, const Grid& grid, const std::vector<double>& u0,
                      const NewtonOptions& opts);

struct TipCurvatures {
  double k;       // u_xx(0,0), smallest principal curvature at the tip
  double lambda;  // u_rr(0,0)
};

// 4th-order centered second differences at the tip; the gradient vanishes
// there so these are the principal curvatures. Throws ErrorKind::consistency
// if |k + 2 lambda - 1| > trace_tol (unit-speed identity).
TipCurvatures tip_curvatures(const Solution& sol, double trace_tol = 5e-3);

}  // namespace ovalbowl::pde
