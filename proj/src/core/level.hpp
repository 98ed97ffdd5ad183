#pragma once
#include <vector>

#include "core/pde.hpp"

namespace ovalbowl::level {

// Level set Sigma^h of the tip-shifted surface graph(u - xi): radius V of the
// circular section as a function of the axial coordinate x, with the axis
// crossings d_minus, d_plus. x includes the exact endpoints (V = 0 there);
// the interior samples sit on grid columns.
struct LevelProfile {
  double h = 0.0;
  double d_minus = 0.0, d_plus = 0.0;
  std::vector<double> x, V;
};

// v(y) = V(sqrt(h_scale) y)/sqrt(h_scale) on a uniform y grid, tau = -log(h_scale).
// raw_y/raw_v keep the untouched column samples (used for inversion and tips).
struct RenormalizedProfile {
  double tau = 0.0;
  double h_scale = 0.0;
  std::vector<double> y, v;
  std::vector<double> raw_y, raw_v;
  double v_max() const;
};

enum class Side { left, right };

// Inverse profile Y(v) on a uniform v grid over [0, v_max_side]; right side
// decreasing, left increasing. Y(0) is the exact axis crossing.
struct InverseProfile {
  Side side = Side::right;
  double tau = 0.0;
  double v_max = 0.0;
  std::vector<double> v, Y;
  double y_at_zero = 0.0;
};

struct TipProfile {
  double tau = 0.0;
  std::vector<double> rho, Z;
};

// Samples too close to the endpoints are skipped and flagged: V below a
// floor, or |V_x| above the slope cap (the centered V_xx loses accuracy on
// the steep square-root branch and 1/H^3 amplifies it).
struct CurvatureSample {
  double x = 0.0;
  double H = 0.0;    // translator mean curvature 1/W on the level curve
  double H_h = 0.0;  // mean curvature of the revolved level curve in {x1 = h}
  bool valid = false;
};

LevelProfile extract_level(const pde::Solution& sol, double h, double cap);

RenormalizedProfile renormalize(const LevelProfile& lp, int ny = 2048);
// Same, but scaled with a different height than the level was cut at (the
// alpha-shifted surface reads its level h_scale at the original height lp.h).
RenormalizedProfile renormalize_with_scale(const LevelProfile& lp, double h_scale, int ny = 2048);

InverseProfile invert_profile(const RenormalizedProfile& rp, Side side, int nv = 1024);

// Inverse profile harvested from row crossings of the grid (x where
// u(x, r_j) = xi + h_eff for each radius row), which resolves the tip branch
// at the row spacing instead of the much coarser column spacing near the
// vertical tangent. h_scale is the renormalization height (h_eff for the
// unshifted surface).
InverseProfile invert_from_rows(const pde::Solution& sol, double h_eff, double h_scale,
                                Side side, int nv = 1024);

TipProfile zoom_tip(const InverseProfile& inv, double tau, double rho_max, int n = 512);

std::vector<CurvatureSample> levelset_mean_curvatures(const pde::Solution& sol,
                                                      const LevelProfile& lp,
                                                      double slope_cap = 1.2);

// Dense (x, r >= 0) polyline of the level curve, endpoints included,
// resampled at `factor` times the column resolution.
std::vector<std::pair<double, double>> dense_curve(const LevelProfile& lp, int factor = 10);

// Symmetric Hausdorff distance between two polylines (point-to-segment).
double hausdorff_distance(const std::vector<std::pair<double, double>>& A,
                          const std::vector<std::pair<double, double>>& B);

}  // namespace ovalbowl::level
