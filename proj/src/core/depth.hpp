#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/pde.hpp"

namespace ovalbowl::pde {

struct SolveConfig {
  int nx = 401;
  int nr = 201;
  NewtonOptions newton;
  double depth_tol = 1e-4;  // relative tolerance on xi
  int max_depth_iter = 30;
  double a_min = 0.02;  // a = 0 is an unbounded slab, untouchable on a finite grid
};

// Rough depth estimate from the radial bowl ODEs: blends the dimension-3 cap
// (exact at a = 1/3) with the dimension-2 slab limit (a -> 0), evaluated at
// the domain's r-semiaxis.
double xi_estimate(double a, double R);
double radius_for_xi_estimate(double a, double xi_target);

// Solve at fixed domain radius R, warm-started from `warm` when given
// (rescaled onto the new grid), otherwise from the paraboloid guess.
Solution solve_at_radius(double a, double R, const SolveConfig& cfg,
                         const Solution* warm = nullptr);

// Continuation in R with a secant/bisection iteration on the strictly
// decreasing map R -> xi(a,R), until |xi - xi_target| <= depth_tol*|xi_target|.
Solution find_R_for_depth(double a, double xi_target, const SolveConfig& cfg,
                          const Solution* warm = nullptr);

struct FamilyRecord {
  double a = 0.0, R = 0.0, xi = 0.0;
  double k = 0.0, lambda = 0.0, trace_dev = 0.0;
  double alpha_shift = 0.0, eccentricity = 0.0, c0 = 0.0, kappa_residual = 0.0;
  double parabolic_dev = 0.0, intermediate_dev = 0.0, tip_dev = 0.0;
  double diameter_dev_plus = 0.0, diameter_dev_minus = 0.0, concavity_excess = 0.0;
  bool monotone_r_ok = true;
  bool k_increasing_from_prev = true;
  bool ok = false;
  std::string message;
};

}  // namespace ovalbowl::pde
