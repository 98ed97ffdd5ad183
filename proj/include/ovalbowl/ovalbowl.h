/* ovalbowl: numerical construction and verification of SO(2)-symmetric
 * translating solitons in R^4 (oval bowls), behind a C interface.
 *
 * All functions return ob_status; OB_OK is 0. On failure a thread-local
 * message is available via ob_last_error(). Handles are opaque and freed
 * with their matching *_free function. JSON/CSV outputs are deterministic
 * for identical inputs.
 */
#ifndef OVALBOWL_H
#define OVALBOWL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ob_status {
  OB_OK = 0,
  OB_ERR_INVALID_ARGUMENT = 1,
  OB_ERR_INTEGRATION_ACCURACY = 2,
  OB_ERR_NONCONVERGENCE = 3,
  OB_ERR_RANGE = 4,
  OB_ERR_EXTRACTION = 5,
  OB_ERR_INVERSION = 6,
  OB_ERR_SHIFT_RANGE = 7,
  OB_ERR_CONSISTENCY = 8,
  OB_ERR_IO = 9,
  OB_ERR_UNKNOWN = 10
} ob_status;

const char* ob_version(void);
const char* ob_last_error(void);
void ob_string_free(char* s);

/* ---- radial bowl profiles -------------------------------------------- */

typedef struct ob_bowl ob_bowl;

/* integrate u''/(1+u'^2) + (d-1)u'/r = c from the axis; d in {2,3} */
ob_status ob_bowl_create(int dimension, double speed, double r_max, double step, ob_bowl** out);
/* Z0 = -u for the dimension-2 bowl of the given speed */
ob_status ob_bowl_z0(double speed, double rho_max, double step, ob_bowl** out);
ob_status ob_bowl_eval(const ob_bowl* b, double r, double* u);
ob_status ob_bowl_second_deriv_at_zero(const ob_bowl* b, double* out);
ob_status ob_bowl_write_csv(const ob_bowl* b, const char* path);
void ob_bowl_free(ob_bowl* b);

/* ---- translator solves ------------------------------------------------ */

typedef struct ob_solution ob_solution;

typedef enum ob_solve_mode {
  OB_SOLVE_DEPTH = 0, /* find R so that the center depth hits xi */
  OB_SOLVE_RADIUS = 1 /* solve at the given R */
} ob_solve_mode;

typedef struct ob_solve_params {
  double a;          /* ellipsoidal parameter in (0.02, 1/3] */
  double xi;         /* target center value (< 0), OB_SOLVE_DEPTH */
  double R;          /* domain radius, OB_SOLVE_RADIUS */
  int mode;          /* ob_solve_mode */
  int nx, nr;        /* grid; nx odd */
  double newton_tol; /* residual sup-norm, default 1e-10 if 0 */
  double depth_tol;  /* relative depth tolerance, default 1e-4 if 0 */
  int max_newton_iter;
} ob_solve_params;

typedef struct ob_solution_info {
  double a, R, xi;
  int nx, nr;
  double hx, hr;
  double residual_inf;
  int newton_iters;
  int monotone_r_ok;
  double k, lambda; /* tip curvatures u_xx(0,0), u_rr(0,0) */
} ob_solution_info;

ob_status ob_solve(const ob_solve_params* params, const ob_solution* warm_or_null,
                   ob_solution** out);
ob_status ob_solution_info_get(const ob_solution* sol, ob_solution_info* out);
ob_status ob_solution_save(const ob_solution* sol, const char* json_path, const char* csv_path);
ob_status ob_solution_load(const char* json_path, ob_solution** out);
/* level-set exports: kind 0 = (x, V) at height h; 1 = (y, v); 2 = (rho, Z) */
ob_status ob_solution_level_csv(const ob_solution* sol, double h, int kind, double cap,
                                const char* path);
void ob_solution_free(ob_solution* sol);

/* ---- spectral and verification reports (JSON strings) ----------------- */

typedef struct ob_spectral_params {
  double tau0;          /* < 0 */
  double theta;         /* cutoff scale, default 0.2 if 0 */
  int quad_order;       /* default 80 if 0 */
  double cap;           /* usable-level fraction of |xi|, default 0.3 if 0 */
  double centering_tol; /* default 1e-8 if 0 */
} ob_spectral_params;

typedef struct ob_verify_params {
  ob_spectral_params spectral;
  /* ladder tau0, tau0-1, ..., down to tau_min (integers when both integral) */
  double tau_min;
  double y_max;   /* default 2 */
  double z_band;  /* default 0.3 */
  double rho_max; /* default 2 */
  double L;       /* default 0.7 */
} ob_verify_params;

/* shift-centers at tau0 and reports projections, kappa-residual,
 * eccentricity; out is a malloc'd JSON object */
ob_status ob_spectral_report_json(const ob_solution* sol, const ob_spectral_params* params,
                                  char** out);
/* asymptotics ladder (one row per tau, out-of-range rows marked) */
ob_status ob_verify_report_json(const ob_solution* sol, const ob_verify_params* params,
                                char** out);
/* two-solution difference diagnostics; params2 may be NULL to reuse params1 */
ob_status ob_diff_report_json(const ob_solution* s1, const ob_spectral_params* params1,
                              const ob_solution* s2, const ob_spectral_params* params2_or_null,
                              char** out);
/* strict-monotonicity check of the tip-curvature family map */
ob_status ob_monotone_check_json(const double* a, const double* k, int n, double tol, char** out);

/* ---- family sweep ------------------------------------------------------ */

/* One depth-targeted solve per a (continuation warm-starts within each
 * worker's chunk), each reduced to a CSV row written incrementally to
 * csv_path. Per-a failures are recorded in their row and the sweep
 * continues. all_ok / k_monotone (may be NULL) report whether every row
 * solved and whether k increased strictly (margin k_tol, default 1e-4)
 * along the ok rows. */
ob_status ob_sweep_csv(const ob_solve_params* base, const double* a_values, int n,
                       const ob_spectral_params* spectral, int workers, double k_tol,
                       const char* csv_path, int* all_ok, int* k_monotone);

#ifdef __cplusplus
}
#endif

#endif /* OVALBOWL_H */
