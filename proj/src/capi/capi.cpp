#include "ovalbowl/ovalbowl.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

#include <json.hpp>

#include "core/bowl.hpp"
#include "core/depth.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/level.hpp"
#include "core/spectral.hpp"
#include "core/verify.hpp"

using nlohmann::ordered_json;

namespace {

thread_local std::string g_last_error;

ob_status status_of(const ovalbowl::Error& e) {
  using K = ovalbowl::ErrorKind;
  switch (e.kind()) {
    case K::invalid_argument: return OB_ERR_INVALID_ARGUMENT;
    case K::integration_accuracy: return OB_ERR_INTEGRATION_ACCURACY;
    case K::nonconvergence: return OB_ERR_NONCONVERGENCE;
    case K::range: return OB_ERR_RANGE;
    case K::extraction: return OB_ERR_EXTRACTION;
    case K::inversion: return OB_ERR_INVERSION;
    case K::shift_range: return OB_ERR_SHIFT_RANGE;
    case K::consistency: return OB_ERR_CONSISTENCY;
    case K::io: return OB_ERR_IO;
  }
  return OB_ERR_UNKNOWN;
}

template <class F>
ob_status guarded(F&& f) {
  try {
    f();
    return OB_OK;
  } catch (const ovalbowl::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OB_ERR_UNKNOWN;
  } catch (...) {
    g_last_error = "unknown error";
    return OB_ERR_UNKNOWN;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ovalbowl::spectral::SpectralConfig spectral_config(const ob_spectral_params* p) {
  ovalbowl::spectral::SpectralConfig cfg;
  if (p == nullptr) ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null spectral params");
  cfg.tau0 = p->tau0;
  if (p->theta > 0.0) cfg.theta = p->theta;
  if (p->quad_order > 0) cfg.quad_order = p->quad_order;
  if (p->cap > 0.0) cfg.cap = p->cap;
  if (p->centering_tol > 0.0) cfg.centering_tol = p->centering_tol;
  return cfg;
}

ordered_json spectral_report_to_json(const ovalbowl::spectral::SpectralReport& r) {
  ordered_json j;
  j["tau0"] = r.tau0;
  j["alpha_shift"] = r.alpha_shift;
  j["p_plus_residual"] = r.p_plus_residual;
  j["c0"] = r.c0;
  j["kappa_residual"] = r.kappa_residual;
  j["eccentricity"] = r.eccentricity;
  j["p_minus_norm"] = r.p_minus_norm;
  j["theta"] = r.theta;
  j["quad_order"] = r.quad_order;
  j["cap"] = r.cap;
  j["a"] = r.a;
  j["xi"] = r.xi;
  j["h0"] = r.h0;
  return j;
}

}  // namespace

struct ob_bowl {
  ovalbowl::bowl::Profile p;
};

struct ob_solution {
  ovalbowl::pde::Solution s;
};

extern "C" {

const char* ob_version(void) { return "ovalbowl 1.0"; }

const char* ob_last_error(void) { return g_last_error.c_str(); }

void ob_string_free(char* s) { std::free(s); }

ob_status ob_bowl_create(int dimension, double speed, double r_max, double step, ob_bowl** out) {
  return guarded([&] {
    if (out == nullptr) ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null out");
    *out = new ob_bowl{ovalbowl::bowl::integrate(dimension, speed, r_max, step)};
  });
}

ob_status ob_bowl_z0(double speed, double rho_max, double step, ob_bowl** out) {
  return guarded([&] {
    if (out == nullptr) ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null out");
    *out = new ob_bowl{ovalbowl::bowl::reference_z0(speed, rho_max, step)};
  });
}

ob_status ob_bowl_eval(const ob_bowl* b, double r, double* u) {
  return guarded([&] {
    if (b == nullptr || u == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    *u = b->p.value(r);
  });
}

ob_status ob_bowl_second_deriv_at_zero(const ob_bowl* b, double* out) {
  return guarded([&] {
    if (b == nullptr || out == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    *out = b->p.second_deriv_at_zero();
  });
}

ob_status ob_bowl_write_csv(const ob_bowl* b, const char* path) {
  return guarded([&] {
    if (b == nullptr || path == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    ovalbowl::bowl::write_csv(b->p, path);
  });
}

void ob_bowl_free(ob_bowl* b) { delete b; }

ob_status ob_solve(const ob_solve_params* params, const ob_solution* warm_or_null,
                   ob_solution** out) {
  return guarded([&] {
    if (params == nullptr || out == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    ovalbowl::pde::SolveConfig cfg;
    cfg.nx = params->nx;
    cfg.nr = params->nr;
    if (params->newton_tol > 0.0) cfg.newton.tol = params->newton_tol;
    if (params->depth_tol > 0.0) cfg.depth_tol = params->depth_tol;
    if (params->max_newton_iter > 0) cfg.newton.max_iter = params->max_newton_iter;
    const ovalbowl::pde::Solution* warm = warm_or_null ? &warm_or_null->s : nullptr;
    if (params->mode == OB_SOLVE_RADIUS) {
      *out = new ob_solution{ovalbowl::pde::solve_at_radius(params->a, params->R, cfg, warm)};
    } else {
      *out = new ob_solution{ovalbowl::pde::find_R_for_depth(params->a, params->xi, cfg, warm)};
    }
  });
}

ob_status ob_solution_info_get(const ob_solution* sol, ob_solution_info* out) {
  return guarded([&] {
    if (sol == nullptr || out == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    const auto& s = sol->s;
    out->a = s.domain.a;
    out->R = s.domain.R;
    out->xi = s.xi;
    out->nx = s.grid.nx;
    out->nr = s.grid.nr;
    out->hx = s.grid.hx;
    out->hr = s.grid.hr;
    out->residual_inf = s.residual_inf;
    out->newton_iters = s.newton_iters;
    out->monotone_r_ok = s.monotone_r_ok ? 1 : 0;
    const auto tc = ovalbowl::pde::tip_curvatures(s);
    out->k = tc.k;
    out->lambda = tc.lambda;
  });
}

ob_status ob_solution_save(const ob_solution* sol, const char* json_path, const char* csv_path) {
  return guarded([&] {
    if (sol == nullptr || json_path == nullptr || csv_path == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    ovalbowl::io::save_solution(sol->s, json_path, csv_path);
  });
}

ob_status ob_solution_load(const char* json_path, ob_solution** out) {
  return guarded([&] {
    if (json_path == nullptr || out == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    *out = new ob_solution{ovalbowl::io::load_solution(json_path)};
  });
}

ob_status ob_solution_level_csv(const ob_solution* sol, double h, int kind, double cap,
                                const char* path) {
  return guarded([&] {
    if (sol == nullptr || path == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    if (cap <= 0.0) cap = 0.3;
    const auto lp = ovalbowl::level::extract_level(sol->s, h, cap);
    std::FILE* f = std::fopen(path, "wb");
    if (f == nullptr) ovalbowl::fail(ovalbowl::ErrorKind::io, "cannot open output CSV");
    const double tau = -std::log(h);
    std::fprintf(f, "# ovalbowl level format=%d a=%.17g xi=%.17g h=%.17g tau=%.17g kind=%d\n",
                 ovalbowl::io::kFormatVersion, sol->s.domain.a, sol->s.xi, h, tau, kind);
    if (kind == 0) {
      std::fprintf(f, "x,V\n");
      for (std::size_t i = 0; i < lp.x.size(); ++i)
        std::fprintf(f, "%.17g,%.17g\n", lp.x[i], lp.V[i]);
    } else if (kind == 1) {
      const auto rp = ovalbowl::level::renormalize(lp);
      std::fprintf(f, "y,v\n");
      for (std::size_t i = 0; i < rp.y.size(); ++i)
        std::fprintf(f, "%.17g,%.17g\n", rp.y[i], rp.v[i]);
    } else if (kind == 2) {
      const auto rp = ovalbowl::level::renormalize(lp);
      const auto inv = ovalbowl::level::invert_profile(rp, ovalbowl::level::Side::right);
      const double rho_max = std::sqrt(std::abs(rp.tau)) * inv.v_max * 0.98;
      const auto tp = ovalbowl::level::zoom_tip(inv, rp.tau, rho_max);
      std::fprintf(f, "rho,Z\n");
      for (std::size_t i = 0; i < tp.rho.size(); ++i)
        std::fprintf(f, "%.17g,%.17g\n", tp.rho[i], tp.Z[i]);
    } else {
      std::fclose(f);
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "level kind must be 0, 1 or 2");
    }
    std::fclose(f);
  });
}

void ob_solution_free(ob_solution* sol) { delete sol; }

ob_status ob_spectral_report_json(const ob_solution* sol, const ob_spectral_params* params,
                                  char** out) {
  return guarded([&] {
    if (sol == nullptr || out == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    const auto cfg = spectral_config(params);
    auto [alpha, rep] = ovalbowl::spectral::find_shift(sol->s, cfg.tau0, cfg);
    (void)alpha;
    *out = dup_string(spectral_report_to_json(rep).dump(2));
  });
}

ob_status ob_verify_report_json(const ob_solution* sol, const ob_verify_params* params,
                                char** out) {
  return guarded([&] {
    if (sol == nullptr || params == nullptr || out == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    const auto cfg = spectral_config(&params->spectral);
    ovalbowl::verify::VerifyConfig vcfg;
    if (params->y_max > 0.0) vcfg.y_max = params->y_max;
    if (params->z_band > 0.0) vcfg.z_band = params->z_band;
    if (params->rho_max > 0.0) vcfg.rho_max = params->rho_max;
    if (params->L > 0.0) vcfg.L = params->L;
    std::vector<double> taus;
    for (double t = cfg.tau0; t >= params->tau_min - 1e-9; t -= 1.0) taus.push_back(t);
    ordered_json j;
    j["a"] = sol->s.domain.a;
    j["xi"] = sol->s.xi;
    j["rows"] = ordered_json::array();
    if (!taus.empty()) {
      const auto rep = ovalbowl::verify::build_asymptotics(sol->s, taus, cfg, vcfg);
      j["tau0"] = rep.tau0;
      j["alpha_shift"] = rep.alpha_shift;
      j["theta"] = rep.theta;
      j["cap"] = rep.cap;
      for (const auto& r : rep.rows) {
        ordered_json row;
        row["tau"] = r.tau;
        row["in_range"] = r.in_range;
        if (r.in_range) {
          row["parabolic_dev"] = r.parabolic_dev;
          row["intermediate_dev"] = r.intermediate_dev;
          row["tip_dev"] = r.tip_dev;
          row["tip_c2_dev"] = r.tip_c2_dev;
          row["diameter_dev_plus"] = r.diameter_dev_plus;
          row["diameter_dev_minus"] = r.diameter_dev_minus;
          row["concavity_excess"] = r.concavity_excess;
          row["collar_dev"] = r.collar_dev;
          row["collar_applicable"] = r.collar_applicable;
          row["meancurv_C"] = r.meancurv_C;
          row["c0"] = r.c0;
        } else {
          row["note"] = r.note;
        }
        j["rows"].push_back(row);
      }
    }
    *out = dup_string(j.dump(2));
  });
}

ob_status ob_diff_report_json(const ob_solution* s1, const ob_spectral_params* params1,
                              const ob_solution* s2, const ob_spectral_params* params2_or_null,
                              char** out) {
  return guarded([&] {
    if (s1 == nullptr || s2 == nullptr || params1 == nullptr || out == nullptr)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    const auto cfg1 = spectral_config(params1);
    const auto cfg2 = spectral_config(params2_or_null ? params2_or_null : params1);
    const auto rep = ovalbowl::verify::diff_solutions(s1->s, s2->s, cfg1.tau0, cfg1, cfg2);
    ordered_json j;
    j["tau0"] = rep.tau0;
    j["alpha1"] = rep.alpha1;
    j["alpha2"] = rep.alpha2;
    j["w_H_norm"] = rep.w_H_norm;
    j["wC_H_norm"] = rep.wC_H_norm;
    j["p_plus_mismatch"] = rep.p_plus_mismatch;
    j["p0_mismatch"] = rep.p0_mismatch;
    j["ecc_mismatch"] = rep.ecc_mismatch;
    j["W_tip_norm"] = rep.W_tip_norm;
    j["hausdorff_by_h"] = ordered_json::array();
    for (const auto& [h, d] : rep.hausdorff_by_h) {
      ordered_json row;
      row["h"] = h;
      row["D"] = d;
      j["hausdorff_by_h"].push_back(row);
    }
    *out = dup_string(j.dump(2));
  });
}

ob_status ob_sweep_csv(const ob_solve_params* base, const double* a_values, int n,
                       const ob_spectral_params* spectral, int workers, double k_tol,
                       const char* csv_path, int* all_ok, int* k_monotone) {
  return guarded([&] {
    if (base == nullptr || a_values == nullptr || spectral == nullptr || csv_path == nullptr ||
        n < 1)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    ovalbowl::pde::SolveConfig cfg;
    cfg.nx = base->nx;
    cfg.nr = base->nr;
    if (base->newton_tol > 0.0) cfg.newton.tol = base->newton_tol;
    if (base->depth_tol > 0.0) cfg.depth_tol = base->depth_tol;
    if (base->max_newton_iter > 0) cfg.newton.max_iter = base->max_newton_iter;
    const auto scfg = spectral_config(spectral);
    ovalbowl::verify::VerifyConfig vcfg;
    std::FILE* f = std::fopen(csv_path, "wb");
    if (f == nullptr) ovalbowl::fail(ovalbowl::ErrorKind::io, "sweep: cannot open CSV");
    std::fprintf(f,
                 "a,R,xi,k,lambda,trace_dev,alpha_shift,eccentricity,c0,kappa_residual,"
                 "parabolic_dev,intermediate_dev,tip_dev,diameter_dev_plus,diameter_dev_minus,"
                 "concavity_excess,monotone_r_ok,k_increasing_from_prev,ok,message\n");
    std::fflush(f);
    bool every_ok = true;
    std::vector<double> ks, as;
    std::vector<double> avec(a_values, a_values + n);
    ovalbowl::verify::sweep_family(
        avec, base->xi, cfg, scfg, vcfg, workers, [&](const ovalbowl::pde::FamilyRecord& r) {
          std::string msg = r.message;
          for (auto& c : msg)
            if (c == ',' || c == '\n') c = ';';
          std::fprintf(f,
                       "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                       "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d,%s\n",
                       r.a, r.R, r.xi, r.k, r.lambda, r.trace_dev, r.alpha_shift, r.eccentricity,
                       r.c0, r.kappa_residual, r.parabolic_dev, r.intermediate_dev, r.tip_dev,
                       r.diameter_dev_plus, r.diameter_dev_minus, r.concavity_excess,
                       r.monotone_r_ok ? 1 : 0, r.k_increasing_from_prev ? 1 : 0, r.ok ? 1 : 0,
                       msg.c_str());
          std::fflush(f);
          if (r.ok) {
            ks.push_back(r.k);
            as.push_back(r.a);
          } else {
            every_ok = false;
          }
        });
    std::fclose(f);
    const auto mres =
        ovalbowl::verify::check_monotone_tip_map(ks, k_tol > 0.0 ? k_tol : 1e-4);
    if (all_ok) *all_ok = every_ok ? 1 : 0;
    if (k_monotone) *k_monotone = mres.increasing ? 1 : 0;
  });
}

ob_status ob_monotone_check_json(const double* a, const double* k, int n, double tol, char** out) {
  return guarded([&] {
    if (a == nullptr || k == nullptr || out == nullptr || n < 1)
      ovalbowl::fail(ovalbowl::ErrorKind::invalid_argument, "null argument");
    std::vector<double> ks(k, k + n);
    const auto res = ovalbowl::verify::check_monotone_tip_map(ks, tol > 0.0 ? tol : 1e-4);
    ordered_json j;
    j["increasing"] = res.increasing;
    j["violations"] = ordered_json::array();
    for (const auto& [i0, i1] : res.violations) {
      ordered_json v;
      v["a_lo"] = a[i0];
      v["a_hi"] = a[i1];
      v["k_lo"] = k[i0];
      v["k_hi"] = k[i1];
      j["violations"].push_back(v);
    }
    *out = dup_string(j.dump(2));
  });
}

}  // extern "C"
