#include "core/verify.hpp"

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "core/errors.hpp"
#include "core/interp.hpp"

namespace ovalbowl::verify {

double check_parabolic(const level::RenormalizedProfile& rp, double y_max) {
  const double sqrt2 = std::sqrt(2.0);
  const double at = std::abs(rp.tau);
  double dev = 0.0;
  for (std::size_t k = 0; k < rp.y.size(); ++k) {
    const double y = rp.y[k];
    if (std::abs(y) > y_max) continue;
    const double ansatz = sqrt2 * (1.0 - (y * y - 2.0) / (4.0 * at));
    dev = std::max(dev, std::abs(rp.v[k] - ansatz));
  }
  return at * dev;
}

double check_intermediate(const level::RenormalizedProfile& rp, double z_band) {
  const double sqrt2 = std::sqrt(2.0);
  const double root = std::sqrt(std::abs(rp.tau));
  interp::CubicSpline v(rp.y, rp.v, /*zero_extend=*/true);
  const double z_lim = sqrt2 - z_band;
  double dev = 0.0;
  const int n = 801;
  for (int k = 0; k < n; ++k) {
    const double z = -z_lim + 2.0 * z_lim * k / (n - 1);
    const double vbar = std::max(0.0, v(root * z));
    dev = std::max(dev, std::abs(vbar - std::sqrt(2.0 - z * z)));
  }
  return dev;
}

TipDeviation check_tip(const level::TipProfile& tp, const bowl::Profile& z0, double rho_max) {
  interp::CubicSpline z0s(z0.r, z0.u);
  TipDeviation out;
  std::vector<double> diff;
  diff.reserve(tp.rho.size());
  for (std::size_t k = 0; k < tp.rho.size(); ++k) {
    if (tp.rho[k] > rho_max + 1e-12) break;
    const double d = tp.Z[k] - z0s(tp.rho[k]);
    diff.push_back(d);
    out.c0 = std::max(out.c0, std::abs(d));
  }
  if (diff.size() >= 3) {
    const double drho = tp.rho[1] - tp.rho[0];
    for (std::size_t k = 1; k + 1 < diff.size(); ++k)
      out.c2 = std::max(out.c2,
                        std::abs(diff[k + 1] - 2.0 * diff[k] + diff[k - 1]) / (drho * drho));
  }
  return out;
}

DiameterDeviation check_diameter(const level::LevelProfile& lp) {
  if (!(lp.h > 1.0)) fail(ErrorKind::range, "check_diameter: needs h > 1 (log h > 0)");
  const double ref = std::sqrt(2.0 * lp.h * std::log(lp.h));
  return {std::abs(lp.d_plus / ref - 1.0), std::abs(lp.d_minus / ref - 1.0)};
}

double check_concavity(const level::LevelProfile& lp) {
  double excess = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 2; k + 2 < lp.x.size(); ++k) {
    const double hl = lp.x[k] - lp.x[k - 1], hr = lp.x[k + 1] - lp.x[k];
    if (std::abs(hl - hr) > 1e-9 * hr) continue;  // uniform interior triples only
    const double q = (lp.V[k + 1] * lp.V[k + 1] - 2.0 * lp.V[k] * lp.V[k] +
                      lp.V[k - 1] * lp.V[k - 1]) /
                     (hr * hr);
    excess = std::max(excess, q - 1.0 / (lp.V[k] * lp.V[k]));
  }
  if (!std::isfinite(excess)) fail(ErrorKind::range, "check_concavity: no uniform interior triples");
  return excess;
}

CollarResult check_collar(const level::InverseProfile& inv, double tau, double theta, double L) {
  CollarResult res;
  const double v_lo = L / std::sqrt(std::abs(tau));
  const double v_hi = 2.0 * theta;
  if (!(v_lo < v_hi)) fail(ErrorKind::range, "check_collar: empty collar window");
  const double floor = 1e-8;
  res.applicable = true;
  bool any = false;
  for (std::size_t k = 1; k + 1 < inv.v.size(); ++k) {
    const double v = inv.v[k];
    if (v < v_lo || v > v_hi) continue;
    const double Yv = (inv.Y[k + 1] - inv.Y[k - 1]) / (inv.v[k + 1] - inv.v[k - 1]);
    if (std::abs(Yv) < floor) {
      res.applicable = false;
      continue;
    }
    any = true;
    res.dev = std::max(res.dev, std::abs(1.0 + inv.Y[k] * v / (2.0 * Yv)));
  }
  if (!any) res.applicable = false;
  return res;
}

double check_meancurv(const std::vector<level::CurvatureSample>& samples) {
  double c = 0.0;
  for (const auto& s : samples) {
    if (!s.valid || s.H <= 0.0) continue;
    c = std::max(c, std::abs(s.H - s.H_h) / (s.H * s.H * s.H));
  }
  return c;
}

std::vector<double> fit_mode_ode(const std::vector<double>& taus, const std::vector<double>& c0s) {
  if (taus.size() != c0s.size() || taus.size() < 3)
    fail(ErrorKind::invalid_argument, "fit_mode_ode: need >= 3 ladder points");
  std::vector<double> res;
  for (std::size_t k = 1; k + 1 < taus.size(); ++k) {
    const double dc = (c0s[k + 1] - c0s[k - 1]) / (taus[k + 1] - taus[k - 1]);
    res.push_back(dc + std::sqrt(8.0) * c0s[k] * c0s[k]);
  }
  return res;
}

MonotoneResult check_monotone_tip_map(const std::vector<double>& k_values, double tol) {
  MonotoneResult r;
  for (std::size_t i = 1; i < k_values.size(); ++i)
    if (!(k_values[i] - k_values[i - 1] >= tol)) {
      r.increasing = false;
      r.violations.emplace_back(static_cast<int>(i - 1), static_cast<int>(i));
    }
  return r;
}

namespace {
bowl::Profile make_z0(double rho_max) {
  const double r_max = rho_max + 1.0;
  return bowl::reference_z0(1.0 / std::sqrt(2.0), r_max, r_max / 2048.0);
}
}  // namespace

AsymptoticsReport build_asymptotics(const pde::Solution& sol, const std::vector<double>& taus,
                                    const spectral::SpectralConfig& scfg,
                                    const VerifyConfig& vcfg) {
  AsymptoticsReport rep;
  rep.a = sol.domain.a;
  rep.xi = sol.xi;
  rep.theta = scfg.theta;
  rep.cap = scfg.cap;
  rep.vcfg = vcfg;
  if (taus.empty()) return rep;
  double tau0 = *std::max_element(taus.begin(), taus.end());
  rep.tau0 = tau0;
  auto [alpha, rep0] = spectral::find_shift(sol, tau0, scfg);
  rep.alpha_shift = alpha;
  const bowl::Profile z0 = make_z0(vcfg.rho_max);
  const spectral::GaussQuadrature q = spectral::gauss_quadrature(scfg.quad_order);
  const spectral::CutoffC cut(scfg.theta);
  const double h_min = 8.0 * std::max(sol.grid.hx, sol.grid.hr);
  const double h_max = scfg.cap * std::abs(sol.xi);

  for (double tau : taus) {
    AsymptoticsRow row;
    row.tau = tau;
    const double h_nom = std::exp(-tau);
    const double h_eff = h_nom - alpha;
    if (!(h_eff > h_min) || h_eff > h_max) {
      row.in_range = false;
      row.note = "level outside usable range";
      rep.rows.push_back(row);
      continue;
    }
    const level::LevelProfile lp = level::extract_level(sol, h_eff, scfg.cap);
    const level::RenormalizedProfile rp = level::renormalize_with_scale(lp, h_nom, scfg.ny);
    row.in_range = true;
    row.parabolic_dev = check_parabolic(rp, vcfg.y_max);
    row.intermediate_dev = check_intermediate(rp, vcfg.z_band);
    // tip branch from row crossings (resolves the vertical tangent), compared
    // on the tip region rho <= 2 theta sqrt|tau| (clipped by rho_max)
    const level::InverseProfile inv =
        level::invert_from_rows(sol, h_eff, h_nom, level::Side::right, scfg.nv);
    const double rho_eff =
        std::min(vcfg.rho_max, 2.0 * scfg.theta * std::sqrt(std::abs(rp.tau)));
    const level::TipProfile tp = level::zoom_tip(inv, rp.tau, rho_eff);
    const TipDeviation td = check_tip(tp, z0, rho_eff);
    row.tip_dev = td.c0;
    row.tip_c2_dev = td.c2;
    // the diameter law is stated for the shifted surface at its nominal height
    level::LevelProfile lp_nom = lp;
    lp_nom.h = h_nom;
    const DiameterDeviation dd = check_diameter(lp_nom);
    row.diameter_dev_plus = dd.plus;
    row.diameter_dev_minus = dd.minus;
    row.concavity_excess = check_concavity(lp);
    if (vcfg.L / std::sqrt(std::abs(rp.tau)) < 2.0 * scfg.theta) {
      const CollarResult cr = check_collar(inv, rp.tau, scfg.theta, vcfg.L);
      row.collar_dev = cr.dev;
      row.collar_applicable = cr.applicable;
    } else {
      row.collar_applicable = false;  // collar window empty at this tau
    }
    row.meancurv_C = check_meancurv(level::levelset_mean_curvatures(sol, lp));
    const spectral::CylindricalProfile vc(rp, cut);
    row.c0 = spectral::projections([&](double y) { return vc(y); }, q).c0;
    rep.rows.push_back(row);
  }
  return rep;
}

std::vector<double> tip_weight_mu(const std::vector<double>& v, const std::vector<double>& Y1,
                                  double theta) {
  const std::size_t n = v.size();
  if (n < 4 || Y1.size() != n) fail(ErrorKind::invalid_argument, "tip_weight_mu: bad input");
  const spectral::Zeta zeta(theta);
  std::vector<double> mu(n, 0.0);
  // exact identity above theta/2
  for (std::size_t k = 0; k < n; ++k)
    if (v[k] >= 0.5 * theta) mu[k] = -0.25 * Y1[k] * Y1[k];
  // integrand below: zeta (Y^2/4)' - (1-zeta)(1+Y_v^2)/v, integrated downward
  auto Yv_at = [&](std::size_t k) {
    if (k == 0) return (Y1[1] - Y1[0]) / (v[1] - v[0]);
    if (k + 1 == n) return (Y1[n - 1] - Y1[n - 2]) / (v[n - 1] - v[n - 2]);
    return (Y1[k + 1] - Y1[k - 1]) / (v[k + 1] - v[k - 1]);
  };
  auto integrand = [&](std::size_t k) {
    const double z = zeta(v[k]);
    const double Yv = Yv_at(k);
    const double dY2 = 0.5 * Y1[k] * Yv;  // (Y^2/4)' = Y Y_v / 2
    const double sing = v[k] > 0.0 ? (1.0 + Yv * Yv) / v[k] : 0.0;
    return z * dY2 - (1.0 - z) * sing;
  };
  std::ptrdiff_t k0 = -1;
  for (std::size_t k = 0; k < n; ++k)
    if (v[k] >= 0.5 * theta) {
      k0 = static_cast<std::ptrdiff_t>(k);
      break;
    }
  if (k0 < 0) fail(ErrorKind::range, "tip_weight_mu: grid does not reach theta/2");
  for (std::ptrdiff_t k = k0 - 1; k >= 0; --k) {
    if (v[k] <= 0.0) {
      mu[k] = -746.0;  // exp underflows to 0: the weight vanishes at the tip
      continue;
    }
    const double dv = v[k + 1] - v[k];
    mu[k] = mu[k + 1] - 0.5 * dv * (integrand(k) + integrand(k + 1));
  }
  return mu;
}

DiffReport diff_solutions(const pde::Solution& s1, const pde::Solution& s2, double tau0,
                          const spectral::SpectralConfig& cfg1,
                          const spectral::SpectralConfig& cfg2, int n_hausdorff) {
  if (cfg1.theta != cfg2.theta || cfg1.quad_order != cfg2.quad_order)
    fail(ErrorKind::invalid_argument, "diff: theta and quadrature order must match");
  DiffReport rep;
  rep.tau0 = tau0;
  auto [a1, r1] = spectral::find_shift(s1, tau0, cfg1);
  auto [a2, r2] = spectral::find_shift(s2, tau0, cfg2);
  rep.alpha1 = a1;
  rep.alpha2 = a2;
  rep.ecc_mismatch = std::abs(r1.eccentricity - r2.eccentricity);

  const level::RenormalizedProfile rp1 = spectral::shifted_profile(s1, tau0, a1, cfg1);
  const level::RenormalizedProfile rp2 = spectral::shifted_profile(s2, tau0, a2, cfg2);
  const spectral::GaussQuadrature q = spectral::gauss_quadrature(cfg1.quad_order);
  const spectral::CutoffC cut(cfg1.theta);
  interp::CubicSpline v1(rp1.y, rp1.v, true), v2(rp2.y, rp2.v, true);
  const spectral::CylindricalProfile vc1(rp1, cut), vc2(rp2, cut);

  double nw = 0.0, nwc = 0.0, i1 = 0.0, iy = 0.0, ipsi = 0.0;
  for (int k = 0; k < q.order; ++k) {
    const double y = q.nodes[k], wq = q.weights[k];
    const double w = std::max(0.0, v1(y)) - std::max(0.0, v2(y));
    const double wc = vc1(y) - vc2(y);
    nw += wq * w * w;
    nwc += wq * wc * wc;
    i1 += wq * wc;
    iy += wq * wc * y;
    ipsi += wq * wc * (y * y - 2.0);
  }
  rep.w_H_norm = std::sqrt(nw);
  rep.wC_H_norm = std::sqrt(nwc);
  rep.p_plus_mismatch = std::sqrt(i1 * i1 / spectral::kNorm1Sq + iy * iy / spectral::kNormYSq);
  rep.p0_mismatch = std::abs(ipsi) / std::sqrt(spectral::kNormPsi0Sq);

  // mu-weighted tip norm of W_T = phi_T (Y1 - Y2) over (0, 2 theta]
  {
    const double h0 = std::exp(-tau0);
    const level::InverseProfile inv1 =
        level::invert_from_rows(s1, h0 - a1, h0, level::Side::right, cfg1.nv);
    const level::InverseProfile inv2 =
        level::invert_from_rows(s2, h0 - a2, h0, level::Side::right, cfg1.nv);
    const double v_hi = 2.0 * cfg1.theta;
    if (inv1.v_max < v_hi || inv2.v_max < v_hi)
      fail(ErrorKind::range, "diff: profiles do not cover the tip region");
    const int ngrid = 512;
    std::vector<double> vg(ngrid), Y1g(ngrid), Y2g(ngrid);
    interp::MonotoneCubic m1(inv1.v, inv1.Y), m2(inv2.v, inv2.Y);
    for (int k = 0; k < ngrid; ++k) {
      vg[k] = v_hi * k / (ngrid - 1);
      Y1g[k] = m1(vg[k]);
      Y2g[k] = m2(vg[k]);
    }
    const std::vector<double> mu = tip_weight_mu(vg, Y1g, cfg1.theta);
    const spectral::CutoffT phiT(cfg1.theta);
    double acc = 0.0;
    for (int k = 0; k + 1 < ngrid; ++k) {
      auto term = [&](int m) {
        const double wt = phiT(vg[m]) * (Y1g[m] - Y2g[m]);
        return wt * wt * std::exp(mu[m]);
      };
      acc += 0.5 * (vg[k + 1] - vg[k]) * (term(k) + term(k + 1));
    }
    rep.W_tip_norm = std::sqrt(acc);
  }

  // Hausdorff ladder over the common usable level range
  {
    const double hmin1 = 8.0 * std::max(s1.grid.hx, s1.grid.hr);
    const double hmin2 = 8.0 * std::max(s2.grid.hx, s2.grid.hr);
    const double lo = std::max({2.0, hmin1 + std::max(0.0, a1), hmin2 + std::max(0.0, a2)});
    const double hi = std::min(cfg1.cap * std::abs(s1.xi) + std::min(0.0, a1),
                               cfg2.cap * std::abs(s2.xi) + std::min(0.0, a2));
    if (!(hi > lo)) fail(ErrorKind::range, "diff: usable level ranges do not overlap");
    for (int k = 0; k < n_hausdorff; ++k) {
      const double h = std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k /
                                                   std::max(1, n_hausdorff - 1));
      const level::LevelProfile l1 = level::extract_level(s1, h - a1, cfg1.cap);
      const level::LevelProfile l2 = level::extract_level(s2, h - a2, cfg2.cap);
      const double d = level::hausdorff_distance(level::dense_curve(l1), level::dense_curve(l2));
      rep.hausdorff_by_h.emplace_back(h, d);
    }
  }
  return rep;
}

namespace {

pde::FamilyRecord make_record(double a, double xi, const pde::SolveConfig& cfg,
                              const spectral::SpectralConfig& scfg, const VerifyConfig& vcfg,
                              const bowl::Profile& z0, const pde::Solution* warm,
                              pde::Solution* out_sol) {
  pde::FamilyRecord rec;
  rec.a = a;
  try {
    pde::Solution sol = pde::find_R_for_depth(a, xi, cfg, warm);
    rec.R = sol.domain.R;
    rec.xi = sol.xi;
    rec.monotone_r_ok = sol.monotone_r_ok;
    const pde::TipCurvatures tc = pde::tip_curvatures(sol);
    rec.k = tc.k;
    rec.lambda = tc.lambda;
    rec.trace_dev = std::abs(tc.k + 2.0 * tc.lambda - 1.0);
    auto [alpha, srep] = spectral::find_shift(sol, scfg.tau0, scfg);
    rec.alpha_shift = alpha;
    rec.eccentricity = srep.eccentricity;
    rec.c0 = srep.c0;
    rec.kappa_residual = srep.kappa_residual;
    const double h_nom = std::exp(-scfg.tau0);
    const level::LevelProfile lp = level::extract_level(sol, h_nom - alpha, scfg.cap);
    const level::RenormalizedProfile rp = level::renormalize_with_scale(lp, h_nom, scfg.ny);
    rec.parabolic_dev = check_parabolic(rp, vcfg.y_max);
    rec.intermediate_dev = check_intermediate(rp, vcfg.z_band);
    const level::InverseProfile inv = level::invert_profile(rp, level::Side::right, scfg.nv);
    const level::TipProfile tp = level::zoom_tip(inv, rp.tau, vcfg.rho_max);
    rec.tip_dev = check_tip(tp, z0, vcfg.rho_max).c0;
    level::LevelProfile lp_nom = lp;
    lp_nom.h = h_nom;
    const DiameterDeviation dd = check_diameter(lp_nom);
    rec.diameter_dev_plus = dd.plus;
    rec.diameter_dev_minus = dd.minus;
    rec.concavity_excess = check_concavity(lp);
    rec.ok = true;
    if (out_sol) *out_sol = std::move(sol);
  } catch (const std::exception& e) {
    rec.ok = false;
    rec.message = e.what();
  }
  return rec;
}

}  // namespace

void sweep_family(const std::vector<double>& a_values, double xi, const pde::SolveConfig& cfg,
                  const spectral::SpectralConfig& scfg, const VerifyConfig& vcfg, int workers,
                  const std::function<void(const pde::FamilyRecord&)>& on_record) {
  for (std::size_t i = 1; i < a_values.size(); ++i)
    if (!(a_values[i] > a_values[i - 1]))
      fail(ErrorKind::invalid_argument, "sweep: a_values must be strictly increasing");
  const bowl::Profile z0 = make_z0(vcfg.rho_max);
  const int n = static_cast<int>(a_values.size());
  workers = std::clamp(workers, 1, std::max(1, n));

  std::vector<pde::FamilyRecord> records(n);
  std::vector<bool> done(n, false);
  std::mutex mtx;
  std::condition_variable cv;

  auto run_chunk = [&](int begin, int end) {
    pde::Solution prev;
    bool have_prev = false;
    for (int i = begin; i < end; ++i) {
      pde::Solution sol;
      pde::FamilyRecord rec = make_record(a_values[i], xi, cfg, scfg, vcfg, z0,
                                          have_prev ? &prev : nullptr, &sol);
      if (rec.ok) {
        prev = std::move(sol);
        have_prev = true;
      }
      {
        std::lock_guard<std::mutex> lk(mtx);
        records[i] = std::move(rec);
        done[i] = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const int chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(run_chunk, b, e);
  }

  // ordered, incremental emission
  double prev_k = 0.0;
  bool have_prev_k = false;
  for (int i = 0; i < n; ++i) {
    std::unique_lock<std::mutex> lk(mtx);
    cv.wait(lk, [&] { return done[i]; });
    pde::FamilyRecord rec = records[i];
    lk.unlock();
    if (rec.ok && have_prev_k) rec.k_increasing_from_prev = rec.k > prev_k;
    if (rec.ok) {
      prev_k = rec.k;
      have_prev_k = true;
    }
    on_record(rec);
  }
  for (auto& t : pool) t.join();
}

}  // namespace ovalbowl::verify
