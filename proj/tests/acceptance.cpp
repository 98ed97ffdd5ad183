// Acceptance suite: one criterion per invocation, one PASS/FAIL line per
// criterion on stdout. Long-running solves (the family sweep and the deep
// solves) run as fixture tasks that persist their outputs under --data so the
// criteria that share them can be executed independently.
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/bowl.hpp"
#include "core/depth.hpp"
#include "core/errors.hpp"
#include "core/interp.hpp"
#include "core/io.hpp"
#include "core/level.hpp"
#include "core/spectral.hpp"
#include "core/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace ovalbowl;

namespace {

constexpr double kThird = 1.0 / 3.0;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt8 = std::sqrt(8.0);

// ---- pinned acceptance parameters -------------------------------------

// criterion 1
constexpr double kC1Xi = -200.0;
constexpr int kC1Nx = 801, kC1Nr = 401;

// criteria 5/6 sweep
const std::vector<double> kSweepA = [] {
  std::vector<double> a;
  for (double v = 0.05; v < 0.325; v += 0.03) a.push_back(v);
  a.push_back(kThird);
  return a;
}();
constexpr double kSweepXi = -500.0;
constexpr int kSweepNx = 641, kSweepNr = 321;
constexpr double kSweepTau0 = -4.5;

// criteria 7-9 deep solves
struct DeepSpec {
  double a;
  int nx, nr;
};
const DeepSpec kDeep[3] = {{0.25, 1025, 513}, {0.18, 1153, 513}, {0.12, 1441, 481}};
constexpr double kDeepXi = -12500.0;

// criterion 7 boundedness caps (engineering choices; the paper's bounds are
// eps/|tau| with unquantified onset, so at desk scale we assert boundedness
// plus a non-increasing trend within a 20% band)
constexpr double kCapParabolic = 3.0;
constexpr double kCapIntermediate = 1.0;
constexpr double kCapTip = 1.0;
constexpr double kCapDiameter = 0.5;

// criterion 10
constexpr double kC10A = 0.20;
constexpr int kC10Nx = 513, kC10Nr = 257;
constexpr int kC10NxCoarse = 341, kC10NrCoarse = 171;
constexpr double kC10Tau0 = -5.0;

struct Line {
  bool pass = true;
  std::string details;
  void fail(const std::string& why) {
    pass = false;
    details += (details.empty() ? "" : "; ") + why;
  }
  void note(const std::string& s) { details += (details.empty() ? "" : "; ") + s; }
};

int report(int n, const std::string& name, const Line& line) {
  std::printf("criterion %02d [%s]: %s%s%s\n", n, name.c_str(), line.pass ? "PASS" : "FAIL",
              line.details.empty() ? "" : " -- ", line.details.c_str());
  return line.pass ? 0 : 1;
}

std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

// integer tau ladder -5, -6, ..., bounded by -min(9, log(0.3 |xi|))
std::vector<double> tau_ladder(double xi) {
  const double deepest = std::min(9.0, std::log(0.3 * std::abs(xi)));
  std::vector<double> taus;
  for (double t = -5.0; t >= -deepest; t -= 1.0) taus.push_back(t);
  return taus;
}

// ---- criterion 1 -------------------------------------------------------

int c1() {
  Line line;
  pde::SolveConfig cfg;
  cfg.nx = kC1Nx;
  cfg.nr = kC1Nr;
  const pde::Solution sol = pde::find_R_for_depth(kThird, kC1Xi, cfg);
  const auto tc = pde::tip_curvatures(sol);
  if (std::abs(tc.k - kThird) > 1e-2) line.fail("|k - 1/3| = " + fmt(std::abs(tc.k - kThird)));
  if (std::abs(tc.k + 2.0 * tc.lambda - 1.0) > 1e-3)
    line.fail("|k + 2 lambda - 1| = " + fmt(std::abs(tc.k + 2.0 * tc.lambda - 1.0)));

  const auto b = bowl::integrate(3, 1.0, sol.domain.semi_r() + 1.0, 1e-3);
  interp::CubicSpline ub(b.r, b.u);
  const double shift = ub(sol.domain.semi_r());
  double sup = 0.0;
  for (int j = 0; j < sol.grid.nr; ++j)
    for (int i = 0; i < sol.grid.nx; ++i) {
      if (!sol.grid.is_interior(i, j)) continue;
      const double rho = std::hypot(sol.grid.x(i), sol.grid.r(j));
      sup = std::max(sup, std::abs(sol.u[sol.grid.idx(i, j)] - (ub(rho) - shift)));
    }
  const double spacing = std::max(sol.grid.hx, sol.grid.hr);
  const double bound = 5.0 * spacing * spacing;
  if (sup > bound) line.fail("sup error " + fmt(sup) + " > 5 h^2 = " + fmt(bound));
  line.note("k=" + fmt(tc.k) + " sup_err=" + fmt(sup) + " bound=" + fmt(bound));
  return report(1, "round-bowl oracle", line);
}

// ---- criterion 2 -------------------------------------------------------

int c2() {
  Line line;
  const auto q = spectral::gauss_quadrature(80);
  std::function<double(double)> basis[3] = {[](double) { return 1.0; },
                                            [](double y) { return y; },
                                            [](double y) { return y * y - 2.0; }};
  const double diag_ref[3] = {2.0 * spectral::kSqrtPi, 4.0 * spectral::kSqrtPi,
                              16.0 * spectral::kSqrtPi};
  double worst = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double g = 0.0;
      for (int k = 0; k < q.order; ++k)
        g += q.weights[k] * basis[i](q.nodes[k]) * basis[j](q.nodes[k]);
      const double dev = i == j ? std::abs(g / diag_ref[i] - 1.0)
                                : std::abs(g) / diag_ref[std::max(i, j)];
      worst = std::max(worst, dev);
    }
  if (worst > 1e-10) line.fail("Gram deviation " + fmt(worst));
  line.note("max relative deviation " + fmt(worst));
  return report(2, "quadrature exactness", line);
}

// ---- criterion 3 -------------------------------------------------------

int c3() {
  Line line;
  const auto q = spectral::gauss_quadrature(80);
  double worst = 0.0;
  for (double tau0 : {-5.0, -7.0, -10.0}) {
    auto ansatz = [&](double y) { return kSqrt2 - (y * y - 2.0) / (kSqrt8 * std::abs(tau0)); };
    const double e0 = 4.0 * std::sqrt(2.0 * M_PI) / std::abs(tau0);
    worst = std::max(worst, std::abs(spectral::eccentricity(ansatz, q) - e0));
  }
  if (worst > 1e-8) line.fail("|E - e0| = " + fmt(worst));
  line.note("max |E - 4 sqrt(2 pi)/|tau0|| = " + fmt(worst));
  return report(3, "eccentricity identity", line);
}

// ---- criterion 4 -------------------------------------------------------

int c4() {
  Line line;
  const auto b2 = bowl::integrate(2, 1.0 / kSqrt2, 2.0, 1e-3);
  const auto b3 = bowl::integrate(3, 1.0, 2.0, 1e-3);
  const double e2 = std::abs(b2.second_deriv_at_zero() - 0.5 / kSqrt2);
  const double e3 = std::abs(b3.second_deriv_at_zero() - kThird);
  if (e2 > 1e-8) line.fail("dimension 2 tip dev " + fmt(e2));
  if (e3 > 1e-8) line.fail("dimension 3 tip dev " + fmt(e3));
  const auto c = bowl::integrate(2, 1.0 / kSqrt2, 2.0, 4e-3);
  const auto m = bowl::integrate(2, 1.0 / kSqrt2, 2.0, 2e-3);
  const auto f = bowl::integrate(2, 1.0 / kSqrt2, 2.0, 1e-3);
  const double order = std::log2(std::abs(c.u.back() - m.u.back()) /
                                 std::abs(m.u.back() - f.u.back()));
  if (order < 3.5) line.fail("step-halving order " + fmt(order));
  line.note("tip devs " + fmt(e2) + "/" + fmt(e3) + ", order " + fmt(order));
  return report(4, "bowl ODE series and convergence", line);
}

// ---- sweep fixture and criteria 5/6 ------------------------------------

int fix_sweep(const fs::path& data) {
  fs::create_directories(data);
  pde::SolveConfig cfg;
  cfg.nx = kSweepNx;
  cfg.nr = kSweepNr;
  spectral::SpectralConfig scfg;
  scfg.tau0 = kSweepTau0;
  verify::VerifyConfig vcfg;
  const bowl::Profile z0 = bowl::reference_z0(1.0 / kSqrt2, vcfg.rho_max + 1.0, 1e-3);

  ordered_json rows = ordered_json::array();
  pde::Solution prev;
  bool have_prev = false;
  for (double a : kSweepA) {
    ordered_json row;
    row["a"] = a;
    try {
      pde::Solution sol = pde::find_R_for_depth(a, kSweepXi, cfg, have_prev ? &prev : nullptr);
      const auto tc = pde::tip_curvatures(sol);
      auto [alpha, srep] = spectral::find_shift(sol, scfg.tau0, scfg);
      row["R"] = sol.domain.R;
      row["xi"] = sol.xi;
      row["k"] = tc.k;
      row["lambda"] = tc.lambda;
      row["alpha"] = alpha;
      row["eccentricity"] = srep.eccentricity;
      row["c0"] = srep.c0;
      row["kappa_residual"] = srep.kappa_residual;
      row["monotone_r_ok"] = sol.monotone_r_ok;
      const double spacing = std::max(sol.grid.hx, sol.grid.hr);
      row["spacing"] = spacing;
      // concavity over a log-spaced usable h ladder
      const double h_lo = std::max(3.0, 12.0 * spacing);
      const double h_hi = 0.95 * scfg.cap * std::abs(sol.xi);
      double conc = -1e300;
      for (int m = 0; m < 8; ++m) {
        const double h =
            std::exp(std::log(h_lo) + (std::log(h_hi) - std::log(h_lo)) * m / 7.0);
        conc = std::max(conc, verify::check_concavity(level::extract_level(sol, h, scfg.cap)));
      }
      row["concavity_max"] = conc;
      row["ok"] = true;
      prev = std::move(sol);
      have_prev = true;
    } catch (const std::exception& e) {
      row["ok"] = false;
      row["message"] = e.what();
    }
    rows.push_back(row);
    std::printf("sweep a=%.4f %s\n", a, rows.back()["ok"].get<bool>() ? "ok" : "failed");
    std::fflush(stdout);
  }
  std::ofstream(data / "sweep.json") << rows.dump(2) << "\n";
  std::printf("sweep fixture written\n");
  return 0;
}

ordered_json load_sweep(const fs::path& data) {
  std::ifstream f(data / "sweep.json");
  if (!f) fail(ErrorKind::io, "sweep fixture missing; run the fix_sweep task first");
  ordered_json j;
  f >> j;
  return j;
}

int c5(const fs::path& data) {
  Line line;
  const auto rows = load_sweep(data);
  std::vector<double> ks;
  for (const auto& r : rows) {
    if (!r["ok"].get<bool>()) {
      line.fail("solve failed at a=" + fmt(r["a"].get<double>()));
      continue;
    }
    ks.push_back(r["k"].get<double>());
  }
  const auto mono = verify::check_monotone_tip_map(ks, 1e-4);
  if (!mono.increasing) {
    for (const auto& [i, j] : mono.violations)
      line.fail("k margin violated between rows " + std::to_string(i) + " and " +
                std::to_string(j));
  }
  if (!ks.empty()) {
    const double k_end = ks.back();
    if (std::abs(k_end - kThird) > 1e-2) line.fail("k(1/3) = " + fmt(k_end));
    double min_margin = 1e300;
    for (std::size_t i = 1; i < ks.size(); ++i)
      min_margin = std::min(min_margin, ks[i] - ks[i - 1]);
    line.note("k range [" + fmt(ks.front()) + ", " + fmt(ks.back()) + "], min margin " +
              fmt(min_margin));
  }
  return report(5, "tip-map monotonicity", line);
}

int c6(const fs::path& data) {
  Line line;
  const auto rows = load_sweep(data);
  double worst_ratio = -1e300;
  for (const auto& r : rows) {
    if (!r["ok"].get<bool>()) {
      line.fail("solve failed at a=" + fmt(r["a"].get<double>()));
      continue;
    }
    const double spacing = r["spacing"].get<double>();
    const double conc = r["concavity_max"].get<double>();
    const double bound = 10.0 * spacing * spacing;
    if (conc > bound)
      line.fail("a=" + fmt(r["a"].get<double>()) + ": excess " + fmt(conc) + " > " + fmt(bound));
    worst_ratio = std::max(worst_ratio, conc / bound);
  }
  line.note("worst excess/bound ratio " + fmt(worst_ratio));
  return report(6, "almost quadratic concavity", line);
}

// ---- deep fixtures and criteria 7/8/9 ----------------------------------

int fix_deep(const fs::path& data, int idx) {
  fs::create_directories(data);
  const DeepSpec& spec = kDeep[idx];
  pde::SolveConfig cfg;
  cfg.nx = spec.nx;
  cfg.nr = spec.nr;
  cfg.depth_tol = 5e-3;
  const pde::Solution sol = pde::find_R_for_depth(spec.a, kDeepXi, cfg);
  const std::string base = "deep" + std::to_string(idx + 1);
  io::save_solution(sol, (data / (base + ".json")).string(), (data / (base + ".csv")).string());
  std::printf("deep solve a=%.2f: xi=%.1f R=%.2f iters=%d residual=%.2e\n", spec.a, sol.xi,
              sol.domain.R, sol.newton_iters, sol.residual_inf);
  return 0;
}

pde::Solution load_deep(const fs::path& data, int idx) {
  const fs::path p = data / ("deep" + std::to_string(idx + 1) + ".json");
  if (!fs::exists(p)) fail(ErrorKind::io, "deep fixture missing; run fix_deep tasks first");
  return io::load_solution(p.string());
}

bool trend_ok(const std::vector<double>& dev, double cap, const std::string& what, Line& line) {
  bool ok = true;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    if (!(dev[i] <= cap)) {
      line.fail(what + "[" + std::to_string(i) + "] = " + fmt(dev[i]) + " above cap " + fmt(cap));
      ok = false;
    }
    if (i > 0 && !(dev[i] <= 1.2 * dev[i - 1] + 1e-9)) {
      line.fail(what + " increases beyond the 20% band at rung " + std::to_string(i) + " (" +
                fmt(dev[i - 1]) + " -> " + fmt(dev[i]) + ")");
      ok = false;
    }
  }
  return ok;
}

int c7(const fs::path& data) {
  Line line;
  spectral::SpectralConfig scfg;
  verify::VerifyConfig vcfg;
  for (int idx = 0; idx < 3; ++idx) {
    const pde::Solution sol = load_deep(data, idx);
    const auto taus = tau_ladder(sol.xi);
    const auto rep = verify::build_asymptotics(sol, taus, scfg, vcfg);
    std::vector<double> par, inter, tip, dia;
    for (const auto& r : rep.rows) {
      if (!r.in_range) continue;
      par.push_back(r.parabolic_dev);
      inter.push_back(r.intermediate_dev);
      tip.push_back(r.tip_dev);
      dia.push_back(std::max(r.diameter_dev_plus, r.diameter_dev_minus));
    }
    const std::string tag = "a=" + fmt(sol.domain.a) + " ";
    if (par.size() < 3) {
      line.fail(tag + "fewer than 3 in-range ladder rungs");
      continue;
    }
    trend_ok(par, kCapParabolic, tag + "parabolic", line);
    trend_ok(inter, kCapIntermediate, tag + "intermediate", line);
    trend_ok(tip, kCapTip, tag + "tip", line);
    trend_ok(dia, kCapDiameter, tag + "diameter", line);
    line.note(tag + "rungs=" + std::to_string(par.size()) + " par " + fmt(par.front()) + "->" +
              fmt(par.back()) + " tip " + fmt(tip.front()) + "->" + fmt(tip.back()));
  }
  return report(7, "sharp asymptotics trends", line);
}

int c8(const fs::path& data) {
  Line line;
  spectral::SpectralConfig scfg;
  verify::VerifyConfig vcfg;
  for (int idx = 0; idx < 3; ++idx) {
    const pde::Solution sol = load_deep(data, idx);
    const auto rep = verify::build_asymptotics(sol, tau_ladder(sol.xi), scfg, vcfg);
    double cmin = 1e300, cmax = 0.0;
    int rungs = 0;
    for (const auto& r : rep.rows) {
      if (!r.in_range || r.meancurv_C <= 1e-12) continue;
      cmin = std::min(cmin, r.meancurv_C);
      cmax = std::max(cmax, r.meancurv_C);
      ++rungs;
    }
    const std::string tag = "a=" + fmt(sol.domain.a);
    if (rungs < 3) {
      line.fail(tag + ": fewer than 3 usable rungs");
      continue;
    }
    if (cmax / cmin >= 3.0)
      line.fail(tag + ": fitted C varies by " + fmt(cmax / cmin) + " across the ladder");
    line.note(tag + " C in [" + fmt(cmin) + ", " + fmt(cmax) + "]");
  }
  return report(8, "mean-curvature estimate boundedness", line);
}

int c9(const fs::path& data) {
  Line line;
  const pde::Solution sol = load_deep(data, 0);  // the deepest configuration
  spectral::SpectralConfig scfg;
  const auto taus = tau_ladder(sol.xi);
  std::vector<double> c0s;
  for (double t : taus) {
    scfg.tau0 = t;
    auto [alpha, rep] = spectral::find_shift(sol, t, scfg);
    (void)alpha;
    c0s.push_back(rep.c0);
  }
  const auto res = verify::fit_mode_ode(taus, c0s);
  for (std::size_t k = 0; k < res.size(); ++k) {
    const double scale = kSqrt8 * c0s[k + 1] * c0s[k + 1];
    if (!(std::abs(res[k]) <= 0.5 * scale))
      line.fail("interior point tau=" + fmt(taus[k + 1]) + ": |res| = " + fmt(std::abs(res[k])) +
                " > 0.5*sqrt(8)*c0^2 = " + fmt(0.5 * scale));
    line.note("tau=" + fmt(taus[k + 1]) + " ratio " + fmt(std::abs(res[k]) / scale));
  }
  if (res.empty()) line.fail("no interior ladder points");
  return report(9, "neutral-mode ODE", line);
}

// ---- criterion 10 -------------------------------------------------------

double ecc_at(const pde::Solution& sol, const spectral::SpectralConfig& scfg) {
  auto [alpha, rep] = spectral::find_shift(sol, scfg.tau0, scfg);
  (void)alpha;
  return rep.eccentricity;
}

int c10() {
  Line line;
  pde::SolveConfig cfg;
  cfg.nx = kC10Nx;
  cfg.nr = kC10Nr;
  spectral::SpectralConfig cfgA, cfgB;
  cfgA.tau0 = cfgB.tau0 = kC10Tau0;
  cfgA.cap = 0.5;  // h0 = e^5 needs cap*300 >= 148.4
  cfgB.cap = 0.3;

  const pde::Solution solA = pde::find_R_for_depth(kC10A, -300.0, cfg);
  const pde::Solution solB = pde::find_R_for_depth(kC10A, -600.0, cfg, &solA);
  pde::SolveConfig cfg_coarse = cfg;
  cfg_coarse.nx = kC10NxCoarse;
  cfg_coarse.nr = kC10NrCoarse;
  const pde::Solution solB_coarse = pde::find_R_for_depth(kC10A, -600.0, cfg_coarse);

  // Richardson-style grid-error estimate from the deeper solution at two
  // resolutions (second order, ratio 1.5 => error_fine ~ D/(1.5^2-1))
  const auto est_rep = verify::diff_solutions(solB, solB_coarse, kC10Tau0, cfgB, cfgB, 9);
  auto est_at = [&](double h) {
    const auto& v = est_rep.hausdorff_by_h;
    const double lh = std::log(h);
    for (std::size_t k = 1; k < v.size(); ++k) {
      if (lh <= std::log(v[k].first) + 1e-12) {
        const double t = (lh - std::log(v[k - 1].first)) /
                         (std::log(v[k].first) - std::log(v[k - 1].first));
        const double D = v[k - 1].second + t * (v[k].second - v[k - 1].second);
        return D / 1.25 + 1e-9;
      }
    }
    return v.back().second / 1.25 + 1e-9;
  };

  const auto pair1 = verify::diff_solutions(solA, solB, kC10Tau0, cfgA, cfgB, 9);
  for (const auto& [h, d] : pair1.hausdorff_by_h) {
    if (!(d <= 3.0 * est_at(h)))
      line.fail("same-a pair: D(" + fmt(h) + ") = " + fmt(d) + " > 3*est = " +
                fmt(3.0 * est_at(h)));
  }

  // matched-eccentricity pair: adjust a at xi = -600 until the eccentricities
  // at tau0 agree; secant with warm-started depth solves
  const double eccA = ecc_at(solA, cfgA);
  pde::Solution warm = solB;
  auto ecc_of_a = [&](double a) {
    warm = pde::find_R_for_depth(a, -600.0, cfg, &warm);
    return ecc_at(warm, cfgB) - eccA;
  };
  double a0 = kC10A, g0 = ecc_at(solB, cfgB) - eccA;
  double a1 = kC10A + (g0 > 0 ? -0.004 : 0.004), g1 = ecc_of_a(a1);
  int it = 0;
  while (std::abs(g1) > 2e-6 && it++ < 40) {
    const double step = g1 * (a1 - a0) / (g1 - g0);
    double a2 = a1 - step;
    a2 = std::clamp(a2, 0.1, 0.3);
    a0 = a1;
    g0 = g1;
    a1 = a2;
    g1 = ecc_of_a(a1);
  }
  if (std::abs(g1) > 2e-6) {
    line.fail("eccentricity matching stalled at |dE| = " + fmt(std::abs(g1)));
    return report(10, "spectral-uniqueness probe", line);
  }
  const pde::Solution& solM = warm;
  line.note("matched a = " + fmt(a1) + " (dE = " + fmt(g1) + ", k = " +
            fmt(pde::tip_curvatures(solM).k) + " vs " + fmt(pde::tip_curvatures(solA).k) + ")");

  const auto pair2 = verify::diff_solutions(solA, solM, kC10Tau0, cfgA, cfgB, 9);
  if (!(pair2.p_plus_mismatch <= 1e-6))
    line.fail("p_plus mismatch " + fmt(pair2.p_plus_mismatch));
  if (!(pair2.p0_mismatch <= 1e-6)) line.fail("p0 mismatch " + fmt(pair2.p0_mismatch));
  for (const auto& [h, d] : pair2.hausdorff_by_h) {
    if (!(d <= 3.0 * est_at(h)))
      line.fail("matched pair: D(" + fmt(h) + ") = " + fmt(d) + " > 3*est = " +
                fmt(3.0 * est_at(h)));
  }
  double dmax1 = 0.0, dmax2 = 0.0;
  for (const auto& [h, d] : pair1.hausdorff_by_h) dmax1 = std::max(dmax1, d);
  for (const auto& [h, d] : pair2.hausdorff_by_h) dmax2 = std::max(dmax2, d);
  line.note("max D same-a " + fmt(dmax1) + ", matched " + fmt(dmax2) + ", p0 " +
            fmt(pair2.p0_mismatch));
  return report(10, "spectral-uniqueness probe", line);
}

// ---- criterion 11 -------------------------------------------------------

int c11(const fs::path& data) {
  Line line;
  fs::create_directories(data);
  pde::SolveConfig cfg;
  cfg.nx = 401;
  cfg.nr = 201;
  const pde::Solution sol = pde::find_R_for_depth(0.28, -150.0, cfg);
  spectral::SpectralConfig scfg;
  scfg.tau0 = -3.5;
  verify::VerifyConfig vcfg;

  auto scalars = [&](const pde::Solution& s) {
    std::vector<double> v;
    auto [alpha, rep] = spectral::find_shift(s, scfg.tau0, scfg);
    v = {alpha, rep.p_plus_residual, rep.c0, rep.kappa_residual, rep.eccentricity,
         rep.p_minus_norm};
    const auto tc = pde::tip_curvatures(s);
    v.push_back(tc.k);
    v.push_back(tc.lambda);
    const auto arep = verify::build_asymptotics(s, {scfg.tau0, scfg.tau0 - 0.5}, scfg, vcfg);
    for (const auto& r : arep.rows) {
      v.push_back(r.parabolic_dev);
      v.push_back(r.intermediate_dev);
      v.push_back(r.tip_dev);
      v.push_back(r.diameter_dev_plus);
      v.push_back(r.concavity_excess);
      v.push_back(r.meancurv_C);
      v.push_back(r.c0);
    }
    return v;
  };

  const auto before = scalars(sol);
  const auto jp = data / "c11.json", cp = data / "c11.csv";
  io::save_solution(sol, jp.string(), cp.string());
  const pde::Solution back = io::load_solution(jp.string());
  const auto after = scalars(back);
  double worst = 0.0;
  for (std::size_t k = 0; k < before.size(); ++k)
    worst = std::max(worst, std::abs(before[k] - after[k]));
  if (worst > 1e-12) line.fail("report scalar drift " + fmt(worst));

  const auto cp2 = data / "c11_rewrite.csv";
  io::save_solution(back, (data / "c11_rewrite.json").string(), cp2.string());
  std::ifstream f1(cp, std::ios::binary), f2(cp2, std::ios::binary);
  std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
  std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
  if (s1 != s2) line.fail("re-saved CSV not byte-identical");
  line.note("max scalar drift " + fmt(worst) + " over " + std::to_string(before.size()) +
            " scalars");
  return report(11, "determinism and persistence", line);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr,
                 "usage: ovalbowl_acceptance <task> [--data DIR]\n"
                 "tasks: fix_sweep fix_deep1 fix_deep2 fix_deep3 c1..c11\n");
    return 2;
  }
  const std::string task = argv[1];
  fs::path data = "acceptance_data";
  for (int i = 2; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--data") == 0) data = argv[i + 1];

  try {
    if (task == "fix_sweep") return fix_sweep(data);
    if (task == "fix_deep1") return fix_deep(data, 0);
    if (task == "fix_deep2") return fix_deep(data, 1);
    if (task == "fix_deep3") return fix_deep(data, 2);
    if (task == "c1") return c1();
    if (task == "c2") return c2();
    if (task == "c3") return c3();
    if (task == "c4") return c4();
    if (task == "c5") return c5(data);
    if (task == "c6") return c6(data);
    if (task == "c7") return c7(data);
    if (task == "c8") return c8(data);
    if (task == "c9") return c9(data);
    if (task == "c10") return c10();
    if (task == "c11") return c11(data);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance task %s failed: %s\n", task.c_str(), e.what());
    return 1;
  }
  std::fprintf(stderr, "unknown task %s\n", task.c_str());
  return 2;
}
