#include <doctest.h>

#include <cmath>

#include "core/bowl.hpp"
#include "core/depth.hpp"
#include "core/errors.hpp"
#include "core/level.hpp"
#include "core/spectral.hpp"
#include "core/verify.hpp"

using namespace ovalbowl;

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt8 = std::sqrt(8.0);

level::RenormalizedProfile profile_from(double tau, const std::function<double(double)>& v,
                                        double y_lim, int n = 2001) {
  level::RenormalizedProfile rp;
  rp.tau = tau;
  rp.h_scale = std::exp(-tau);
  for (int k = 0; k < n; ++k) {
    const double y = -y_lim + 2.0 * y_lim * k / (n - 1);
    rp.y.push_back(y);
    rp.v.push_back(std::max(0.0, v(y)));
    rp.raw_y.push_back(y);
    rp.raw_v.push_back(rp.v.back());
  }
  return rp;
}
}  // namespace

TEST_CASE("parabolic check: exact ansatz and the cylinder arithmetic") {
  const double tau = -6.0;
  auto ansatz = [&](double y) {
    return kSqrt2 * (1.0 - (y * y - 2.0) / (4.0 * std::abs(tau)));
  };
  const auto rp_exact = profile_from(tau, ansatz, 3.0);
  CHECK(verify::check_parabolic(rp_exact, 2.0) < 1e-12);

  const auto rp_cyl = profile_from(tau, [](double) { return kSqrt2; }, 3.0);
  // |tau| * sup sqrt(2)|y^2-2|/(4|tau|) over |y|<=2 equals sqrt(2)/2
  CHECK(verify::check_parabolic(rp_cyl, 2.0) == doctest::Approx(kSqrt2 / 2.0).epsilon(1e-6));
}

TEST_CASE("intermediate check: semicircle and cylinder arithmetic") {
  const double tau = -7.0;
  const double root = std::sqrt(std::abs(tau));
  auto semicircle = [&](double y) {
    const double z = y / root;
    return z * z < 2.0 ? std::sqrt(2.0 - z * z) : 0.0;
  };
  const auto rp = profile_from(tau, semicircle, root * kSqrt2 * 0.999);
  CHECK(verify::check_intermediate(rp, 0.3) < 2e-4);

  const auto rp_cyl = profile_from(tau, [](double) { return kSqrt2; }, root * kSqrt2);
  const double z_lim = kSqrt2 - 0.3;
  const double ref = kSqrt2 - std::sqrt(2.0 - z_lim * z_lim);
  CHECK(verify::check_intermediate(rp_cyl, 0.3) == doctest::Approx(ref).epsilon(1e-6));
}

TEST_CASE("tip check: Z = Z0 gives zero, and Z0''(0) = -1/(2 sqrt 2)") {
  const auto z0 = bowl::reference_z0(1.0 / kSqrt2, 3.0, 1e-3);
  level::TipProfile tp;
  tp.tau = -8.0;
  interp::CubicSpline z0s(z0.r, z0.u);
  for (int k = 0; k < 600; ++k) {
    tp.rho.push_back(2.0 * k / 599.0);
    tp.Z.push_back(z0s(tp.rho.back()));
  }
  const auto dev = verify::check_tip(tp, z0, 2.0);
  CHECK(dev.c0 < 1e-9);
  CHECK(dev.c2 < 1e-4);
  // discrete second difference of Z0 at rho = 0
  const double h = z0.step;
  const double d2 = (-2.0 * z0.u[2] + 32.0 * z0.u[1] - 30.0 * z0.u[0]) / (12.0 * h * h);
  CHECK(d2 == doctest::Approx(-1.0 / (2.0 * kSqrt2)).epsilon(1e-7));
}

TEST_CASE("diameter check fixtures") {
  level::LevelProfile lp;
  lp.h = std::exp(8.0);
  const double ref = std::sqrt(2.0 * lp.h * std::log(lp.h));
  lp.d_plus = ref;
  lp.d_minus = ref;
  auto dd = verify::check_diameter(lp);
  CHECK(dd.plus < 1e-14);
  CHECK(dd.minus < 1e-14);
  lp.d_plus = 1.1 * ref;
  dd = verify::check_diameter(lp);
  CHECK(dd.plus == doctest::Approx(0.1).epsilon(1e-12));
  lp.h = 0.5;
  CHECK_THROWS_AS(verify::check_diameter(lp), Error);
}

TEST_CASE("concavity check fixtures: cylinder and sphere") {
  const double h = 10.0;
  level::LevelProfile cyl;
  cyl.h = h;
  const double V = std::sqrt(2.0 * h);
  cyl.d_minus = cyl.d_plus = 5.0;
  cyl.x.push_back(-5.0);
  cyl.V.push_back(0.0);
  for (int k = 0; k <= 100; ++k) {
    cyl.x.push_back(-4.0 + 8.0 * k / 100.0);
    cyl.V.push_back(V);
  }
  cyl.x.push_back(5.0);
  cyl.V.push_back(0.0);
  CHECK(verify::check_concavity(cyl) == doctest::Approx(-1.0 / (2.0 * h)).epsilon(1e-9));

  level::LevelProfile sph;
  sph.h = h;
  const double rho = 4.0;
  sph.d_minus = sph.d_plus = rho;
  sph.x.push_back(-rho);
  sph.V.push_back(0.0);
  for (int k = 1; k < 100; ++k) {
    const double x = -rho + 2.0 * rho * k / 100.0;
    sph.x.push_back(x);
    sph.V.push_back(std::sqrt(rho * rho - x * x));
  }
  sph.x.push_back(rho);
  sph.V.push_back(0.0);
  // (V^2)_xx - 1/V^2 = -2 - 1/V^2: always below -2, maximal at the widest point
  const double ex = verify::check_concavity(sph);
  CHECK(ex == doctest::Approx(-2.0 - 1.0 / (rho * rho)).epsilon(1e-9));
  CHECK(ex < 0.0);
}

TEST_CASE("collar check: Gaussian fixture vanishes, flat fixture inapplicable") {
  level::InverseProfile inv;
  inv.side = level::Side::right;
  inv.tau = -9.0;
  const double A = 3.0;
  inv.v_max = 0.5;
  for (int k = 0; k < 600; ++k) {
    const double v = 0.5 * k / 599.0;
    inv.v.push_back(v);
    inv.Y.push_back(A * std::exp(-v * v / 4.0));
  }
  const auto res = verify::check_collar(inv, -9.0, 0.2, 0.7);
  CHECK(res.applicable);
  CHECK(res.dev < 1e-5);

  level::InverseProfile flat = inv;
  for (auto& y : flat.Y) y = A;
  const auto res2 = verify::check_collar(flat, -9.0, 0.2, 0.7);
  CHECK_FALSE(res2.applicable);
}

TEST_CASE("mean curvature constant fit") {
  std::vector<level::CurvatureSample> s(2);
  s[0].H = 0.5;
  s[0].H_h = 0.5;
  s[0].valid = true;
  s[1].H = 0.1;
  s[1].H_h = 0.1005;
  s[1].valid = true;
  CHECK(verify::check_meancurv({s[0]}) == 0.0);
  CHECK(verify::check_meancurv(s) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("neutral-mode ODE residuals") {
  std::vector<double> taus, c0s;
  for (double t = -5.0; t >= -9.0; t -= 1.0) {
    taus.push_back(t);
    c0s.push_back(1.0 / (kSqrt8 * t));
  }
  const auto res = verify::fit_mode_ode(taus, c0s);
  REQUIRE(res.size() == taus.size() - 2);
  for (std::size_t k = 0; k < res.size(); ++k) {
    const double tau = taus[k + 1];
    // centered difference of 1/(sqrt 8 tau) leaves a 1/(tau^2-1) fraction
    const double expected_ratio = 1.0 / (tau * tau - 1.0);
    const double ratio = std::abs(res[k]) / (kSqrt8 * c0s[k + 1] * c0s[k + 1]);
    CHECK(ratio == doctest::Approx(std::abs(expected_ratio)).epsilon(1e-9));
  }
  // constant c0 leaves exactly sqrt(8) c0^2
  std::vector<double> flat(5, -0.04);
  const auto res2 = verify::fit_mode_ode({-5, -6, -7, -8, -9}, flat);
  for (double r : res2) CHECK(r == doctest::Approx(kSqrt8 * 0.04 * 0.04).epsilon(1e-12));
}

TEST_CASE("monotone tip map check") {
  const auto ok = verify::check_monotone_tip_map({0.05, 0.12, 0.21, 0.33});
  CHECK(ok.increasing);
  CHECK(ok.violations.empty());
  const auto bad = verify::check_monotone_tip_map({0.05, 0.21, 0.12, 0.33});
  CHECK_FALSE(bad.increasing);
  REQUIRE(bad.violations.size() == 1);
  CHECK(bad.violations[0].first == 1);
  CHECK(bad.violations[0].second == 2);
}

TEST_CASE("tip weight: exact identity above theta/2 and vanishing at v=0") {
  const double theta = 0.2;
  std::vector<double> v, Y;
  for (int k = 0; k < 400; ++k) {
    v.push_back(2.0 * theta * k / 399.0);
    Y.push_back(4.0 - v.back());
  }
  const auto mu = verify::tip_weight_mu(v, Y, theta);
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] >= 0.5 * theta) CHECK(mu[k] == doctest::Approx(-0.25 * Y[k] * Y[k]).epsilon(1e-14));
  CHECK(std::exp(mu[0]) == 0.0);
}

TEST_CASE("diff of a solution with itself vanishes") {
  pde::SolveConfig cfg;
  cfg.nx = 241;
  cfg.nr = 121;
  const auto sol = pde::find_R_for_depth(0.3, -60.0, cfg);
  spectral::SpectralConfig scfg;
  const double tau0 = -std::log(12.0);
  const auto rep = verify::diff_solutions(sol, sol, tau0, scfg, scfg, 5);
  CHECK(rep.w_H_norm < 1e-12);
  CHECK(rep.wC_H_norm < 1e-12);
  CHECK(rep.p_plus_mismatch < 1e-12);
  CHECK(rep.p0_mismatch < 1e-12);
  CHECK(rep.ecc_mismatch < 1e-12);
  CHECK(rep.W_tip_norm < 1e-12);
  for (const auto& [h, d] : rep.hausdorff_by_h) {
    CHECK(d == 0.0);
    CHECK(h > 0.0);
  }
}

TEST_CASE("asymptotics report on a moderately deep solve") {
  pde::SolveConfig cfg;
  cfg.nx = 301;
  cfg.nr = 151;
  const auto sol = pde::find_R_for_depth(0.25, -120.0, cfg);
  spectral::SpectralConfig scfg;
  verify::VerifyConfig vcfg;
  const double tau0 = -std::log(24.0);
  const auto rep = verify::build_asymptotics(sol, {tau0, tau0 - 0.3}, scfg, vcfg);
  REQUIRE(rep.rows.size() == 2);
  for (const auto& row : rep.rows) {
    CHECK(row.in_range);
    CHECK(std::isfinite(row.parabolic_dev));
    CHECK(std::isfinite(row.intermediate_dev));
    CHECK(std::isfinite(row.tip_dev));
    CHECK(row.concavity_excess < 1.0);
    CHECK(std::isfinite(row.meancurv_C));
  }
  // determinism: the same build twice gives identical scalars
  const auto rep2 = verify::build_asymptotics(sol, {tau0, tau0 - 0.3}, scfg, vcfg);
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    CHECK(rep.rows[k].parabolic_dev == rep2.rows[k].parabolic_dev);
    CHECK(rep.rows[k].tip_dev == rep2.rows[k].tip_dev);
    CHECK(rep.rows[k].c0 == rep2.rows[k].c0);
  }
}
