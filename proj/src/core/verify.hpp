#pragma once
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/bowl.hpp"
#include "core/depth.hpp"
#include "core/level.hpp"
#include "core/spectral.hpp"

namespace ovalbowl::verify {

struct VerifyConfig {
  double y_max = 2.0;    // parabolic-region window
  double z_band = 0.3;   // intermediate region: |z| <= sqrt(2) - z_band
  double rho_max = 2.0;  // tip-region window
  double L = 0.7;        // collar: L/sqrt|tau| <= v <= 2 theta
};

// |tau| * sup_{|y|<=y_max} | v(y) - sqrt(2)(1 - (y^2-2)/(4|tau|)) |
double check_parabolic(const level::RenormalizedProfile& rp, double y_max);

// sup_{|z| <= sqrt(2)-z_band} | v(sqrt|tau| z) - sqrt(2-z^2) |
double check_intermediate(const level::RenormalizedProfile& rp, double z_band);

struct TipDeviation {
  double c0 = 0.0;  // sup |Z - Z0|
  double c2 = 0.0;  // sup of centered second-difference deviation
};
TipDeviation check_tip(const level::TipProfile& tp, const bowl::Profile& z0, double rho_max);

struct DiameterDeviation {
  double plus = 0.0, minus = 0.0;  // |d^±/sqrt(2 h log h) - 1|
};
DiameterDeviation check_diameter(const level::LevelProfile& lp);

// max over uniform interior triples of (V^2)_xx - 1/V^2 (physical form of the
// renormalized inequality (v^2)_yy <= e^tau/v^2)
double check_concavity(const level::LevelProfile& lp);

struct CollarResult {
  double dev = 0.0;
  bool applicable = false;  // false when |Y_v| falls below floor in the collar
};
CollarResult check_collar(const level::InverseProfile& inv, double tau, double theta, double L);

// fitted C = max |H - H_h| / H^3 over valid samples
double check_meancurv(const std::vector<level::CurvatureSample>& samples);

// finite-difference residuals of dc0/dtau + sqrt(8) c0^2 = 0 at interior
// ladder points (taus need not be uniformly spaced)
std::vector<double> fit_mode_ode(const std::vector<double>& taus, const std::vector<double>& c0s);

struct MonotoneResult {
  bool increasing = true;
  std::vector<std::pair<int, int>> violations;  // offending index pairs
};
MonotoneResult check_monotone_tip_map(const std::vector<double>& k_values, double tol = 1e-4);

struct AsymptoticsRow {
  double tau = 0.0;
  bool in_range = false;
  double parabolic_dev = 0.0, intermediate_dev = 0.0;
  double tip_dev = 0.0, tip_c2_dev = 0.0;
  double diameter_dev_plus = 0.0, diameter_dev_minus = 0.0;
  double concavity_excess = 0.0;
  double collar_dev = 0.0;
  bool collar_applicable = false;
  double meancurv_C = 0.0;
  double c0 = 0.0;
  std::string note;
};

struct AsymptoticsReport {
  double a = 0.0, xi = 0.0;
  double tau0 = 0.0, alpha_shift = 0.0;
  double theta = 0.0, cap = 0.0;
  VerifyConfig vcfg;
  std::vector<AsymptoticsRow> rows;
};

// Ladder over decreasing tau; one shift at the shallowest tau (the first
// entry), per the single-centering convention of the sharp asymptotics.
AsymptoticsReport build_asymptotics(const pde::Solution& sol, const std::vector<double>& taus,
                                    const spectral::SpectralConfig& scfg, const VerifyConfig& vcfg);

struct DiffReport {
  std::string label1, label2;
  double tau0 = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0;
  double w_H_norm = 0.0, wC_H_norm = 0.0;
  double p_plus_mismatch = 0.0, p0_mismatch = 0.0;
  double ecc_mismatch = 0.0;
  double W_tip_norm = 0.0;  // mu-weighted
  std::vector<std::pair<double, double>> hausdorff_by_h;
};

DiffReport diff_solutions(const pde::Solution& s1, const pde::Solution& s2, double tau0,
                          const spectral::SpectralConfig& cfg1,
                          const spectral::SpectralConfig& cfg2, int n_hausdorff = 9);

// mu(v,tau) built from Y1 per the tip-region weight: equals -Y1^2/4 for
// v >= theta/2, with the zeta-interpolated integrand below.
std::vector<double> tip_weight_mu(const std::vector<double>& v, const std::vector<double>& Y1,
                                  double theta);

// Per-a family sweep with warm-started continuation; each record carries tip
// curvatures, the spectral scalars at cfg.tau0 and the asymptotics deviations
// there. Per-a failures land in the record, the sweep continues.
void sweep_family(const std::vector<double>& a_values, double xi, const pde::SolveConfig& cfg,
                  const spectral::SpectralConfig& scfg, const VerifyConfig& vcfg, int workers,
                  const std::function<void(const pde::FamilyRecord&)>& on_record);

}  // namespace ovalbowl::verify
