// Command-line front end for the ovalbowl shared library. Everything below
// talks to the solver through the C API only.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ovalbowl/ovalbowl.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::string tag = "run";
  double theta = 0.0;  // 0 = library default
  double tau0 = -5.0;
  int quad_order = 0;
  double cap = 0.0;
  json cfg;  // parsed --config document

  void load_config() {
    if (config_path.empty()) return;
    std::ifstream f(config_path);
    if (!f) throw CLI::ValidationError("--config", "cannot open " + config_path);
    f >> cfg;
  }
  template <class T>
  T pick(const CLI::Option* opt, const char* key, T flag_value, T fallback) const {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (cfg.contains(key)) return cfg[key].get<T>();
    return flag_value != T{} ? flag_value : fallback;
  }
};

int exit_code_for(ob_status st) {
  return st == OB_ERR_INVALID_ARGUMENT ? kExitConfig : kExitFail;
}

int fail_with(ob_status st, const std::string& what) {
  std::cerr << "error: " << what << ": " << ob_last_error() << "\n";
  return exit_code_for(st);
}

void print_aligned(const json& j, const std::string& title) {
  std::cout << title << "\n";
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::cout << "  " << it.key() << std::string(width - it.key().size() + 2, ' ')
              << it.value().dump() << "\n";
  }
}

std::string tag_for(const std::string& tag, double a, double xi) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_a%.6g_xi%.6g", tag.c_str(), a, xi);
  return buf;
}

int sweep_workers() {
  const char* env = std::getenv("OVALBOWL_WORKERS");
  if (env == nullptr) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

struct SolutionHandle {
  ob_solution* p = nullptr;
  ~SolutionHandle() { ob_solution_free(p); }
};

struct StringHandle {
  char* p = nullptr;
  ~StringHandle() { ob_string_free(p); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ovalbowl: SO(2)-symmetric translating solitons on ellipsoidal domains"};
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  app.add_option("--config", c.config_path, "JSON config file; flags override its values");
  app.add_option("--out", c.out_dir, "output directory");
  app.add_option("--tag", c.tag, "output filename prefix");
  auto* optTheta = app.add_option("--theta", c.theta, "cylindrical cutoff scale (default 0.2)");
  auto* optTau0 = app.add_option("--tau0", c.tau0, "renormalized reference time (default -5)");
  auto* optQuad = app.add_option("--quad-order", c.quad_order, "Gauss quadrature order (default 80)");
  auto* optCap = app.add_option("--cap", c.cap, "usable-level fraction of |xi| (default 0.3)");

  // solve
  double a = 0.0, xi = 0.0, R = 0.0, newton_tol = 0.0, depth_tol = 0.0;
  int nx = 0, nr = 0;
  auto* solve = app.add_subcommand("solve", "solve one translator and report its spectral data");
  auto* sA = solve->add_option("--a", a, "ellipsoidal parameter in (0.02, 1/3]");
  auto* sXi = solve->add_option("--xi", xi, "target center depth (< 0)");
  auto* sR = solve->add_option("--R", R, "domain radius (solve at fixed R instead of depth)");
  auto* sNx = solve->add_option("--nx", nx, "grid columns (odd)");
  auto* sNr = solve->add_option("--nr", nr, "grid rows");
  solve->add_option("--newton-tol", newton_tol, "Newton residual tolerance (default 1e-10)");
  solve->add_option("--depth-tol", depth_tol, "relative depth tolerance (default 1e-4)");

  // sweep
  std::string a_values_str;
  double a_min = 0.0, a_max = 0.0, a_step = 0.0;
  auto* sweep = app.add_subcommand("sweep", "family sweep over a at fixed depth");
  sweep->add_option("--a-values", a_values_str, "comma-separated a list");
  sweep->add_option("--a-min", a_min, "range start");
  sweep->add_option("--a-max", a_max, "range end");
  sweep->add_option("--a-step", a_step, "range step");
  auto* swXi = sweep->add_option("--xi", xi, "target center depth (< 0)");
  auto* swNx = sweep->add_option("--nx", nx, "grid columns (odd)");
  auto* swNr = sweep->add_option("--nr", nr, "grid rows");

  // verify
  std::string sol_path, sol_path_b;
  double tau_min = 0.0, y_max = 0.0, z_band = 0.0, rho_max = 0.0, Lcollar = 0.0;
  auto* verify = app.add_subcommand("verify", "asymptotics ladder for a saved solution");
  verify->add_option("--solution", sol_path, "solution JSON path")->required();
  auto* vTmin = verify->add_option("--tau-min", tau_min, "deepest ladder time (default tau0)");
  verify->add_option("--y-max", y_max, "parabolic window (default 2)");
  verify->add_option("--z-band", z_band, "intermediate band margin (default 0.3)");
  verify->add_option("--rho-max", rho_max, "tip window (default 2)");
  verify->add_option("--L", Lcollar, "collar constant (default 0.7)");

  // diff
  double cap_b = 0.0;
  auto* diff = app.add_subcommand("diff", "two-solution difference diagnostics");
  diff->add_option("--solution-a", sol_path, "first solution JSON")->required();
  diff->add_option("--solution-b", sol_path_b, "second solution JSON")->required();
  diff->add_option("--cap-b", cap_b, "usable-level fraction for the second solution");

  // bowl
  int dimension = 2;
  double speed = 0.0, r_max_bowl = 0.0, step = 0.0;
  auto* bowlcmd = app.add_subcommand("bowl", "radial bowl profile CSV");
  bowlcmd->add_option("--dimension", dimension, "2 or 3");
  auto* bSpeed = bowlcmd->add_option("--speed", speed, "translation speed (default 1/sqrt(2) for dimension 2, 1 otherwise)");
  bowlcmd->add_option("--r-max", r_max_bowl, "profile radius (default 2)");
  bowlcmd->add_option("--step", step, "integration step (default r_max/2000)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    c.load_config();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  c.theta = c.pick(optTheta, "theta", c.theta, 0.0);
  c.tau0 = c.pick(optTau0, "tau0", c.tau0, -5.0);
  c.quad_order = c.pick(optQuad, "quad_order", c.quad_order, 0);
  c.cap = c.pick(optCap, "cap", c.cap, 0.0);
  if (c.cfg.contains("out") && c.out_dir == ".") c.out_dir = c.cfg["out"].get<std::string>();
  if (c.cfg.contains("tag") && c.tag == "run") c.tag = c.cfg["tag"].get<std::string>();

  std::error_code ec;
  fs::create_directories(c.out_dir, ec);

  ob_spectral_params sp{};
  sp.tau0 = c.tau0;
  sp.theta = c.theta;
  sp.quad_order = c.quad_order;
  sp.cap = c.cap;

  if (*solve) {
    a = c.pick(sA, "a", a, 0.0);
    xi = c.pick(sXi, "xi", xi, 0.0);
    R = c.pick(sR, "R", R, 0.0);
    nx = c.pick(sNx, "nx", nx, 401);
    nr = c.pick(sNr, "nr", nr, 201);
    ob_solve_params p{};
    p.a = a;
    p.xi = xi;
    p.R = R;
    p.mode = R > 0.0 ? OB_SOLVE_RADIUS : OB_SOLVE_DEPTH;
    p.nx = nx;
    p.nr = nr;
    p.newton_tol = newton_tol;
    p.depth_tol = depth_tol;
    if (p.mode == OB_SOLVE_DEPTH && !(xi < 0.0)) {
      std::cerr << "error: solve needs --xi < 0 (or --R > 0)\n";
      return kExitConfig;
    }
    SolutionHandle sol;
    ob_status st = ob_solve(&p, nullptr, &sol.p);
    if (st != OB_OK) return fail_with(st, "solve");
    ob_solution_info info{};
    if ((st = ob_solution_info_get(sol.p, &info)) != OB_OK) return fail_with(st, "info");
    const std::string base = tag_for(c.tag, info.a, info.xi);
    const fs::path jpath = fs::path(c.out_dir) / (base + ".json");
    const fs::path cpath = fs::path(c.out_dir) / (base + ".csv");
    if ((st = ob_solution_save(sol.p, jpath.string().c_str(), cpath.string().c_str())) != OB_OK)
      return fail_with(st, "save");
    StringHandle rep;
    if ((st = ob_spectral_report_json(sol.p, &sp, &rep.p)) != OB_OK)
      return fail_with(st, "spectral report");
    const json jrep = json::parse(rep.p);
    const fs::path rpath = fs::path(c.out_dir) / (base + "_report.json");
    std::ofstream(rpath) << jrep.dump(2) << "\n";
    json extra = jrep;
    extra["k"] = info.k;
    extra["lambda"] = info.lambda;
    extra["R"] = info.R;
    extra["residual_inf"] = info.residual_inf;
    extra["newton_iters"] = info.newton_iters;
    print_aligned(extra, "solution " + base);
    std::cout << "wrote " << jpath.string() << ", " << cpath.string() << ", " << rpath.string()
              << "\n";
    return kExitOk;
  }

  if (*sweep) {
    xi = c.pick(swXi, "xi", xi, 0.0);
    nx = c.pick(swNx, "nx", nx, 401);
    nr = c.pick(swNr, "nr", nr, 201);
    if (a_values_str.empty() && c.cfg.contains("a_values")) {
      for (double v : c.cfg["a_values"].get<std::vector<double>>())
        a_values_str += (a_values_str.empty() ? "" : ",") + std::to_string(v);
    }
    std::vector<double> avals;
    if (!a_values_str.empty()) {
      std::stringstream ss(a_values_str);
      std::string cell;
      while (std::getline(ss, cell, ',')) avals.push_back(std::strtod(cell.c_str(), nullptr));
    } else if (a_step > 0.0 && a_max > a_min && a_min > 0.0) {
      for (double v = a_min; v <= a_max + 1e-12; v += a_step) avals.push_back(v);
    }
    if (avals.empty() || !(xi < 0.0)) {
      std::cerr << "error: sweep needs --xi < 0 and --a-values or --a-min/--a-max/--a-step\n";
      return kExitConfig;
    }
    ob_solve_params p{};
    p.a = avals.front();
    p.xi = xi;
    p.mode = OB_SOLVE_DEPTH;
    p.nx = nx;
    p.nr = nr;
    const fs::path cpath = fs::path(c.out_dir) / (c.tag + "_family.csv");
    int all_ok = 0, monotone = 0;
    ob_status st = ob_sweep_csv(&p, avals.data(), static_cast<int>(avals.size()), &sp,
                                sweep_workers(), 1e-4, cpath.string().c_str(), &all_ok, &monotone);
    if (st != OB_OK) return fail_with(st, "sweep");
    std::cout << "wrote " << cpath.string() << "\n";
    std::cout << "rows_ok " << (all_ok ? "true" : "false") << "\n";
    std::cout << "k_strictly_increasing " << (monotone ? "true" : "false") << "\n";
    return (all_ok && monotone) ? kExitOk : kExitFail;
  }

  if (*verify) {
    SolutionHandle sol;
    ob_status st = ob_solution_load(sol_path.c_str(), &sol.p);
    if (st != OB_OK) return fail_with(st, "load");
    ob_verify_params vp{};
    vp.spectral = sp;
    vp.tau_min = (vTmin->count() > 0 || c.cfg.contains("tau_min"))
                     ? c.pick(vTmin, "tau_min", tau_min, c.tau0)
                     : c.tau0;
    vp.y_max = y_max;
    vp.z_band = z_band;
    vp.rho_max = rho_max;
    vp.L = Lcollar;
    StringHandle rep;
    if ((st = ob_verify_report_json(sol.p, &vp, &rep.p)) != OB_OK)
      return fail_with(st, "verify");
    const json j = json::parse(rep.p);
    const fs::path jpath = fs::path(c.out_dir) / (c.tag + "_verify.json");
    std::ofstream(jpath) << j.dump(2) << "\n";
    const fs::path tpath = fs::path(c.out_dir) / (c.tag + "_verify.csv");
    {
      std::ofstream t(tpath);
      t << "tau,in_range,parabolic_dev,intermediate_dev,tip_dev,tip_c2_dev,diameter_dev_plus,"
           "diameter_dev_minus,concavity_excess,collar_dev,collar_applicable,meancurv_C,c0\n";
      for (const auto& row : j["rows"]) {
        if (!row["in_range"].get<bool>()) {
          t << row["tau"].get<double>() << ",0,,,,,,,,,,,\n";
          continue;
        }
        char line[512];
        std::snprintf(line, sizeof line,
                      "%.17g,1,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%.17g,%.17g\n",
                      row["tau"].get<double>(), row["parabolic_dev"].get<double>(),
                      row["intermediate_dev"].get<double>(), row["tip_dev"].get<double>(),
                      row["tip_c2_dev"].get<double>(), row["diameter_dev_plus"].get<double>(),
                      row["diameter_dev_minus"].get<double>(),
                      row["concavity_excess"].get<double>(), row["collar_dev"].get<double>(),
                      row["collar_applicable"].get<bool>() ? 1 : 0,
                      row["meancurv_C"].get<double>(), row["c0"].get<double>());
        t << line;
      }
    }
    std::cout << j.dump(2) << "\n";
    std::cout << "wrote " << jpath.string() << ", " << tpath.string() << "\n";
    return kExitOk;
  }

  if (*diff) {
    SolutionHandle s1, s2;
    ob_status st = ob_solution_load(sol_path.c_str(), &s1.p);
    if (st != OB_OK) return fail_with(st, "load first");
    if ((st = ob_solution_load(sol_path_b.c_str(), &s2.p)) != OB_OK)
      return fail_with(st, "load second");
    ob_spectral_params sp2 = sp;
    if (cap_b > 0.0) sp2.cap = cap_b;
    StringHandle rep;
    if ((st = ob_diff_report_json(s1.p, &sp, s2.p, &sp2, &rep.p)) != OB_OK)
      return fail_with(st, "diff");
    const json j = json::parse(rep.p);
    const fs::path jpath = fs::path(c.out_dir) / (c.tag + "_diff.json");
    std::ofstream(jpath) << j.dump(2) << "\n";
    const fs::path tpath = fs::path(c.out_dir) / (c.tag + "_diff_hausdorff.csv");
    {
      std::ofstream t(tpath);
      t << "h,D\n";
      for (const auto& row : j["hausdorff_by_h"]) {
        char line[96];
        std::snprintf(line, sizeof line, "%.17g,%.17g\n", row["h"].get<double>(),
                      row["D"].get<double>());
        t << line;
      }
    }
    std::cout << j.dump(2) << "\n";
    std::cout << "wrote " << jpath.string() << ", " << tpath.string() << "\n";
    return kExitOk;
  }

  if (*bowlcmd) {
    if (bSpeed->count() == 0) speed = dimension == 2 ? 1.0 / std::sqrt(2.0) : 1.0;
    if (r_max_bowl <= 0.0) r_max_bowl = 2.0;
    if (step <= 0.0) step = r_max_bowl / 2000.0;
    ob_bowl* b = nullptr;
    ob_status st = ob_bowl_create(dimension, speed, r_max_bowl, step, &b);
    if (st != OB_OK) return fail_with(st, "bowl");
    const fs::path cpath = fs::path(c.out_dir) / (c.tag + "_bowl.csv");
    st = ob_bowl_write_csv(b, cpath.string().c_str());
    ob_bowl_free(b);
    if (st != OB_OK) return fail_with(st, "bowl csv");
    std::cout << "wrote " << cpath.string() << "\n";
    return kExitOk;
  }

  return kExitConfig;
}
