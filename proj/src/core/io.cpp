#include "core/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/errors.hpp"

namespace ovalbowl::io {

using nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void save_solution(const pde::Solution& sol, const std::string& json_path,
                   const std::string& csv_path) {
  ordered_json j;
  j["kind"] = "ovalbowl_solution";
  j["format_version"] = kFormatVersion;
  j["a"] = sol.domain.a;
  j["R"] = sol.domain.R;
  j["xi"] = sol.xi;
  j["nx"] = sol.grid.nx;
  j["nr"] = sol.grid.nr;
  j["hx"] = sol.grid.hx;
  j["hr"] = sol.grid.hr;
  j["x_min"] = sol.grid.x_min;
  j["residual_inf"] = sol.residual_inf;
  j["newton_iters"] = sol.newton_iters;
  j["monotone_r_ok"] = sol.monotone_r_ok;
  j["negative_interior_ok"] = sol.negative_interior_ok;
  j["warning"] = sol.warning;
  j["csv"] = std::filesystem::path(csv_path).filename().string();

  std::ofstream jf(json_path, std::ios::binary);
  if (!jf) fail(ErrorKind::io, "save: cannot open " + json_path);
  jf << j.dump(2) << "\n";

  std::ofstream cf(csv_path, std::ios::binary);
  if (!cf) fail(ErrorKind::io, "save: cannot open " + csv_path);
  char head[128];
  std::snprintf(head, sizeof head, "# ovalbowl u format=%d nx=%d nr=%d\n", kFormatVersion,
                sol.grid.nx, sol.grid.nr);
  cf << head;
  std::string line;
  for (int jrow = 0; jrow < sol.grid.nr; ++jrow) {
    line.clear();
    for (int i = 0; i < sol.grid.nx; ++i) {
      if (i) line += ',';
      line += fmt17(sol.u[sol.grid.idx(i, jrow)]);
    }
    line += '\n';
    cf << line;
  }
}

pde::Solution load_solution(const std::string& json_path) {
  std::ifstream jf(json_path, std::ios::binary);
  if (!jf) fail(ErrorKind::io, "load: cannot open " + json_path);
  ordered_json j;
  try {
    jf >> j;
  } catch (const std::exception& e) {
    fail(ErrorKind::io, std::string("load: bad JSON: ") + e.what());
  }
  if (!j.contains("kind") || j["kind"] != "ovalbowl_solution")
    fail(ErrorKind::io, "load: not an ovalbowl solution document");
  if (!j.contains("format_version") || j["format_version"].get<int>() != kFormatVersion)
    fail(ErrorKind::io, "load: unsupported format version");

  pde::Solution sol;
  sol.domain = pde::make_domain(j["a"].get<double>(), j["R"].get<double>());
  const int nx = j["nx"].get<int>(), nr = j["nr"].get<int>();
  sol.grid = pde::make_grid(sol.domain, nx, nr);
  if (std::abs(sol.grid.hx - j["hx"].get<double>()) > 1e-12 * sol.grid.hx ||
      std::abs(sol.grid.hr - j["hr"].get<double>()) > 1e-12 * sol.grid.hr)
    fail(ErrorKind::io, "load: stored spacings do not match the reconstructed grid");
  sol.xi = j["xi"].get<double>();
  sol.residual_inf = j["residual_inf"].get<double>();
  sol.newton_iters = j["newton_iters"].get<int>();
  sol.monotone_r_ok = j["monotone_r_ok"].get<bool>();
  sol.negative_interior_ok = j.value("negative_interior_ok", true);
  sol.warning = j.value("warning", std::string());

  const std::string csv_name = j["csv"].get<std::string>();
  const std::filesystem::path csv_path =
      std::filesystem::path(json_path).parent_path() / csv_name;
  std::ifstream cf(csv_path, std::ios::binary);
  if (!cf) fail(ErrorKind::io, "load: cannot open " + csv_path.string());
  std::string line;
  if (!std::getline(cf, line) || line.rfind("# ovalbowl u", 0) != 0)
    fail(ErrorKind::io, "load: bad CSV header");
  sol.u.assign(static_cast<std::size_t>(nx) * nr, 0.0);
  for (int jrow = 0; jrow < nr; ++jrow) {
    if (!std::getline(cf, line)) fail(ErrorKind::io, "load: CSV truncated");
    std::stringstream ss(line);
    std::string cell;
    for (int i = 0; i < nx; ++i) {
      if (!std::getline(ss, cell, ',')) fail(ErrorKind::io, "load: CSV row too short");
      sol.u[sol.grid.idx(i, jrow)] = std::strtod(cell.c_str(), nullptr);
    }
  }
  return sol;
}

std::string solution_tag(const std::string& prefix, double a, double xi) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_a%.6g_xi%.6g", prefix.c_str(), a, xi);
  return buf;
}

}  // namespace ovalbowl::io
