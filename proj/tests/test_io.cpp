#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "core/depth.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"

using namespace ovalbowl;
namespace fs = std::filesystem;

namespace {
const pde::Solution& small_solution() {
  static pde::Solution sol = [] {
    pde::SolveConfig cfg;
    cfg.nx = 81;
    cfg.nr = 41;
    return pde::find_R_for_depth(0.3, -5.0, cfg);
  }();
  return sol;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("save/load round-trips every value exactly") {
  const auto& sol = small_solution();
  const fs::path dir = fs::temp_directory_path() / "ovalbowl_io_test";
  fs::create_directories(dir);
  const auto jp = dir / "sol.json", cp = dir / "sol.csv";
  io::save_solution(sol, jp.string(), cp.string());
  const auto back = io::load_solution(jp.string());
  CHECK(back.domain.a == sol.domain.a);
  CHECK(back.domain.R == sol.domain.R);
  CHECK(back.xi == sol.xi);
  CHECK(back.grid.nx == sol.grid.nx);
  CHECK(back.grid.hx == sol.grid.hx);
  REQUIRE(back.u.size() == sol.u.size());
  for (std::size_t k = 0; k < sol.u.size(); ++k) CHECK(back.u[k] == sol.u[k]);
  CHECK(back.residual_inf == sol.residual_inf);
  CHECK(back.monotone_r_ok == sol.monotone_r_ok);

  // re-saving the loaded solution is byte-identical
  const auto jp2 = dir / "sol2.json", cp2 = dir / "sol2.csv";
  io::save_solution(back, jp2.string(), cp2.string());
  CHECK(slurp(cp) == slurp(cp2));
  fs::remove_all(dir);
}

TEST_CASE("format version and kind are validated") {
  const auto& sol = small_solution();
  const fs::path dir = fs::temp_directory_path() / "ovalbowl_io_test2";
  fs::create_directories(dir);
  const auto jp = dir / "sol.json", cp = dir / "sol.csv";
  io::save_solution(sol, jp.string(), cp.string());

  // corrupt the version
  std::string doc = slurp(jp);
  const auto pos = doc.find("\"format_version\": 1");
  REQUIRE(pos != std::string::npos);
  doc.replace(pos, 19, "\"format_version\": 9");
  std::ofstream(jp, std::ios::binary) << doc;
  CHECK_THROWS_AS(io::load_solution(jp.string()), Error);

  std::ofstream(jp, std::ios::binary) << "{\"kind\":\"other\"}";
  CHECK_THROWS_AS(io::load_solution(jp.string()), Error);
  CHECK_THROWS_AS(io::load_solution((dir / "missing.json").string()), Error);
  fs::remove_all(dir);
}

TEST_CASE("17-significant-digit formatting round-trips doubles") {
  for (double v : {1.0 / 3.0, -200.0, 1e-17, 3.141592653589793, -0.179576934751}) {
    const std::string s = io::fmt17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("solution tags carry the parameters") {
  CHECK(io::solution_tag("run", 0.25, -500.0) == "run_a0.25_xi-500");
}
