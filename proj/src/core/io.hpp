#pragma once
#include <string>

#include "core/pde.hpp"

namespace ovalbowl::io {

inline constexpr int kFormatVersion = 1;

std::string fmt17(double v);

// JSON metadata + row-major CSV of u (nr rows by nx columns, 17 significant
// digits, LF endings). The CSV filename is recorded in the JSON document.
void save_solution(const pde::Solution& sol, const std::string& json_path,
                   const std::string& csv_path);

// Rebuilds the grid/mask deterministically from the stored parameters and
// validates format version and spacings.
pde::Solution load_solution(const std::string& json_path);

std::string solution_tag(const std::string& prefix, double a, double xi);

}  // namespace ovalbowl::io
