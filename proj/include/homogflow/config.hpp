#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "homogflow/convergence.hpp"

namespace homogflow {

/// Validated run configuration. Defaults: disk of radius 0.25 at the cell
/// centre, A = B = h = 1, f1 = f2 = 1, cell resolution 32, macro resolution 64,
/// eps in {1/4, 1/8, 1/16}, output_dir "out", solver tolerances 1e-10.
struct RunConfig {
  CellGeometry geometry{Disk{}, 32};
  CellCoefficients coefficients;
  Expression f1 = Expression::parse("1");
  Expression f2 = Expression::parse("1");
  int macro_resolution = 64;
  std::vector<int> cells_per_side{4, 8, 16};
  std::filesystem::path output_dir = "out";
  double cell_tol = 1e-10;
  double macro_tol = 1e-10;
  double micro_tol = 1e-10;

  int cell_resolution() const { return geometry.resolution; }
  StudyConfig study() const;
};

/// Strict parse: unknown keys, wrong types and out-of-range values throw
/// ConfigError naming the field; JSON syntax errors carry the line number.
RunConfig parse_config_text(std::string_view text);
/// Throws IoError if the file cannot be read.
RunConfig parse_config(const std::filesystem::path& file);

/// Accepts a number or the string "1/m"; throws ConfigError unless eps = 1/m
/// with an integer m >= 2.
int parse_eps(std::string_view text);

}  // namespace homogflow
