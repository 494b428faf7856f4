#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "homogflow/config.hpp"
#include "homogflow/convergence.hpp"
#include "homogflow/errors.hpp"

namespace homogflow {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 2,
  kExitDependency = 3,
  kExitNumeric = 4,
  kExitCheckFailed = 5,
};

int exit_code_for(ErrorKind kind);

/// cell: homogenized.json, cell.vtk
CellResult command_cell(const RunConfig& cfg, const std::filesystem::path& out);
/// macro: macro.vtk, macro_summary.csv. Needs homogenized.json from `cell`
/// for the same geometry and coefficients (DependencyError otherwise).
FieldSolution command_macro(const RunConfig& cfg, const std::filesystem::path& out);
/// micro: micro_m<m>.vtk, upserts micro_energy.csv.
EnergyReport command_micro(const RunConfig& cfg, const std::filesystem::path& out,
                           int cells_per_side);
/// study: report.csv, report.dat.
ConvergenceReport command_study(const RunConfig& cfg, const std::filesystem::path& out);

/// Full command line (argv[0] ignored). Failures print one line
/// "error[<kind>]: <message>" on `err` and return a nonzero status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homogflow
