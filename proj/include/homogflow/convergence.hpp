#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "homogflow/cell_problems.hpp"
#include "homogflow/expression.hpp"
#include "homogflow/locator.hpp"
#include "homogflow/macro_solver.hpp"
#include "homogflow/micro_solver.hpp"

namespace homogflow {

/// Piecewise-constant field on the eps-grid: value[j * m + i] is the mean over
/// the cell [i/m, (i+1)/m) x [j/m, (j+1)/m).
struct CellAverages {
  int cells_per_side = 0;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * cells_per_side + i]; }
};

/// Exact cell means of a P1 field. Every triangle must lie inside one cell
/// (true for eps-meshes with the same m and for uniform meshes whose
/// resolution is a multiple of m); otherwise throws ArgumentError.
CellAverages cell_average(const Mesh& mesh, std::span<const double> nodal, int cells_per_side);
CellAverages cell_average(const FieldSolution& field, int cells_per_side);

/// Cell means of an analytic function (degree-5 quadrature on a uniform
/// sub-grid of each cell).
CellAverages cell_average(const ScalarFunction& f, int cells_per_side);

/// L2(Omega) distance of two piecewise-constant fields on the same grid.
double l2_distance(const CellAverages& a, const CellAverages& b);

/// Test functions 1, sin(pi x1) sin(pi x2), x1 x2 (1 - x1)(1 - x2).
const std::array<ScalarFunction, 3>& test_functions();

/// Two-scale predictor u(x) + alpha(frac(x/eps)) f2(x) at the block nodes of
/// the eps-mesh (zero elsewhere). alpha is read through the node provenance,
/// u through `locator` (a locator over u's mesh).
std::vector<double> corrector_predictor(const Mesh& micro_mesh, const FieldSolution& alpha,
                                        const PointLocator& locator, const FieldSolution& u,
                                        const ScalarFunction& f2);

/// ||v - predictor||_{L2(blocks)} / ||v||_{L2(blocks)} (0 when both vanish).
/// Throws ArgumentError when the micro mesh was not tiled from the cell mesh
/// alpha lives on, or the cell has no block.
double corrector_error(const MicroSolution& micro, const CellSolution& cell,
                       const FieldSolution& u, const ScalarFunction& f2,
                       const PointLocator* locator = nullptr);

struct StudyConfig {
  CellGeometry geometry;
  CellCoefficients coefficients;
  Expression f1 = Expression::constant(1.0);
  Expression f2 = Expression::constant(1.0);
  int macro_resolution = 64;
  /// m = 1/eps for each eps.
  std::vector<int> cells_per_side{4, 8, 16};
  SolverOptions cell_solver{1e-10, 0};
  SolverOptions macro_solver{1e-10, 0};
  SolverOptions micro_solver{1e-10, 0};
};

struct StudyRow {
  double eps = 0.0;
  int cells_per_side = 0;
  /// ||P w - P U||, and the same against the unlifted u.
  double weak_metric = 0.0;
  double weak_metric_u = 0.0;
  double corrector_metric = 0.0;
  std::array<double, 3> functionals{};
  EnergyReport energy;
  /// Descriptive rates against the previous row; absent on the first row.
  std::optional<double> rate_weak;
  std::optional<double> rate_corrector;
  std::string fingerprint;
};

struct ConvergenceReport {
  /// Sorted by decreasing eps.
  std::vector<StudyRow> rows;
  bool weak_metric_decreasing = true;
  bool functionals_decreasing = true;

  bool passed() const { return weak_metric_decreasing && functionals_decreasing; }
  /// Human-readable list of the monotonicity violations.
  std::vector<std::string> violations() const;
};

/// log(m_prev / m_cur) / log(eps_prev / eps_cur); absent if a metric is 0.
std::optional<double> empirical_rate(double eps_prev, double metric_prev, double eps_cur,
                                     double metric_cur);

/// Fills rates and monotonicity flags from the rows (sorted on entry).
ConvergenceReport finalize_report(std::vector<StudyRow> rows);

struct StudyResult {
  CellResult cell;
  MacroProblem macro;
  FieldSolution u;
  FieldSolution U;
  ConvergenceReport report;
};

/// Cell solve, macro solve, then the eps-instances in parallel. Stage errors
/// are rethrown with the stage name and eps prepended (same kind).
StudyResult run_study(const StudyConfig& config);

/// One eps-instance against an already solved cell and macro problem.
StudyRow evaluate_instance(const StudyConfig& config, const CellResult& cell,
                           const FieldSolution& u, const FieldSolution& U, int cells_per_side,
                           MicroSolution* solution_out = nullptr);

}  // namespace homogflow
