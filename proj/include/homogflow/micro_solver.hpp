#pragma once

#include <memory>
#include <vector>

#include "homogflow/assembly.hpp"
#include "homogflow/cell_problems.hpp"
#include "homogflow/constraints.hpp"
#include "homogflow/field.hpp"
#include "homogflow/sparse.hpp"

namespace homogflow {

/// eps-resolved fissured medium on Omega = (0,1)^2. The unknowns are one value
/// per mesh node: matrix nodes carry u, block nodes carry v.
///   int A^eps grad u . grad phi + eps^2 int B^eps grad v . grad psi
///     + int_{Gamma^eps} eps h(x/eps) (u - v)(phi - psi) = int f1 phi + int f2 psi,
/// with u = 0 on the outer boundary.
struct MicroProblem {
  std::shared_ptr<const Mesh> mesh;
  CellCoefficients coefficients;
  ScalarFunction f1 = [](Point) { return 0.0; };
  ScalarFunction f2 = [](Point) { return 0.0; };

  double eps() const { return mesh->cell_size(); }
};

/// Builds the eps-mesh for `geom` and the given number of cells per side.
MicroProblem make_micro_problem(const CellGeometry& geom, int cells_per_side,
                                CellCoefficients coefficients, ScalarFunction f1,
                                ScalarFunction f2);

/// Unconstrained symmetric system (no Dirichlet rows yet).
SparseSystem assemble_micro(const MicroProblem& problem);

/// Dirichlet u = 0 on the outer boundary nodes.
Constraints micro_constraints(const MicroProblem& problem);

struct MicroSolution {
  std::shared_ptr<const Mesh> mesh;
  /// u at matrix nodes, v at block nodes.
  std::vector<double> values;
  double eps = 0.0;
  SolveStats stats;

  FieldSolution u() const;
  FieldSolution v() const;
};

/// Throws ArgumentError if A or B is not elliptic or h is not positive.
MicroSolution solve_micro(const MicroProblem& problem, const SolverOptions& options = {});

/// w^eps = u on the matrix, v on the block. Each triangle reads its own
/// copies, so integrals split exactly by subdomain; interface nodes keep
/// both values.
FieldSolution combined_pressure(const MicroSolution& solution);

struct EnergyReport {
  double grad_u_sq = 0.0;
  double eps2_grad_v_sq = 0.0;
  double jump_sq = 0.0;
  double H_eps_norm = 0.0;
};

EnergyReport energy_report(const MicroSolution& solution);

/// x^T K x and the work b^T x on the constrained system; equal for the
/// discrete solution.
struct EnergyBalance {
  double energy = 0.0;
  double work = 0.0;
  double relative_gap() const;
};
EnergyBalance energy_balance(const MicroProblem& problem, const MicroSolution& solution);

}  // namespace homogflow
