#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "homogflow/mesh.hpp"
#include "homogflow/sparse.hpp"

namespace homogflow {

struct Constraints {
  /// Fixed values.
  std::vector<std::pair<Index, double>> dirichlet;
  /// Slaves are eliminated onto their masters.
  std::optional<PeriodicMap> periodic;
  /// Quotient by constants: one DOF is pinned and the solution shifted to
  /// zero weighted mean. `mean_weights[i]` is the integral of basis function i.
  bool mean_zero = false;
  std::vector<double> mean_weights;
  /// DOFs taking part in the problem; empty means all. Inactive DOFs are
  /// dropped and come back as zero.
  std::vector<char> active;

  /// Active set = nodes on one side of the interface.
  static Constraints on_subdomain(const Mesh& mesh, Subdomain side);
};

/// System over the free DOFs plus the map back to the full numbering.
struct ReducedSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  /// Reduced index of every full DOF, -1 for fixed or inactive ones.
  std::vector<Index> reduced_index;
  std::vector<double> fixed_value;
  std::vector<char> active;
  bool mean_zero = false;
  std::vector<double> mean_weights;

  std::vector<double> expand(std::span<const double> reduced) const;
};

/// Throws ConstraintError when one DOF carries conflicting constraints.
ReducedSystem apply_constraints(const SparseSystem& system, const Constraints& constraints);

/// solve_spd on the reduced system, returned in the full numbering.
std::vector<double> solve(const ReducedSystem& system, const SolverOptions& options = {},
                          SolveStats* stats = nullptr);

}  // namespace homogflow
