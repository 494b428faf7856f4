#pragma once

#include <memory>

#include "homogflow/assembly.hpp"
#include "homogflow/cell_problems.hpp"
#include "homogflow/field.hpp"
#include "homogflow/sparse.hpp"

namespace homogflow {

/// Homogenized Darcy problem on Omega = (0,1)^2:
///   -div(A_h grad u) = F*,  F* = |Y1| f1 + alpha_hat f2,  u = 0 on the boundary,
/// and the weak limit of the micro pressure U = u + G with G = alpha_bulk f2.
struct MacroProblem {
  Mat2 A_h = Mat2::identity();
  ScalarFunction f1 = [](Point) { return 0.0; };
  ScalarFunction f2 = [](Point) { return 0.0; };
  double y1_volume = 1.0;
  double alpha_hat = 0.0;
  double alpha_bulk = 0.0;

  static MacroProblem from(const HomogenizedData& data, ScalarFunction f1, ScalarFunction f2);

  double effective_source(Point x) const { return y1_volume * f1(x) + alpha_hat * f2(x); }
  double lift(Point x) const { return alpha_bulk * f2(x); }
};

/// Solves for u on a triangulation of the unit square. Throws ArgumentError if
/// A_h is not symmetric positive definite.
FieldSolution solve_macro(const MacroProblem& problem, std::shared_ptr<const Mesh> mesh,
                          const SolverOptions& options = {});

/// U = u + G at the nodes of u's mesh.
FieldSolution compose_limit_pressure(const FieldSolution& u, const MacroProblem& problem);

/// Nodes carrying the homogeneous Dirichlet condition (outer boundary).
std::vector<Index> boundary_nodes(const Mesh& mesh);

}  // namespace homogflow
