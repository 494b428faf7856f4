#include "homogflow/macro_solver.hpp"

#include <algorithm>
#include <cmath>

#include "homogflow/constraints.hpp"
#include "homogflow/errors.hpp"

namespace homogflow {

MacroProblem MacroProblem::from(const HomogenizedData& data, ScalarFunction f1, ScalarFunction f2) {
  MacroProblem p;
  p.A_h = data.A_h;
  p.f1 = std::move(f1);
  p.f2 = std::move(f2);
  p.y1_volume = data.y1_volume;
  p.alpha_hat = data.alpha_hat;
  p.alpha_bulk = data.alpha_bulk;
  return p;
}

std::vector<Index> boundary_nodes(const Mesh& mesh) {
  std::vector<Index> nodes;
  for (const auto& e : mesh.boundary_edges) {
    nodes.push_back(e[0]);
    nodes.push_back(e[1]);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

FieldSolution solve_macro(const MacroProblem& problem, std::shared_ptr<const Mesh> mesh,
                          const SolverOptions& options) {
  const Mat2& a = problem.A_h;
  if (std::abs(a(0, 1) - a(1, 0)) > 1e-10 * a.max_abs() || !(a.sym_eigenvalues()[0] > 0.0))
    throw ArgumentError("homogenized tensor is not symmetric positive definite");

  SparseSystem system(mesh->num_nodes());
  const auto coeff = CoefficientField::constant(a);
  assemble_stiffness(*mesh, coeff, Subdomain::matrix, 1.0, system);
  assemble_load(*mesh, [&](Point x) { return problem.effective_source(x); }, Subdomain::matrix,
                1.0, system);

  Constraints c;
  for (Index v : boundary_nodes(*mesh)) c.dirichlet.emplace_back(v, 0.0);
  auto values = solve(apply_constraints(system, c), options);
  return {std::move(mesh), std::move(values), std::nullopt};
}

FieldSolution compose_limit_pressure(const FieldSolution& u, const MacroProblem& problem) {
  FieldSolution out = u;
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] += problem.lift(u.mesh->nodes[i]);
  return out;
}

}  // namespace homogflow
