#include "homogflow/micro_solver.hpp"

#include <algorithm>
#include <cmath>

#include "homogflow/errors.hpp"
#include "homogflow/integrate.hpp"
#include "homogflow/macro_solver.hpp"

namespace homogflow {

MicroProblem make_micro_problem(const CellGeometry& geom, int cells_per_side,
                                CellCoefficients coefficients, ScalarFunction f1,
                                ScalarFunction f2) {
  MicroProblem p;
  p.mesh = std::make_shared<const Mesh>(build_epsilon_mesh(geom, cells_per_side));
  p.coefficients = std::move(coefficients);
  p.f1 = std::move(f1);
  p.f2 = std::move(f2);
  return p;
}

SparseSystem assemble_micro(const MicroProblem& problem) {
  const Mesh& mesh = *problem.mesh;
  const double eps = problem.eps();
  SparseSystem system(mesh.num_nodes());
  assemble_stiffness(mesh, problem.coefficients.A, Subdomain::matrix, 1.0, system);
  assemble_load(mesh, problem.f1, Subdomain::matrix, 1.0, system);
  if (!mesh.interface_edges.empty()) {
    assemble_stiffness(mesh, problem.coefficients.B, Subdomain::block, eps * eps, system);
    const auto pairs = extract_interface_pairing(mesh);
    assemble_interface_mass(mesh, problem.coefficients.h, pairs, eps, system);
    assemble_load(mesh, problem.f2, Subdomain::block, 1.0, system);
  }
  return system;
}

Constraints micro_constraints(const MicroProblem& problem) {
  Constraints c;
  for (Index v : boundary_nodes(*problem.mesh)) {
    if (problem.mesh->node_side[v] != Subdomain::matrix)
      throw TopologyError("block node on the outer boundary");
    c.dirichlet.emplace_back(v, 0.0);
  }
  return c;
}

MicroSolution solve_micro(const MicroProblem& problem, const SolverOptions& options) {
  const Mesh& mesh = *problem.mesh;
  problem.coefficients.A.check_elliptic(mesh, Subdomain::matrix);
  if (!mesh.interface_edges.empty()) {
    problem.coefficients.B.check_elliptic(mesh, Subdomain::block);
    problem.coefficients.h.check_positive_on_interface(mesh);
  }
  const auto reduced = apply_constraints(assemble_micro(problem), micro_constraints(problem));
  MicroSolution sol;
  sol.mesh = problem.mesh;
  sol.eps = problem.eps();
  sol.values = solve(reduced, options, &sol.stats);
  return sol;
}

namespace {

FieldSolution restrict_to(const MicroSolution& s, Subdomain side) {
  FieldSolution f{s.mesh, s.values, side};
  for (std::size_t i = 0; i < f.values.size(); ++i)
    if (s.mesh->node_side[i] != side) f.values[i] = 0.0;
  return f;
}

}  // namespace

FieldSolution MicroSolution::u() const { return restrict_to(*this, Subdomain::matrix); }
FieldSolution MicroSolution::v() const { return restrict_to(*this, Subdomain::block); }

FieldSolution combined_pressure(const MicroSolution& solution) {
  return {solution.mesh, solution.values, std::nullopt};
}

EnergyReport energy_report(const MicroSolution& s) {
  const Mesh& mesh = *s.mesh;
  EnergyReport r;
  r.grad_u_sq = gradient_energy(mesh, s.values, Subdomain::matrix);
  r.eps2_grad_v_sq = s.eps * s.eps * gradient_energy(mesh, s.values, Subdomain::block);
  // Exact integral of the squared linear jump along each edge.
  double jump = 0.0;
  for (const auto& e : mesh.interface_edges) {
    const double d0 = s.values[e.matrix_nodes[0]] - s.values[e.block_nodes[0]];
    const double d1 = s.values[e.matrix_nodes[1]] - s.values[e.block_nodes[1]];
    const double len = norm(mesh.nodes[e.matrix_nodes[1]] - mesh.nodes[e.matrix_nodes[0]]);
    jump += len * (d0 * d0 + d0 * d1 + d1 * d1) / 3.0;
  }
  r.jump_sq = s.eps * jump;
  r.H_eps_norm = std::sqrt(r.grad_u_sq + r.eps2_grad_v_sq + r.jump_sq);
  return r;
}

double EnergyBalance::relative_gap() const {
  const double scale = std::max(std::abs(energy), std::abs(work));
  return scale == 0.0 ? 0.0 : std::abs(energy - work) / scale;
}

EnergyBalance energy_balance(const MicroProblem& problem, const MicroSolution& solution) {
  const SparseSystem system = assemble_micro(problem);
  const CsrMatrix k = system.matrix();
  const auto kx = k * std::span<const double>(solution.values);
  return {dot(solution.values, kx), dot(system.rhs(), solution.values)};
}

}  // namespace homogflow
