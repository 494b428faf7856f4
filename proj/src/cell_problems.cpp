#include "homogflow/cell_problems.hpp"

#include "homogflow/assembly.hpp"
#include "homogflow/constraints.hpp"
#include "homogflow/errors.hpp"
#include "homogflow/fingerprint.hpp"
#include "homogflow/integrate.hpp"
#include "homogflow/parallel.hpp"

namespace homogflow {

namespace {

void check_same_mesh(const FieldSolution& a, const FieldSolution& b) {
  if (!a.mesh || !b.mesh) throw ArgumentError("corrector without a mesh");
  if (a.mesh != b.mesh && (a.mesh->geometry_fingerprint() != b.mesh->geometry_fingerprint() ||
                           a.mesh->num_nodes() != b.mesh->num_nodes()))
    throw ArgumentError("correctors were computed on different cell meshes");
}

// grad(w) + e_j on triangle t
Vec2 shifted_gradient(const FieldSolution& w, const Triangle& t, int j,
                      const std::array<Vec2, 3>& g) {
  const auto& v = w.values;
  return v[t.v[0]] * g[0] + v[t.v[1]] * g[1] + v[t.v[2]] * g[2] + unit(j);
}

}  // namespace

std::string CellCoefficients::describe() const {
  return "A=" + A.describe() + ";B=" + B.describe() + ";h=" + h.describe();
}

FieldSolution solve_corrector(int direction, std::shared_ptr<const Mesh> mesh,
                              const PeriodicMap& periodic, const CoefficientField& A,
                              const SolverOptions& options) {
  if (direction != 0 && direction != 1)
    throw ArgumentError("corrector direction must be 0 or 1, got " + std::to_string(direction));
  A.check_elliptic(*mesh, Subdomain::matrix);

  SparseSystem system(mesh->num_nodes());
  assemble_stiffness(*mesh, A, Subdomain::matrix, 1.0, system);
  assemble_gradient_load(*mesh, A, unit(direction), Subdomain::matrix, system);

  Constraints c = Constraints::on_subdomain(*mesh, Subdomain::matrix);
  c.periodic = periodic;
  c.mean_zero = true;
  c.mean_weights = basis_integrals(*mesh, Subdomain::matrix);
  auto values = solve(apply_constraints(system, c), options);
  return {std::move(mesh), std::move(values), Subdomain::matrix};
}

Mat2 homogenized_tensor(const FieldSolution& omega0, const FieldSolution& omega1,
                        const CoefficientField& A) {
  check_same_mesh(omega0, omega1);
  const Mesh& mesh = *omega0.mesh;
  const FieldSolution* omega[2] = {&omega0, &omega1};
  Mat2 a;
  for (const auto& t : mesh.triangles) {
    if (t.tag != Subdomain::matrix) continue;
    const auto g = p1_gradients(mesh, t);
    const Mat2 k = A.matrix(mesh.cell_coordinate(mesh.centroid(t)));
    const double area = mesh.triangle_area(t);
    const Vec2 s[2] = {shifted_gradient(*omega[0], t, 0, g), shifted_gradient(*omega[1], t, 1, g)};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) a(i, j) += area * dot(k * s[i], s[j]);
  }
  return a;
}

Mat2 flux_form_tensor(const FieldSolution& omega0, const FieldSolution& omega1,
                      const CoefficientField& A) {
  check_same_mesh(omega0, omega1);
  const Mesh& mesh = *omega0.mesh;
  const FieldSolution* omega[2] = {&omega0, &omega1};
  Mat2 a;
  for (const auto& t : mesh.triangles) {
    if (t.tag != Subdomain::matrix) continue;
    const auto g = p1_gradients(mesh, t);
    const Mat2 k = A.matrix(mesh.cell_coordinate(mesh.centroid(t)));
    const double area = mesh.triangle_area(t);
    for (int j = 0; j < 2; ++j) {
      const Vec2 flux = k * shifted_gradient(*omega[j], t, j, g);
      for (int i = 0; i < 2; ++i) a(i, j) += area * flux[i];
    }
  }
  return a;
}

FieldSolution solve_alpha(std::shared_ptr<const Mesh> mesh, const CoefficientField& B,
                          const CoefficientField& h, const SolverOptions& options) {
  if (!mesh->geometry.has_block() || mesh->count_triangles(Subdomain::block) == 0)
    throw GeometryError("the alpha cell problem needs a nonempty block");
  B.check_elliptic(*mesh, Subdomain::block);
  h.check_positive_on_interface(*mesh);

  const auto pairs = extract_interface_pairing(*mesh);
  SparseSystem system(mesh->num_nodes());
  assemble_stiffness(*mesh, B, Subdomain::block, 1.0, system);
  // nu points into the block, so the Robin term enters with a plus sign
  assemble_interface_mass(*mesh, h, pairs, 1.0, system, InterfaceTerm::block_side);
  assemble_load(*mesh, [](Point) { return 1.0; }, Subdomain::block, 1.0, system);

  auto values =
      solve(apply_constraints(system, Constraints::on_subdomain(*mesh, Subdomain::block)), options);
  return {std::move(mesh), std::move(values), Subdomain::block};
}

AlphaFunctionals alpha_functionals(const FieldSolution& alpha) {
  const Mesh& mesh = *alpha.mesh;
  AlphaFunctionals f;
  f.alpha_hat = integrate_interface(mesh, alpha.values, Subdomain::block);
  f.alpha_bulk = integrate(mesh, alpha.values, Subdomain::block);
  f.y1_volume = mesh.area(Subdomain::matrix);
  return f;
}

std::string cell_fingerprint(const CellGeometry& geom, const CellCoefficients& coeffs) {
  return fingerprint(describe(geom) + "|" + coeffs.describe());
}

CellResult solve_cell_problems(const CellGeometry& geom, const CellCoefficients& coeffs,
                               const SolverOptions& options) {
  CellResult r;
  r.mesh = std::make_shared<const Mesh>(build_unit_cell_mesh(geom));
  r.periodic = build_periodic_map(*r.mesh);

  const std::size_t tasks = geom.has_block() ? 3 : 2;
  parallel_for(tasks, [&](std::size_t k) {
    if (k < 2)
      r.solution.omega[k] = solve_corrector(static_cast<int>(k), r.mesh, r.periodic, coeffs.A, options);
    else
      r.solution.alpha = solve_alpha(r.mesh, coeffs.B, coeffs.h, options);
  });

  HomogenizedData& d = r.data;
  d.A_h = homogenized_tensor(r.solution.omega[0], r.solution.omega[1], coeffs.A);
  if (r.solution.alpha) {
    const auto f = alpha_functionals(*r.solution.alpha);
    d.alpha_hat = f.alpha_hat;
    d.alpha_bulk = f.alpha_bulk;
    d.y1_volume = f.y1_volume;
  } else {
    d.y1_volume = r.mesh->area(Subdomain::matrix);
  }
  d.geometry = describe(geom);
  d.coefficients = coeffs.describe();
  d.resolution = geom.resolution;
  d.fingerprint = cell_fingerprint(geom, coeffs);
  return r;
}

}  // namespace homogflow
