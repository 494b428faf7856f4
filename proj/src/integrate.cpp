#include "homogflow/integrate.hpp"

#include <cmath>

#include "homogflow/quadrature.hpp"

namespace homogflow {

namespace {

bool selected(const Triangle& t, std::optional<Subdomain> tag) { return !tag || t.tag == *tag; }

template <class Fn>
double quadrature(const Mesh& mesh, std::optional<Subdomain> tag, Fn&& integrand) {
  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    if (!selected(t, tag)) continue;
    const Point p[3] = {mesh.nodes[t.v[0]], mesh.nodes[t.v[1]], mesh.nodes[t.v[2]]};
    double s = 0.0;
    for (const auto& q : kTriangle7) {
      const Point x = q.bary[0] * p[0] + q.bary[1] * p[1] + q.bary[2] * p[2];
      s += q.w * integrand(t, q.bary, x);
    }
    total += mesh.triangle_area(t) * s;
  }
  return total;
}

double p1_value(const Triangle& t, std::span<const double> nodal, const std::array<double, 3>& b) {
  return b[0] * nodal[t.v[0]] + b[1] * nodal[t.v[1]] + b[2] * nodal[t.v[2]];
}

}  // namespace

double integrate(const Mesh& mesh, std::span<const double> nodal, std::optional<Subdomain> tag) {
  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    if (!selected(t, tag)) continue;
    total += mesh.triangle_area(t) * (nodal[t.v[0]] + nodal[t.v[1]] + nodal[t.v[2]]) / 3.0;
  }
  return total;
}

double integrate(const FieldSolution& field, std::optional<Subdomain> tag) {
  return integrate(*field.mesh, field.values, tag);
}

double integrate_interface(const Mesh& mesh, std::span<const double> nodal, Subdomain side) {
  check_subdomain(side);
  double total = 0.0;
  for (const auto& e : mesh.interface_edges) {
    const auto& v = side == Subdomain::matrix ? e.matrix_nodes : e.block_nodes;
    total += 0.5 * norm(mesh.nodes[v[1]] - mesh.nodes[v[0]]) * (nodal[v[0]] + nodal[v[1]]);
  }
  return total;
}

double integrate(const Mesh& mesh, const ScalarFunction& f, std::optional<Subdomain> tag) {
  return quadrature(mesh, tag, [&](const Triangle&, const auto&, Point x) { return f(x); });
}

double integrate_product(const Mesh& mesh, std::span<const double> nodal, const ScalarFunction& f,
                         std::optional<Subdomain> tag) {
  return quadrature(mesh, tag, [&](const Triangle& t, const auto& b, Point x) {
    return p1_value(t, nodal, b) * f(x);
  });
}

double l2_norm(const Mesh& mesh, std::span<const double> nodal, std::optional<Subdomain> tag) {
  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    if (!selected(t, tag)) continue;
    const double a = nodal[t.v[0]], b = nodal[t.v[1]], c = nodal[t.v[2]];
    total += mesh.triangle_area(t) / 6.0 * (a * a + b * b + c * c + a * b + b * c + c * a);
  }
  return std::sqrt(std::max(total, 0.0));
}

double l2_error(const Mesh& mesh, std::span<const double> nodal, const ScalarFunction& exact,
                std::optional<Subdomain> tag) {
  const double sq = quadrature(mesh, tag, [&](const Triangle& t, const auto& b, Point x) {
    const double d = p1_value(t, nodal, b) - exact(x);
    return d * d;
  });
  return std::sqrt(sq);
}

double gradient_energy(const Mesh& mesh, std::span<const double> nodal,
                       std::optional<Subdomain> tag) {
  double total = 0.0;
  for (const auto& t : mesh.triangles) {
    if (!selected(t, tag)) continue;
    const auto g = p1_gradients(mesh, t);
    const Vec2 grad = nodal[t.v[0]] * g[0] + nodal[t.v[1]] * g[1] + nodal[t.v[2]] * g[2];
    total += mesh.triangle_area(t) * dot(grad, grad);
  }
  return total;
}

std::vector<double> basis_integrals(const Mesh& mesh, std::optional<Subdomain> tag) {
  std::vector<double> w(mesh.num_nodes(), 0.0);
  for (const auto& t : mesh.triangles) {
    if (!selected(t, tag)) continue;
    const double third = mesh.triangle_area(t) / 3.0;
    for (Index v : t.v) w[v] += third;
  }
  return w;
}

std::vector<double> interpolate(const Mesh& mesh, const ScalarFunction& f) {
  std::vector<double> v(mesh.num_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(mesh.nodes[i]);
  return v;
}

}  // namespace homogflow
