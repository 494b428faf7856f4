#include "homogflow/assembly.hpp"

#include <unordered_map>

#include "homogflow/errors.hpp"
#include "homogflow/quadrature.hpp"

namespace homogflow {

std::array<Vec2, 3> p1_gradients(const Mesh& mesh, const Triangle& t) {
  const Point p0 = mesh.nodes[t.v[0]], p1 = mesh.nodes[t.v[1]], p2 = mesh.nodes[t.v[2]];
  const double twice_area = cross(p1 - p0, p2 - p0);
  const double s = 1.0 / twice_area;
  return {Vec2{s * (p1.y - p2.y), s * (p2.x - p1.x)},
          Vec2{s * (p2.y - p0.y), s * (p0.x - p2.x)},
          Vec2{s * (p0.y - p1.y), s * (p1.x - p0.x)}};
}

void assemble_stiffness(const Mesh& mesh, const CoefficientField& coeff, Subdomain tag,
                        double scale, SparseSystem& system) {
  check_subdomain(tag);
  for (const auto& t : mesh.triangles) {
    if (t.tag != tag) continue;
    const auto g = p1_gradients(mesh, t);
    const Mat2 k = coeff.matrix(mesh.cell_coordinate(mesh.centroid(t)));
    const double w = scale * mesh.triangle_area(t);
    // local matrix computed once per unordered pair: exactly symmetric
    for (int a = 0; a < 3; ++a) {
      const Vec2 kg = k * g[a];
      for (int b = a; b < 3; ++b) {
        const double v = w * dot(kg, g[b]);
        system.add(t.v[a], t.v[b], v);
        if (b != a) system.add(t.v[b], t.v[a], v);
      }
    }
  }
}

void assemble_interface_mass(const Mesh& mesh, const CoefficientField& h,
                             std::span<const InterfacePair> pairs, double scale,
                             SparseSystem& system, InterfaceTerm term) {
  std::unordered_map<Index, Index> twin;
  twin.reserve(pairs.size());
  for (const auto& p : pairs) twin.emplace(p.matrix_node, p.block_node);

  for (const auto& e : mesh.interface_edges) {
    for (int k = 0; k < 2; ++k) {
      const auto it = twin.find(e.matrix_nodes[k]);
      if (it == twin.end() || it->second != e.block_nodes[k])
        throw TopologyError("interface edge without a matching duplicate pair at node " +
                            std::to_string(e.matrix_nodes[k]));
    }
    const Point a = mesh.nodes[e.matrix_nodes[0]];
    const Point b = mesh.nodes[e.matrix_nodes[1]];
    const double len = norm(b - a);
    double m[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (const auto& q : kEdgeGauss2) {
      const double hq = h.scalar_value(mesh.cell_coordinate(a + q.t * (b - a)));
      const double n[2] = {1.0 - q.t, q.t};
      const double w = scale * len * q.w * hq;
      m[0][0] += w * n[0] * n[0];
      m[0][1] += w * n[0] * n[1];
      m[1][1] += w * n[1] * n[1];
    }
    m[1][0] = m[0][1];
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        system.add(e.block_nodes[i], e.block_nodes[j], m[i][j]);
        if (term == InterfaceTerm::jump) {
          system.add(e.matrix_nodes[i], e.matrix_nodes[j], m[i][j]);
          system.add(e.matrix_nodes[i], e.block_nodes[j], -m[i][j]);
          system.add(e.block_nodes[i], e.matrix_nodes[j], -m[i][j]);
        }
      }
    }
  }
}

void assemble_load(const Mesh& mesh, const ScalarFunction& f, Subdomain tag, double scale,
                   SparseSystem& system) {
  check_subdomain(tag);
  for (const auto& t : mesh.triangles) {
    if (t.tag != tag) continue;
    const Point p[3] = {mesh.nodes[t.v[0]], mesh.nodes[t.v[1]], mesh.nodes[t.v[2]]};
    const double w = scale * mesh.triangle_area(t);
    double local[3] = {0.0, 0.0, 0.0};
    for (const auto& q : kTriangle7) {
      const Point x = q.bary[0] * p[0] + q.bary[1] * p[1] + q.bary[2] * p[2];
      const double fq = f(x);
      for (int a = 0; a < 3; ++a) local[a] += q.w * fq * q.bary[a];
    }
    for (int a = 0; a < 3; ++a) system.add_rhs(t.v[a], w * local[a]);
  }
}

void assemble_gradient_load(const Mesh& mesh, const CoefficientField& coeff, Vec2 direction,
                            Subdomain tag, SparseSystem& system) {
  check_subdomain(tag);
  for (const auto& t : mesh.triangles) {
    if (t.tag != tag) continue;
    const auto g = p1_gradients(mesh, t);
    const Vec2 flux = coeff.matrix(mesh.cell_coordinate(mesh.centroid(t))) * direction;
    const double w = mesh.triangle_area(t);
    for (int a = 0; a < 3; ++a) system.add_rhs(t.v[a], -w * dot(flux, g[a]));
  }
}

}  // namespace homogflow
