#include "homogflow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <queue>
#include <unordered_map>

#include "homogflow/errors.hpp"
#include "homogflow/fingerprint.hpp"

namespace homogflow {

namespace {

// Nodes closer than this fraction of the grid spacing to the block boundary
// are moved onto it; crossed edges are cut only farther away.
constexpr double kSnapFraction = 0.3;
constexpr double kFaceTol = 1e-12;

using Tri = std::array<Index, 3>;

std::uint64_t edge_key(Index a, Index b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

double signed_area(Point a, Point b, Point c) { return 0.5 * cross(b - a, c - a); }

struct Background {
  std::vector<Point> nodes;
  std::vector<Tri> tris;
};

Background structured_grid(int n) {
  Background g;
  g.nodes.reserve(static_cast<std::size_t>((n + 1) * (n + 1)));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      g.nodes.push_back({static_cast<double>(i) / n, static_cast<double>(j) / n});
  auto id = [n](int i, int j) { return static_cast<Index>(j * (n + 1) + i); };
  g.tris.reserve(static_cast<std::size_t>(2 * n * n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Index a = id(i, j), b = id(i + 1, j), c = id(i + 1, j + 1), d = id(i, j + 1);
      if ((i + j) % 2 == 0) {
        g.tris.push_back({a, b, c});
        g.tris.push_back({a, c, d});
      } else {
        g.tris.push_back({a, b, d});
        g.tris.push_back({b, c, d});
      }
    }
  }
  return g;
}

// Splits every triangle crossed by the zero level set so that the boundary
// becomes a union of mesh edges. Cut nodes get level value 0.
void cut_crossed_triangles(const BlockShape& block, Background& g, std::vector<double>& phi) {
  std::unordered_map<std::uint64_t, Index> cut_node;
  auto cut = [&](Index a, Index b) -> Index {
    if (!(phi[a] * phi[b] < 0.0)) return -1;
    const auto key = edge_key(a, b);
    if (auto it = cut_node.find(key); it != cut_node.end()) return it->second;
    const Index lo = std::min(a, b), hi = std::max(a, b);
    const double t = boundary_crossing(block, g.nodes[lo], g.nodes[hi]);
    const Index id = static_cast<Index>(g.nodes.size());
    g.nodes.push_back(g.nodes[lo] + t * (g.nodes[hi] - g.nodes[lo]));
    phi.push_back(0.0);
    cut_node.emplace(key, id);
    return id;
  };

  std::vector<Tri> out;
  out.reserve(g.tris.size() + g.tris.size() / 8);
  for (const Tri& t : g.tris) {
    std::array<Index, 3> c{cut(t[0], t[1]), cut(t[1], t[2]), cut(t[2], t[0])};
    const int ncut = (c[0] >= 0) + (c[1] >= 0) + (c[2] >= 0);
    if (ncut == 0) {
      out.push_back(t);
    } else if (ncut == 1) {
      const int k = c[0] >= 0 ? 0 : (c[1] >= 0 ? 1 : 2);
      const Index a = t[k], b = t[(k + 1) % 3], z = t[(k + 2) % 3];
      out.push_back({a, c[k], z});
      out.push_back({c[k], b, z});
    } else if (ncut == 2) {
      // the lone vertex is shared by both cut edges
      const int k = c[0] < 0 ? 2 : (c[1] < 0 ? 0 : 1);
      const Index a = t[k], b = t[(k + 1) % 3], cc = t[(k + 2) % 3];
      const Index c1 = c[k];            // on a-b
      const Index c2 = c[(k + 2) % 3];  // on c-a
      out.push_back({a, c1, c2});
      const double d1 = norm(g.nodes[c1] - g.nodes[cc]);
      const double d2 = norm(g.nodes[b] - g.nodes[c2]);
      if (d1 <= d2) {
        out.push_back({c1, b, cc});
        out.push_back({c1, cc, c2});
      } else {
        out.push_back({c1, b, c2});
        out.push_back({b, cc, c2});
      }
    } else {
      throw MeshError("triangle crossed three times by the block boundary");
    }
  }
  g.tris = std::move(out);
}

Subdomain classify(const BlockShape& block, const Background& g, const std::vector<double>& phi,
                   const Tri& t) {
  bool inside = false, outside = false;
  for (Index v : t) {
    inside |= phi[v] < 0.0;
    outside |= phi[v] > 0.0;
  }
  if (inside && outside) throw MeshError("triangle straddles the block boundary after cutting");
  if (inside) return Subdomain::block;
  if (outside) return Subdomain::matrix;
  const Point c = (1.0 / 3.0) * (g.nodes[t[0]] + g.nodes[t[1]] + g.nodes[t[2]]);
  return level_set(block, c) < 0.0 ? Subdomain::block : Subdomain::matrix;
}

// Triangles of one tag reachable from each other across shared edges.
bool connected(const std::vector<Triangle>& tris, Subdomain tag) {
  std::unordered_map<std::uint64_t, std::vector<Index>> edge_tris;
  Index first = -1;
  for (Index t = 0; t < static_cast<Index>(tris.size()); ++t) {
    if (tris[t].tag != tag) continue;
    if (first < 0) first = t;
    const auto& v = tris[t].v;
    for (int k = 0; k < 3; ++k) edge_tris[edge_key(v[k], v[(k + 1) % 3])].push_back(t);
  }
  if (first < 0) return true;
  std::vector<char> seen(tris.size(), 0);
  std::queue<Index> q;
  q.push(first);
  seen[first] = 1;
  std::size_t count = 0;
  while (!q.empty()) {
    const Index t = q.front();
    q.pop();
    ++count;
    const auto& v = tris[t].v;
    for (int k = 0; k < 3; ++k)
      for (Index s : edge_tris[edge_key(v[k], v[(k + 1) % 3])])
        if (!seen[s]) {
          seen[s] = 1;
          q.push(s);
        }
  }
  std::size_t total = 0;
  for (const auto& t : tris) total += t.tag == tag;
  return count == total;
}

bool on_cell_face(Point p) {
  return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
}

}  // namespace

void check_subdomain(Subdomain tag) {
  if (tag != Subdomain::matrix && tag != Subdomain::block)
    throw ArgumentError("unknown subdomain tag " + std::to_string(static_cast<int>(tag)));
}

Point Mesh::cell_coordinate(Point x) const {
  const double m = cells_per_side;
  const double y0 = x.x * m, y1 = x.y * m;
  return {y0 - std::floor(y0), y1 - std::floor(y1)};
}

double Mesh::triangle_area(const Triangle& t) const {
  return signed_area(nodes[t.v[0]], nodes[t.v[1]], nodes[t.v[2]]);
}

Point Mesh::centroid(const Triangle& t) const {
  return (1.0 / 3.0) * (nodes[t.v[0]] + nodes[t.v[1]] + nodes[t.v[2]]);
}

double Mesh::area(Subdomain tag) const {
  check_subdomain(tag);
  double a = 0.0;
  for (const auto& t : triangles)
    if (t.tag == tag) a += triangle_area(t);
  return a;
}

double Mesh::interface_length() const {
  double l = 0.0;
  for (const auto& e : interface_edges)
    l += norm(nodes[e.matrix_nodes[1]] - nodes[e.matrix_nodes[0]]);
  return l;
}

std::size_t Mesh::count_triangles(Subdomain tag) const {
  return static_cast<std::size_t>(
      std::count_if(triangles.begin(), triangles.end(), [tag](const Triangle& t) { return t.tag == tag; }));
}

std::string Mesh::geometry_fingerprint() const { return fingerprint(describe(geometry)); }

Mesh build_unit_cell_mesh(const CellGeometry& geom) {
  validate(geom);
  const int n = geom.resolution;
  const double spacing = 1.0 / n;
  Background g = structured_grid(n);

  std::vector<double> phi(g.nodes.size(), 1.0);
  if (geom.has_block()) {
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      phi[k] = level_set(geom.block, g.nodes[k]);
      if (std::abs(phi[k]) < kSnapFraction * spacing) {
        g.nodes[k] = project_to_boundary(geom.block, g.nodes[k]);
        phi[k] = 0.0;
      }
    }
    cut_crossed_triangles(geom.block, g, phi);
  }

  Mesh mesh;
  mesh.geometry = geom;
  mesh.triangles.reserve(g.tris.size());
  for (const Tri& t : g.tris) {
    const Subdomain tag = geom.has_block() ? classify(geom.block, g, phi, t) : Subdomain::matrix;
    const double a = signed_area(g.nodes[t[0]], g.nodes[t[1]], g.nodes[t[2]]);
    if (!(a > 1e-10 * spacing * spacing)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "inverted or degenerate triangle (area %.3g) near (%.4f, %.4f)",
                    a, g.nodes[t[0]].x, g.nodes[t[0]].y);
      throw MeshError(buf);
    }
    mesh.triangles.push_back({t, tag});
  }
  if (!connected(mesh.triangles, Subdomain::matrix))
    throw GeometryError("matrix part of the cell is not connected");
  if (!connected(mesh.triangles, Subdomain::block))
    throw GeometryError("block is not connected");

  // edge -> adjacent triangles, on the shared (not yet duplicated) numbering
  std::map<std::uint64_t, std::vector<Index>> edge_tris;
  for (Index t = 0; t < static_cast<Index>(mesh.triangles.size()); ++t) {
    const auto& v = mesh.triangles[t].v;
    for (int k = 0; k < 3; ++k) edge_tris[edge_key(v[k], v[(k + 1) % 3])].push_back(t);
  }

  // duplicate nodes touched by both subdomains
  const std::size_t base = g.nodes.size();
  std::vector<char> touch_matrix(base, 0), touch_block(base, 0);
  for (const auto& t : mesh.triangles)
    for (Index v : t.v) (t.tag == Subdomain::matrix ? touch_matrix : touch_block)[v] = 1;
  mesh.nodes = g.nodes;
  mesh.node_side.assign(base, Subdomain::matrix);
  std::vector<Index> block_copy(base, -1);
  for (std::size_t v = 0; v < base; ++v) {
    if (!touch_matrix[v] && !touch_block[v]) throw MeshError("unused mesh node");
    if (touch_block[v] && !touch_matrix[v]) {
      mesh.node_side[v] = Subdomain::block;
      block_copy[v] = static_cast<Index>(v);
    } else if (touch_block[v]) {
      block_copy[v] = static_cast<Index>(mesh.nodes.size());
      mesh.nodes.push_back(g.nodes[v]);
      mesh.node_side.push_back(Subdomain::block);
    }
  }

  std::vector<int> interface_degree(base, 0);
  for (const auto& [key, ts] : edge_tris) {
    const Index a = static_cast<Index>(key >> 32);
    const Index b = static_cast<Index>(key & 0xffffffffu);
    if (ts.size() == 1) {
      if (!on_cell_face(g.nodes[a]) || !on_cell_face(g.nodes[b]))
        throw MeshError("open edge inside the cell");
      mesh.boundary_edges.push_back({a, b});
      continue;
    }
    if (ts.size() != 2) throw MeshError("non-manifold edge");
    const Triangle& t0 = mesh.triangles[ts[0]];
    const Triangle& t1 = mesh.triangles[ts[1]];
    if (t0.tag == t1.tag) continue;
    const Index mt = t0.tag == Subdomain::matrix ? ts[0] : ts[1];
    const Index bt = t0.tag == Subdomain::matrix ? ts[1] : ts[0];
    InterfaceEdge e;
    e.matrix_nodes = {a, b};
    e.block_nodes = {block_copy[a], block_copy[b]};
    e.matrix_triangle = mt;
    e.block_triangle = bt;
    const Point d = g.nodes[b] - g.nodes[a];
    Vec2 nu = (1.0 / norm(d)) * Vec2{d.y, -d.x};
    const Point mid = 0.5 * (g.nodes[a] + g.nodes[b]);
    if (dot(nu, mesh.centroid(mesh.triangles[bt]) - mid) < 0.0) nu = -1.0 * nu;
    e.normal = nu;
    mesh.interface_edges.push_back(e);
    ++interface_degree[a];
    ++interface_degree[b];
  }
  for (std::size_t v = 0; v < base; ++v) {
    const bool shared = touch_matrix[v] && touch_block[v];
    if (shared && interface_degree[v] != 2)
      throw MeshError("interface is not a closed simple polyline at node " + std::to_string(v));
  }

  for (auto& t : mesh.triangles)
    if (t.tag == Subdomain::block)
      for (Index& v : t.v) v = block_copy[v];

  mesh.source_node.resize(mesh.nodes.size());
  for (std::size_t v = 0; v < mesh.nodes.size(); ++v) mesh.source_node[v] = static_cast<Index>(v);
  mesh.triangle_cell.assign(mesh.triangles.size(), {0, 0});
  return mesh;
}

Mesh build_uniform_mesh(int resolution) {
  return build_unit_cell_mesh(CellGeometry{NoBlock{}, resolution});
}

PeriodicMap build_periodic_map(const Mesh& mesh) {
  std::vector<char> on_boundary(mesh.num_nodes(), 0);
  for (const auto& e : mesh.boundary_edges) on_boundary[e[0]] = on_boundary[e[1]] = 1;

  auto near = [](double a, double b) { return std::abs(a - b) <= kFaceTol; };
  std::vector<Index> left, right, bottom, top;
  PeriodicMap map;
  for (Index v = 0; v < static_cast<Index>(mesh.num_nodes()); ++v) {
    if (!on_boundary[v]) continue;
    const Point p = mesh.nodes[v];
    const bool x0 = near(p.x, 0.0), x1 = near(p.x, 1.0);
    const bool y0 = near(p.y, 0.0), y1 = near(p.y, 1.0);
    if ((x0 || x1) && (y0 || y1)) {
      map.corner_group[(x1 ? 1 : 0) + (y1 ? 2 : 0)] = v;
    } else if (x0) {
      left.push_back(v);
    } else if (x1) {
      right.push_back(v);
    } else if (y0) {
      bottom.push_back(v);
    } else if (y1) {
      top.push_back(v);
    } else {
      throw PairingError("boundary node " + std::to_string(v) + " does not lie on a cell face");
    }
  }
  for (Index c : map.corner_group)
    if (c < 0) throw PairingError("cell corner node missing");

  auto pair_faces = [&](std::vector<Index>& masters, std::vector<Index>& slaves, int coord,
                        const char* what) {
    auto by = [&](Index a, Index b) { return mesh.nodes[a][coord] < mesh.nodes[b][coord]; };
    std::sort(masters.begin(), masters.end(), by);
    std::sort(slaves.begin(), slaves.end(), by);
    if (masters.size() != slaves.size())
      throw PairingError(std::string("unmatched node count on ") + what + " faces");
    for (std::size_t k = 0; k < masters.size(); ++k) {
      if (!near(mesh.nodes[masters[k]][coord], mesh.nodes[slaves[k]][coord])) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "unmatched boundary node %d at (%.15g, %.15g) on %s faces",
                      slaves[k], mesh.nodes[slaves[k]].x, mesh.nodes[slaves[k]].y, what);
        throw PairingError(buf);
      }
      map.pairs.push_back({slaves[k], masters[k]});
    }
  };
  pair_faces(left, right, 1, "x");
  pair_faces(bottom, top, 0, "y");
  return map;
}

Mesh build_epsilon_mesh(const CellGeometry& geom, int m) {
  if (m < 2) throw ArgumentError("eps must be 1/m with m >= 2, got m = " + std::to_string(m));
  const Mesh unit = build_unit_cell_mesh(geom);
  const int n = geom.resolution;
  const long long side = static_cast<long long>(m) * n + 1;

  Mesh mesh;
  mesh.geometry = geom;
  mesh.cells_per_side = m;
  const std::size_t nu = unit.num_nodes();
  mesh.nodes.reserve(nu * m * m);
  std::unordered_map<long long, Index> face_node;
  std::vector<Index> local(nu);

  for (int cj = 0; cj < m; ++cj) {
    for (int ci = 0; ci < m; ++ci) {
      for (std::size_t k = 0; k < nu; ++k) {
        const Point p = unit.nodes[k];
        if (on_cell_face(p)) {
          const long long gx = static_cast<long long>(ci) * n + std::llround(p.x * n);
          const long long gy = static_cast<long long>(cj) * n + std::llround(p.y * n);
          const long long key = gy * side + gx;
          if (auto it = face_node.find(key); it != face_node.end()) {
            local[k] = it->second;
            continue;
          }
          local[k] = static_cast<Index>(mesh.nodes.size());
          face_node.emplace(key, local[k]);
          mesh.nodes.push_back({static_cast<double>(gx) / (side - 1),
                                static_cast<double>(gy) / (side - 1)});
        } else {
          local[k] = static_cast<Index>(mesh.nodes.size());
          mesh.nodes.push_back({(ci + p.x) / m, (cj + p.y) / m});
        }
        mesh.node_side.push_back(unit.node_side[k]);
        mesh.source_node.push_back(static_cast<Index>(k));
      }

      const Index tri_offset = static_cast<Index>(mesh.triangles.size());
      for (const auto& t : unit.triangles) {
        mesh.triangles.push_back({{local[t.v[0]], local[t.v[1]], local[t.v[2]]}, t.tag});
        mesh.triangle_cell.push_back({ci, cj});
      }
      for (const auto& e : unit.interface_edges) {
        InterfaceEdge f = e;
        f.matrix_nodes = {local[e.matrix_nodes[0]], local[e.matrix_nodes[1]]};
        f.block_nodes = {local[e.block_nodes[0]], local[e.block_nodes[1]]};
        f.matrix_triangle += tri_offset;
        f.block_triangle += tri_offset;
        mesh.interface_edges.push_back(f);
      }
      for (const auto& e : unit.boundary_edges) {
        const Point a = unit.nodes[e[0]], b = unit.nodes[e[1]];
        const bool outer = (a.x == 0.0 && b.x == 0.0 && ci == 0) ||
                           (a.x == 1.0 && b.x == 1.0 && ci == m - 1) ||
                           (a.y == 0.0 && b.y == 0.0 && cj == 0) ||
                           (a.y == 1.0 && b.y == 1.0 && cj == m - 1);
        if (outer) mesh.boundary_edges.push_back({local[e[0]], local[e[1]]});
      }
    }
  }
  return mesh;
}

std::vector<InterfacePair> extract_interface_pairing(const Mesh& mesh) {
  std::map<Index, Index> to_block;
  std::map<Index, Index> to_matrix;
  for (const auto& e : mesh.interface_edges) {
    for (int k = 0; k < 2; ++k) {
      const Index a = e.matrix_nodes[k], b = e.block_nodes[k];
      if (a < 0 || b < 0 || a >= static_cast<Index>(mesh.num_nodes()) ||
          b >= static_cast<Index>(mesh.num_nodes()))
        throw TopologyError("interface edge references a missing node");
      if (mesh.node_side[a] != Subdomain::matrix || mesh.node_side[b] != Subdomain::block)
        throw TopologyError("interface duplicate on the wrong side at node " + std::to_string(a));
      if (!(mesh.nodes[a] == mesh.nodes[b]))
        throw TopologyError("interface duplicates are not coincident at node " + std::to_string(a));
      auto [it, fresh] = to_block.emplace(a, b);
      if (!fresh && it->second != b)
        throw TopologyError("matrix node " + std::to_string(a) + " has two block copies");
      auto [jt, fresh2] = to_matrix.emplace(b, a);
      if (!fresh2 && jt->second != a)
        throw TopologyError("orphan duplicate: block node " + std::to_string(b) +
                            " paired with two matrix nodes");
    }
  }
  std::vector<InterfacePair> pairs;
  pairs.reserve(to_block.size());
  for (const auto& [a, b] : to_block) pairs.push_back({a, b});
  return pairs;
}

int cells_per_side_from_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ArgumentError("eps must be positive");
  const double inv = 1.0 / eps;
  const double m = std::round(inv);
  if (std::abs(inv - m) > 1e-9 * inv || m < 2.0) {
    char buf[120];
    std::snprintf(buf, sizeof buf, "eps = %.10g is not 1/m for an integer m >= 2", eps);
    throw ArgumentError(buf);
  }
  return static_cast<int>(m);
}

}  // namespace homogflow
