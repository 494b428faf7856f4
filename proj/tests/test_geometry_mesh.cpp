#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <set>

#include "homogflow/errors.hpp"
#include "homogflow/mesh.hpp"
#include "test_support.hpp"

using namespace homogflow;
using homogflow::testing::disk;
using homogflow::testing::no_block;

namespace {

const double kPi = std::numbers::pi;

bool on_cell_boundary(Point p) {
  return p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0;
}

// Number of connected components of the triangles with `tag`, joined through
// shared nodes.
int components(const Mesh& mesh, Subdomain tag) {
  std::vector<std::vector<Index>> by_node(mesh.num_nodes());
  for (Index t = 0; t < static_cast<Index>(mesh.triangles.size()); ++t)
    if (mesh.triangles[t].tag == tag)
      for (Index v : mesh.triangles[t].v) by_node[v].push_back(t);
  std::vector<char> seen(mesh.triangles.size(), 0);
  int count = 0;
  for (Index s = 0; s < static_cast<Index>(mesh.triangles.size()); ++s) {
    if (mesh.triangles[s].tag != tag || seen[s]) continue;
    ++count;
    std::queue<Index> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      const Index t = q.front();
      q.pop();
      for (Index v : mesh.triangles[t].v)
        for (Index o : by_node[v])
          if (!seen[o]) {
            seen[o] = 1;
            q.push(o);
          }
    }
  }
  return count;
}

}  // namespace

TEST(CellGeometry, DiskAreaAtResolution32) {
  const Mesh m = build_unit_cell_mesh(disk(32));
  EXPECT_NEAR(m.area(Subdomain::block), kPi / 16.0, 5e-3);
  EXPECT_NEAR(m.area(Subdomain::matrix) + m.area(Subdomain::block), 1.0, 1e-13);
}

TEST(CellGeometry, AlignedSquareIsMeshedExactly) {
  const Mesh m = build_unit_cell_mesh(CellGeometry{Square{{0.5, 0.5}, 0.25}, 16});
  EXPECT_NEAR(m.area(Subdomain::block), 0.25, 1e-14);
  EXPECT_NEAR(m.interface_length(), 2.0, 1e-14);
}

TEST(CellGeometry, MarginViolationIsRejected) {
  EXPECT_THROW(validate(disk(8, 0.49)), GeometryError);
  EXPECT_THROW(build_unit_cell_mesh(disk(8, 0.49)), GeometryError);
  EXPECT_THROW(build_unit_cell_mesh(CellGeometry{Square{{0.5, 0.5}, 0.45}, 16}), GeometryError);
  EXPECT_THROW(build_unit_cell_mesh(disk(1)), GeometryError);
  EXPECT_NO_THROW(validate(disk(8, 0.25)));
}

TEST(CellGeometry, LevelSetSigns) {
  const Disk d{{0.5, 0.5}, 0.25};
  EXPECT_LT(level_set(d, {0.5, 0.5}), 0.0);
  EXPECT_GT(level_set(d, {0.0, 0.0}), 0.0);
  EXPECT_NEAR(level_set(d, {0.75, 0.5}), 0.0, 1e-15);
  const Point p = project_to_boundary(d, {0.9, 0.5});
  EXPECT_NEAR(p.x, 0.75, 1e-15);
  const double t = boundary_crossing(d, {0.5, 0.5}, {1.0, 0.5});
  EXPECT_NEAR(t, 0.5, 1e-12);
}

TEST(UnitCellMesh, TrianglesArePositivelyOriented) {
  for (const auto& g : {disk(16), disk(32), disk(64, 0.37), CellGeometry{Square{{0.45, 0.55}, 0.2}, 24}}) {
    const Mesh m = build_unit_cell_mesh(g);
    for (const auto& t : m.triangles) EXPECT_GT(m.triangle_area(t), 0.0);
  }
}

TEST(UnitCellMesh, InterfaceFormsClosedPolylineWithInwardNormal) {
  const Mesh m = build_unit_cell_mesh(disk(32));
  ASSERT_FALSE(m.interface_edges.empty());
  std::map<Index, int> degree;
  for (const auto& e : m.interface_edges) {
    ++degree[e.matrix_nodes[0]];
    ++degree[e.matrix_nodes[1]];
    EXPECT_EQ(m.triangles[e.matrix_triangle].tag, Subdomain::matrix);
    EXPECT_EQ(m.triangles[e.block_triangle].tag, Subdomain::block);
    const Point a = m.nodes[e.matrix_nodes[0]], b = m.nodes[e.matrix_nodes[1]];
    EXPECT_NEAR(norm(e.normal), 1.0, 1e-14);
    EXPECT_NEAR(dot(e.normal, b - a), 0.0, 1e-14);
    EXPECT_GT(dot(e.normal, Point{0.5, 0.5} - 0.5 * (a + b)), 0.0);
    // Interface vertices lie on the exact circle.
    EXPECT_NEAR(norm(a - Point{0.5, 0.5}), 0.25, 1e-14);
  }
  for (const auto& [node, d] : degree) EXPECT_EQ(d, 2) << "node " << node;
  EXPECT_EQ(components(m, Subdomain::block), 1);
  EXPECT_EQ(components(m, Subdomain::matrix), 1);
}

TEST(UnitCellMesh, BlockNodesNeverTouchTheCellBoundary) {
  const Mesh m = build_unit_cell_mesh(disk(16));
  for (std::size_t i = 0; i < m.num_nodes(); ++i)
    if (m.node_side[i] == Subdomain::block) EXPECT_FALSE(on_cell_boundary(m.nodes[i]));
}

TEST(UnitCellMesh, BlockAreaConvergesAtSecondOrder) {
  double prev = -1.0;
  for (int n : {16, 32, 64, 128}) {
    const double err = std::abs(build_unit_cell_mesh(disk(n)).area(Subdomain::block) - kPi / 16.0);
    if (prev > 0.0) EXPECT_GE(prev / err, 3.0) << "n = " << n;
    prev = err;
  }
}

TEST(PeriodicMap, StructuredFourByFourCounts) {
  const Mesh m = build_uniform_mesh(4);
  const PeriodicMap p = build_periodic_map(m);
  // 3 interior nodes on each face: 12 non-corner boundary nodes, paired up.
  EXPECT_EQ(p.pairs.size(), 6u);
  for (Index c : p.corner_group) EXPECT_GE(c, 0);
  EXPECT_EQ(m.nodes[p.corner_group[0]], (Point{0.0, 0.0}));
}

TEST(PeriodicMap, EveryBoundaryNodePairedByALatticeVector) {
  for (const auto& g : {disk(32), no_block(8), CellGeometry{Square{{0.5, 0.5}, 0.3}, 20}}) {
    const Mesh m = build_unit_cell_mesh(g);
    const PeriodicMap p = build_periodic_map(m);
    std::set<Index> boundary;
    for (const auto& e : m.boundary_edges) boundary.insert({e[0], e[1]});
    std::multiset<Index> used;
    for (const auto& pr : p.pairs) {
      used.insert(pr.slave);
      used.insert(pr.master);
      const Point d = m.nodes[pr.slave] - m.nodes[pr.master];
      const bool e1 = std::abs(std::abs(d.x) - 1.0) <= 1e-12 && std::abs(d.y) <= 1e-12;
      const bool e2 = std::abs(std::abs(d.y) - 1.0) <= 1e-12 && std::abs(d.x) <= 1e-12;
      EXPECT_TRUE(e1 || e2);
    }
    for (Index c : p.corner_group) used.insert(c);
    EXPECT_EQ(used.size(), boundary.size());
    for (Index b : boundary) EXPECT_EQ(used.count(b), 1u) << "node " << b;
    EXPECT_EQ(p.pairs.size(), (boundary.size() - 4) / 2);
  }
}

TEST(PeriodicMap, PerturbedBoundaryNodeIsRejected) {
  Mesh m = build_uniform_mesh(4);
  for (std::size_t i = 0; i < m.num_nodes(); ++i)
    if (m.nodes[i].x == 0.0 && m.nodes[i].y > 0.0 && m.nodes[i].y < 1.0) {
      m.nodes[i].y += 1e-9;
      break;
    }
  EXPECT_THROW(build_periodic_map(m), PairingError);
}

TEST(EpsilonMesh, TwoByTwoTiling) {
  const Mesh unit = build_unit_cell_mesh(disk(16));
  const Mesh m = build_epsilon_mesh(disk(16), 2);
  EXPECT_EQ(m.cells_per_side, 2);
  EXPECT_EQ(m.triangles.size(), 4 * unit.triangles.size());
  EXPECT_EQ(components(m, Subdomain::block), 4);
  EXPECT_EQ(components(m, Subdomain::matrix), 1);
  for (std::size_t i = 0; i < m.num_nodes(); ++i)
    if (m.node_side[i] == Subdomain::block) EXPECT_FALSE(on_cell_boundary(m.nodes[i]));
  for (const auto& e : m.boundary_edges)
    for (Index v : e) {
      EXPECT_TRUE(on_cell_boundary(m.nodes[v]));
      EXPECT_EQ(m.node_side[v], Subdomain::matrix);
    }
}

TEST(EpsilonMesh, TriangleCountAndBlockAreaScale) {
  const Mesh unit = build_unit_cell_mesh(disk(16));
  for (int mm : {2, 3, 4, 8}) {
    const Mesh m = build_epsilon_mesh(disk(16), mm);
    EXPECT_EQ(m.triangles.size(), static_cast<std::size_t>(mm * mm) * unit.triangles.size());
    EXPECT_NEAR(m.area(Subdomain::block), kPi / 16.0, 5e-3);
    EXPECT_NEAR(m.area(Subdomain::block), unit.area(Subdomain::block), 1e-12);
    EXPECT_NEAR(m.area(Subdomain::matrix) + m.area(Subdomain::block), 1.0, 1e-12);
    for (const auto& t : m.triangles) EXPECT_GT(m.triangle_area(t), 0.0);
  }
}

TEST(EpsilonMesh, SharedFaceNodesAreMerged) {
  const Mesh unit = build_unit_cell_mesh(no_block(8));
  const Mesh m = build_epsilon_mesh(no_block(8), 3);
  // A 24 x 24 structured grid has 25^2 nodes.
  EXPECT_EQ(unit.num_nodes(), 81u);
  EXPECT_EQ(m.num_nodes(), 625u);
  EXPECT_EQ(m.boundary_edges.size(), 4u * 24u);
}

TEST(EpsilonMesh, RejectsSingleCellAndNonReciprocalEps) {
  EXPECT_THROW(build_epsilon_mesh(disk(16), 1), ArgumentError);
  EXPECT_THROW(build_epsilon_mesh(disk(16), 0), ArgumentError);
  EXPECT_THROW(cells_per_side_from_eps(0.3), ArgumentError);
  EXPECT_THROW(cells_per_side_from_eps(1.0), ArgumentError);
  EXPECT_THROW(cells_per_side_from_eps(-0.25), ArgumentError);
  EXPECT_EQ(cells_per_side_from_eps(0.25), 4);
  EXPECT_EQ(cells_per_side_from_eps(1.0 / 16.0), 16);
}

TEST(EpsilonMesh, ProvenanceAndPullback) {
  const Mesh unit = build_unit_cell_mesh(disk(16));
  const Mesh m = build_epsilon_mesh(disk(16), 4);
  EXPECT_EQ(m.geometry_fingerprint(), unit.geometry_fingerprint());
  EXPECT_NE(build_unit_cell_mesh(disk(32)).geometry_fingerprint(), unit.geometry_fingerprint());
  ASSERT_EQ(m.source_node.size(), m.num_nodes());
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    const Point y = unit.nodes[m.source_node[i]];
    const Point x = m.nodes[i];
    EXPECT_EQ(m.node_side[i], unit.node_side[m.source_node[i]]);
    // x = eps (cell + y) for some integer cell index.
    const double cx = x.x * 4 - y.x, cy = x.y * 4 - y.y;
    EXPECT_NEAR(cx, std::round(cx), 1e-12);
    EXPECT_NEAR(cy, std::round(cy), 1e-12);
  }
  const Point y = m.cell_coordinate({0.3, 0.9});
  EXPECT_NEAR(y.x, 0.2, 1e-12);
  EXPECT_NEAR(y.y, 0.6, 1e-12);
}

TEST(InterfacePairing, UnitCellCountsPolylineNodes) {
  const Mesh m = build_unit_cell_mesh(disk(32));
  std::set<Index> nodes;
  for (const auto& e : m.interface_edges) nodes.insert({e.matrix_nodes[0], e.matrix_nodes[1]});
  const auto pairs = extract_interface_pairing(m);
  EXPECT_EQ(pairs.size(), nodes.size());
  EXPECT_EQ(pairs.size(), m.interface_edges.size());  // closed polyline
  for (const auto& p : pairs) {
    EXPECT_EQ(norm(m.nodes[p.matrix_node] - m.nodes[p.block_node]), 0.0);
    EXPECT_EQ(m.node_side[p.matrix_node], Subdomain::matrix);
    EXPECT_EQ(m.node_side[p.block_node], Subdomain::block);
  }
}

TEST(InterfacePairing, TilingMultipliesPairs) {
  const auto unit = extract_interface_pairing(build_unit_cell_mesh(disk(16)));
  EXPECT_EQ(extract_interface_pairing(build_epsilon_mesh(disk(16), 2)).size(), 4 * unit.size());
}

TEST(InterfacePairing, OrphanDuplicateIsATopologyError) {
  Mesh m = build_unit_cell_mesh(disk(16));
  m.interface_edges[0].block_nodes[0] = m.interface_edges[5].block_nodes[1];
  EXPECT_THROW(extract_interface_pairing(m), TopologyError);

  Mesh w = build_unit_cell_mesh(disk(16));
  w.interface_edges[0].block_nodes[0] = w.interface_edges[0].matrix_nodes[0];
  EXPECT_THROW(extract_interface_pairing(w), TopologyError);
}

TEST(UniformMesh, CoversTheSquare) {
  const Mesh m = build_uniform_mesh(8);
  EXPECT_EQ(m.triangles.size(), 128u);
  EXPECT_NEAR(m.area(Subdomain::matrix), 1.0, 1e-14);
  EXPECT_TRUE(m.interface_edges.empty());
  EXPECT_EQ(m.boundary_edges.size(), 32u);
}
