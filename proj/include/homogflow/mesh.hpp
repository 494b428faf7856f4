#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "homogflow/geometry.hpp"
#include "homogflow/linalg.hpp"

namespace homogflow {

using Index = std::int32_t;

enum class Subdomain : std::uint8_t { matrix = 1, block = 2 };

/// Throws ArgumentError for values outside {matrix, block}.
void check_subdomain(Subdomain tag);

struct Triangle {
  std::array<Index, 3> v{};
  Subdomain tag = Subdomain::matrix;
};

/// Edge of the matrix/block interface. Nodes on the interface are duplicated:
/// the matrix triangle references `matrix_nodes`, the block triangle the
/// coincident `block_nodes` (same order).
struct InterfaceEdge {
  std::array<Index, 2> matrix_nodes{};
  std::array<Index, 2> block_nodes{};
  Index matrix_triangle = -1;
  Index block_triangle = -1;
  /// Unit normal pointing out of the matrix, into the block.
  Vec2 normal;
};

/// P1 triangulation of the unit cell, or of (0,1)^2 tiled by m x m scaled copies
/// of it. Immutable once built.
struct Mesh {
  std::vector<Point> nodes;
  std::vector<Subdomain> node_side;
  std::vector<Triangle> triangles;
  std::vector<InterfaceEdge> interface_edges;
  std::vector<std::array<Index, 2>> boundary_edges;

  /// Tiling provenance: unit-cell node each node was copied from, and the
  /// (i, j) cell index of each triangle. Identity / zero for a unit cell.
  std::vector<Index> source_node;
  std::vector<std::array<int, 2>> triangle_cell;
  /// Number of cells per side m; the cell size is 1/m.
  int cells_per_side = 1;
  CellGeometry geometry;

  std::size_t num_nodes() const { return nodes.size(); }
  double cell_size() const { return 1.0 / cells_per_side; }
  /// Periodic pullback y = frac(x / eps) into the reference cell.
  Point cell_coordinate(Point x) const;

  double triangle_area(const Triangle& t) const;
  Point centroid(const Triangle& t) const;
  double area(Subdomain tag) const;
  double interface_length() const;
  std::size_t count_triangles(Subdomain tag) const;
  /// Hash of the cell geometry (shape and resolution); equal for a unit cell
  /// and every tiling of it.
  std::string geometry_fingerprint() const;
};

/// Master/slave identification of boundary nodes on opposite faces of Y.
struct PeriodicMap {
  struct Pair {
    Index slave;
    Index master;
  };
  std::vector<Pair> pairs;
  /// corner_group[0] is the master; the other three corners are its slaves.
  std::array<Index, 4> corner_group{-1, -1, -1, -1};
};

/// Matched duplicate of an interface node.
struct InterfacePair {
  Index matrix_node;
  Index block_node;
};

/// Structured background grid (alternating diagonals, so the triangulation is
/// invariant under the symmetries of the square for even n) with the block
/// boundary recovered by snapping nearby nodes onto it and cutting the
/// remaining crossed edges. Throws GeometryError or MeshError.
Mesh build_unit_cell_mesh(const CellGeometry& geom);

/// Throws PairingError if some boundary node has no partner within 1e-12.
PeriodicMap build_periodic_map(const Mesh& mesh);

/// Omega = (0,1)^2 tiled by m x m copies of the unit cell scaled by eps = 1/m.
/// Shared cell-face nodes are merged; interface duplicates stay duplicated.
/// Throws ArgumentError unless m >= 2.
Mesh build_epsilon_mesh(const CellGeometry& geom, int cells_per_side);

/// Uniform triangulation of (0,1)^2 without a block.
Mesh build_uniform_mesh(int resolution);

/// One pair per interface node. Throws TopologyError on orphans.
std::vector<InterfacePair> extract_interface_pairing(const Mesh& mesh);

/// Converts eps to the integer m = 1/eps; throws ArgumentError if eps is not
/// a reciprocal of an integer >= 2.
int cells_per_side_from_eps(double eps);

}  // namespace homogflow
