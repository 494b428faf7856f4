#pragma once

#include <optional>
#include <string>
#include <variant>

#include "homogflow/linalg.hpp"

namespace homogflow {

/// Cell without an inclusion: Y1 = Y.
struct NoBlock {
  friend bool operator==(NoBlock, NoBlock) = default;
};

struct Disk {
  Point center{0.5, 0.5};
  double radius = 0.25;
  friend bool operator==(const Disk&, const Disk&) = default;
};

/// Axis-aligned square block.
struct Square {
  Point center{0.5, 0.5};
  double half_width = 0.25;
  friend bool operator==(const Square&, const Square&) = default;
};

using BlockShape = std::variant<NoBlock, Disk, Square>;

/// Unit cell Y = (0,1)^2 with one block Y2 strictly inside it.
struct CellGeometry {
  BlockShape block = Disk{};
  /// Background grid edges per unit length.
  int resolution = 32;

  bool has_block() const { return !std::holds_alternative<NoBlock>(block); }
  friend bool operator==(const CellGeometry&, const CellGeometry&) = default;
};

/// Throws GeometryError unless the block keeps a distance of at least
/// 2/resolution from the cell boundary. A convex block with that margin
/// leaves Y1 and its periodic extension connected.
void validate(const CellGeometry& geom);

/// Signed level set of the block boundary, negative inside the block. For the
/// disk this is the Euclidean signed distance; for the square the Chebyshev one.
double level_set(const BlockShape& block, Point p);

/// Closest point on the block boundary.
Point project_to_boundary(const BlockShape& block, Point p);

/// Parameter t in (0,1) where the segment a + t (b - a) crosses the block
/// boundary, given level_set(a) and level_set(b) of opposite signs.
double boundary_crossing(const BlockShape& block, Point a, Point b);

double exact_block_area(const BlockShape& block);
double exact_block_perimeter(const BlockShape& block);
Point block_center(const BlockShape& block);

/// Canonical text, used for provenance fingerprints.
std::string describe(const CellGeometry& geom);

}  // namespace homogflow
