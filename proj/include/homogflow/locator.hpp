#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "homogflow/field.hpp"
#include "homogflow/mesh.hpp"

namespace homogflow {

/// Point location on a triangulation through a uniform bucket grid over the
/// triangle bounding boxes.
class PointLocator {
 public:
  explicit PointLocator(std::shared_ptr<const Mesh> mesh, int buckets_per_side = 0);

  struct Hit {
    Index triangle;
    std::array<double, 3> bary;
  };
  /// Triangle containing p (tolerating 1e-10 outside its edges).
  std::optional<Hit> locate(Point p) const;

  /// P1 interpolation of nodal values; throws ArgumentError outside the mesh.
  double evaluate(const std::vector<double>& nodal, Point p) const;
  double evaluate(const FieldSolution& field, Point p) const { return evaluate(field.values, p); }

  const Mesh& mesh() const { return *mesh_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int buckets_ = 1;
  Point lo_, hi_;
  std::vector<std::vector<Index>> cells_;
};

}  // namespace homogflow
