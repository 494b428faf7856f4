#pragma once

#include <string>
#include <vector>

#include "homogflow/expression.hpp"
#include "homogflow/linalg.hpp"
#include "homogflow/mesh.hpp"

namespace homogflow {

/// Y-periodic coefficient on the reference cell: a permeability matrix
/// (A or B) or the scalar interface permeability h. Always evaluated at cell
/// coordinates y; callers on a tiled mesh pull back with Mesh::cell_coordinate.
class CoefficientField {
 public:
  enum class Kind { constant_matrix, scalar_times_identity, piecewise_layered };

  static CoefficientField constant(const Mat2& value);
  static CoefficientField scalar(double value);
  /// `expr` is written in y1, y2.
  static CoefficientField scalar(Expression expr);
  /// values[k] * I on the k-th of values.size() equal slabs along `direction`
  /// (1 or 2).
  static CoefficientField layered(std::vector<double> values, int direction);

  Kind kind() const { return kind_; }

  Mat2 matrix(Point y) const;
  /// Scalar value; constant matrices must be multiples of the identity.
  double scalar_value(Point y) const;

  /// Smallest eigenvalue at the centroids of the triangles of `tag`. Throws
  /// ArgumentError unless it is positive (and the matrix symmetric).
  double check_elliptic(const Mesh& mesh, Subdomain tag) const;
  /// Smallest value at the interface quadrature points. Throws ArgumentError
  /// unless positive.
  double check_positive_on_interface(const Mesh& mesh) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::constant_matrix;
  Mat2 value_ = Mat2::identity();
  Expression expr_ = Expression::constant(1.0);
  std::vector<double> layers_;
  int direction_ = 1;
};

}  // namespace homogflow
