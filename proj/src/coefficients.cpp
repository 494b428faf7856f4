#include "homogflow/coefficients.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "homogflow/errors.hpp"
#include "homogflow/quadrature.hpp"

namespace homogflow {

namespace {

Point wrap(Point y) { return {y.x - std::floor(y.x), y.y - std::floor(y.y)}; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

CoefficientField CoefficientField::constant(const Mat2& value) {
  CoefficientField c;
  c.kind_ = Kind::constant_matrix;
  c.value_ = value;
  return c;
}

CoefficientField CoefficientField::scalar(double value) {
  return scalar(Expression::constant(value));
}

CoefficientField CoefficientField::scalar(Expression expr) {
  CoefficientField c;
  c.kind_ = Kind::scalar_times_identity;
  c.expr_ = std::move(expr);
  return c;
}

CoefficientField CoefficientField::layered(std::vector<double> values, int direction) {
  if (values.empty()) throw ArgumentError("layered coefficient needs at least one value");
  if (direction != 1 && direction != 2)
    throw ArgumentError("layer direction must be 1 or 2, got " + std::to_string(direction));
  CoefficientField c;
  c.kind_ = Kind::piecewise_layered;
  c.layers_ = std::move(values);
  c.direction_ = direction;
  return c;
}

Mat2 CoefficientField::matrix(Point y) const {
  switch (kind_) {
    case Kind::constant_matrix: return value_;
    case Kind::scalar_times_identity: return Mat2::identity(expr_(wrap(y)));
    case Kind::piecewise_layered: return Mat2::identity(scalar_value(y));
  }
  return value_;
}

double CoefficientField::scalar_value(Point y) const {
  switch (kind_) {
    case Kind::constant_matrix:
      if (value_(0, 1) != 0.0 || value_(1, 0) != 0.0 || value_(0, 0) != value_(1, 1))
        throw ArgumentError("anisotropic matrix used where a scalar coefficient is required");
      return value_(0, 0);
    case Kind::scalar_times_identity: return expr_(wrap(y));
    case Kind::piecewise_layered: {
      const double s = wrap(y)[direction_ - 1];
      const auto k = static_cast<std::size_t>(s * static_cast<double>(layers_.size()));
      return layers_[std::min(k, layers_.size() - 1)];
    }
  }
  return 0.0;
}

double CoefficientField::check_elliptic(const Mesh& mesh, Subdomain tag) const {
  check_subdomain(tag);
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& t : mesh.triangles) {
    if (t.tag != tag) continue;
    const Mat2 a = matrix(mesh.cell_coordinate(mesh.centroid(t)));
    if (std::abs(a(0, 1) - a(1, 0)) > 1e-14 * a.max_abs())
      throw ArgumentError("coefficient matrix is not symmetric");
    lowest = std::min(lowest, a.sym_eigenvalues()[0]);
  }
  if (!(lowest > 0.0))
    throw ArgumentError("coefficient is not uniformly elliptic (min eigenvalue " + num(lowest) + ")");
  return lowest;
}

double CoefficientField::check_positive_on_interface(const Mesh& mesh) const {
  double lowest = std::numeric_limits<double>::infinity();
  for (const auto& e : mesh.interface_edges) {
    const Point a = mesh.nodes[e.matrix_nodes[0]];
    const Point b = mesh.nodes[e.matrix_nodes[1]];
    for (const auto& q : kEdgeGauss2)
      lowest = std::min(lowest, scalar_value(mesh.cell_coordinate(a + q.t * (b - a))));
  }
  if (!(lowest > 0.0))
    throw ArgumentError("interface permeability must be bounded below by a positive constant "
                        "(min " + num(lowest) + ")");
  return lowest;
}

std::string CoefficientField::describe() const {
  switch (kind_) {
    case Kind::constant_matrix:
      return "const[" + num(value_(0, 0)) + "," + num(value_(0, 1)) + "," + num(value_(1, 0)) +
             "," + num(value_(1, 1)) + "]";
    case Kind::scalar_times_identity: return "scalar[" + expr_.text() + "]";
    case Kind::piecewise_layered: {
      std::string s = "layered[" + std::to_string(direction_) + ":";
      for (std::size_t k = 0; k < layers_.size(); ++k) s += (k ? "," : "") + num(layers_[k]);
      return s + "]";
    }
  }
  return "";
}

}  // namespace homogflow
