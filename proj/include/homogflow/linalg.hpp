#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace homogflow {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  double operator[](int i) const { return i == 0 ? x : y; }
  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Vec2 a, Vec2 b) = default;
};

using Point = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit(int i) { return i == 0 ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0}; }

/// Dense 2x2 matrix, row-major.
struct Mat2 {
  std::array<std::array<double, 2>, 2> a{{{0.0, 0.0}, {0.0, 0.0}}};

  static Mat2 identity(double s = 1.0) { return Mat2{{{{s, 0.0}, {0.0, s}}}}; }
  static Mat2 diag(double d0, double d1) { return Mat2{{{{d0, 0.0}, {0.0, d1}}}}; }

  double operator()(int i, int j) const { return a[i][j]; }
  double& operator()(int i, int j) { return a[i][j]; }

  Vec2 operator*(Vec2 v) const {
    return {a[0][0] * v.x + a[0][1] * v.y, a[1][0] * v.x + a[1][1] * v.y};
  }
  friend Mat2 operator*(double s, const Mat2& m) {
    Mat2 r = m;
    for (auto& row : r.a)
      for (double& v : row) v *= s;
    return r;
  }
  friend Mat2 operator-(const Mat2& x, const Mat2& y) {
    Mat2 r = x;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.a[i][j] -= y.a[i][j];
    return r;
  }
  friend bool operator==(const Mat2&, const Mat2&) = default;

  double max_abs() const {
    double r = 0.0;
    for (const auto& row : a)
      for (double v : row) r = std::max(r, std::abs(v));
    return r;
  }

  /// Eigenvalues of the symmetric part, ascending.
  std::array<double, 2> sym_eigenvalues() const {
    const double p = a[0][0];
    const double q = a[1][1];
    const double o = 0.5 * (a[0][1] + a[1][0]);
    const double mean = 0.5 * (p + q);
    const double rad = std::hypot(0.5 * (p - q), o);
    return {mean - rad, mean + rad};
  }
};

}  // namespace homogflow
