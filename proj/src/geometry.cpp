#include "homogflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "homogflow/errors.hpp"

namespace homogflow {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Bounding box half extents and center of the block.
struct Extent {
  Point center;
  double half = 0.0;
};

}  // namespace

void validate(const CellGeometry& geom) {
  if (geom.resolution < 2)
    throw GeometryError("cell resolution must be at least 2, got " +
                        std::to_string(geom.resolution));
  if (!geom.has_block()) return;

  const Extent e = std::visit(
      overloaded{[](const Disk& d) { return Extent{d.center, d.radius}; },
                 [](const Square& s) { return Extent{s.center, s.half_width}; },
                 [](const NoBlock&) { return Extent{}; }},
      geom.block);
  if (!(e.half > 0.0)) throw GeometryError("block size must be positive");

  const double margin = std::min({e.center.x - e.half, 1.0 - (e.center.x + e.half),
                                  e.center.y - e.half, 1.0 - (e.center.y + e.half)});
  const double required = 2.0 / geom.resolution;
  if (margin < required) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "block is %.6g from the cell boundary, needs at least 2/n = %.6g",
                  margin, required);
    throw GeometryError(buf);
  }
}

double level_set(const BlockShape& block, Point p) {
  return std::visit(
      overloaded{[&](const Disk& d) { return norm(p - d.center) - d.radius; },
                 [&](const Square& s) {
                   const Point q = p - s.center;
                   return std::max(std::abs(q.x), std::abs(q.y)) - s.half_width;
                 },
                 [](const NoBlock&) { return 1.0; }},
      block);
}

Point project_to_boundary(const BlockShape& block, Point p) {
  return std::visit(
      overloaded{
          [&](const Disk& d) {
            const Point q = p - d.center;
            const double r = norm(q);
            if (r == 0.0) return d.center + Point{d.radius, 0.0};
            return d.center + (d.radius / r) * q;
          },
          [&](const Square& s) {
            const double w = s.half_width;
            Point q = p - s.center;
            const double ax = std::abs(q.x);
            const double ay = std::abs(q.y);
            if (ax > w || ay > w) {
              // outside: clamp onto the square
              q.x = std::clamp(q.x, -w, w);
              q.y = std::clamp(q.y, -w, w);
            } else if (w - ax <= w - ay) {
              q.x = std::copysign(w, q.x);
            } else {
              q.y = std::copysign(w, q.y);
            }
            return s.center + q;
          },
          [&](const NoBlock&) { return p; }},
      block);
}

double boundary_crossing(const BlockShape& block, Point a, Point b) {
  if (const auto* d = std::get_if<Disk>(&block)) {
    // |a - c + t (b - a)|^2 = R^2
    const Point q = a - d->center;
    const Point s = b - a;
    const double qa = dot(s, s);
    const double qb = 2.0 * dot(q, s);
    const double qc = dot(q, q) - d->radius * d->radius;
    const double disc = std::sqrt(std::max(0.0, qb * qb - 4.0 * qa * qc));
    // numerically stable pair of roots
    const double k = -0.5 * (qb + std::copysign(disc, qb));
    double roots[2] = {k / qa, k != 0.0 ? qc / k : 0.0};
    for (double t : roots)
      if (t > 0.0 && t < 1.0) return t;
    return std::clamp(roots[0], 0.0, 1.0);
  }
  // bisection for piecewise-linear level sets
  double lo = 0.0;
  double hi = 1.0;
  const double fa = level_set(block, a);
  for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = level_set(block, a + mid * (b - a));
    if ((fm < 0.0) == (fa < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double exact_block_area(const BlockShape& block) {
  return std::visit(
      overloaded{[](const Disk& d) { return std::numbers::pi * d.radius * d.radius; },
                 [](const Square& s) { return 4.0 * s.half_width * s.half_width; },
                 [](const NoBlock&) { return 0.0; }},
      block);
}

double exact_block_perimeter(const BlockShape& block) {
  return std::visit(
      overloaded{[](const Disk& d) { return 2.0 * std::numbers::pi * d.radius; },
                 [](const Square& s) { return 8.0 * s.half_width; },
                 [](const NoBlock&) { return 0.0; }},
      block);
}

Point block_center(const BlockShape& block) {
  return std::visit(overloaded{[](const Disk& d) { return d.center; },
                               [](const Square& s) { return s.center; },
                               [](const NoBlock&) { return Point{0.5, 0.5}; }},
                    block);
}

std::string describe(const CellGeometry& geom) {
  char buf[200];
  std::visit(overloaded{[&](const Disk& d) {
                          std::snprintf(buf, sizeof buf, "disk(%.17g,%.17g;r=%.17g)",
                                        d.center.x, d.center.y, d.radius);
                        },
                        [&](const Square& s) {
                          std::snprintf(buf, sizeof buf, "square(%.17g,%.17g;w=%.17g)",
                                        s.center.x, s.center.y, s.half_width);
                        },
                        [&](const NoBlock&) { std::snprintf(buf, sizeof buf, "none"); }},
             geom.block);
  return std::string(buf) + ";n=" + std::to_string(geom.resolution);
}

}  // namespace homogflow
