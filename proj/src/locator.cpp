#include "homogflow/locator.hpp"

#include <algorithm>
#include <cmath>

#include "homogflow/errors.hpp"

namespace homogflow {

PointLocator::PointLocator(std::shared_ptr<const Mesh> mesh, int buckets_per_side)
    : mesh_(std::move(mesh)) {
  const Mesh& m = *mesh_;
  if (m.triangles.empty()) throw ArgumentError("cannot locate points on an empty mesh");
  buckets_ = buckets_per_side > 0
                 ? buckets_per_side
                 : std::max(1, static_cast<int>(std::sqrt(static_cast<double>(m.triangles.size()) / 2.0)));
  lo_ = hi_ = m.nodes[0];
  for (const Point& p : m.nodes) {
    lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
    hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
  }
  cells_.assign(static_cast<std::size_t>(buckets_) * buckets_, {});
  auto bucket = [&](double v, double lo, double hi) {
    const int b = static_cast<int>((v - lo) / (hi - lo) * buckets_);
    return std::clamp(b, 0, buckets_ - 1);
  };
  for (Index t = 0; t < static_cast<Index>(m.triangles.size()); ++t) {
    const auto& v = m.triangles[t].v;
    double x0 = m.nodes[v[0]].x, x1 = x0, y0 = m.nodes[v[0]].y, y1 = y0;
    for (int k = 1; k < 3; ++k) {
      x0 = std::min(x0, m.nodes[v[k]].x);
      x1 = std::max(x1, m.nodes[v[k]].x);
      y0 = std::min(y0, m.nodes[v[k]].y);
      y1 = std::max(y1, m.nodes[v[k]].y);
    }
    for (int j = bucket(y0, lo_.y, hi_.y); j <= bucket(y1, lo_.y, hi_.y); ++j)
      for (int i = bucket(x0, lo_.x, hi_.x); i <= bucket(x1, lo_.x, hi_.x); ++i)
        cells_[static_cast<std::size_t>(j) * buckets_ + i].push_back(t);
  }
}

std::optional<PointLocator::Hit> PointLocator::locate(Point p) const {
  const Mesh& m = *mesh_;
  const double tol = 1e-10;
  if (p.x < lo_.x - tol || p.x > hi_.x + tol || p.y < lo_.y - tol || p.y > hi_.y + tol)
    return std::nullopt;
  const int i = std::clamp(static_cast<int>((p.x - lo_.x) / (hi_.x - lo_.x) * buckets_), 0, buckets_ - 1);
  const int j = std::clamp(static_cast<int>((p.y - lo_.y) / (hi_.y - lo_.y) * buckets_), 0, buckets_ - 1);
  std::optional<Hit> best;
  double best_min = -1e300;
  for (Index t : cells_[static_cast<std::size_t>(j) * buckets_ + i]) {
    const auto& v = m.triangles[t].v;
    const Point a = m.nodes[v[0]], b = m.nodes[v[1]], c = m.nodes[v[2]];
    const double det = cross(b - a, c - a);
    const double l1 = cross(p - a, c - a) / det;
    const double l2 = cross(b - a, p - a) / det;
    const std::array<double, 3> bary{1.0 - l1 - l2, l1, l2};
    const double lowest = std::min({bary[0], bary[1], bary[2]});
    if (lowest >= 0.0) return Hit{t, bary};
    if (lowest > best_min) {
      best_min = lowest;
      best = Hit{t, bary};
    }
  }
  if (best && best_min >= -tol) return best;
  return std::nullopt;
}

double PointLocator::evaluate(const std::vector<double>& nodal, Point p) const {
  const auto hit = locate(p);
  if (!hit) throw ArgumentError("point outside the mesh");
  const auto& v = mesh_->triangles[hit->triangle].v;
  return hit->bary[0] * nodal[v[0]] + hit->bary[1] * nodal[v[1]] + hit->bary[2] * nodal[v[2]];
}

}  // namespace homogflow
