#pragma once

#include <array>
#include <cmath>

namespace homogflow {

struct EdgePoint {
  double t;  // position along the edge, in [0, 1]
  double w;  // weight, summing to 1
};

/// Two-point Gauss rule on [0, 1].
inline const std::array<EdgePoint, 2> kEdgeGauss2{{
    {0.5 - 0.5 / 1.7320508075688772, 0.5},
    {0.5 + 0.5 / 1.7320508075688772, 0.5},
}};

struct TrianglePoint {
  std::array<double, 3> bary;
  double w;  // weights sum to 1
};

/// Seven-point rule of degree 5 (Dunavant).
inline const std::array<TrianglePoint, 7> kTriangle7{{
    {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.225},
    {{0.0597158717897698, 0.4701420641051151, 0.4701420641051151}, 0.1323941527885062},
    {{0.4701420641051151, 0.0597158717897698, 0.4701420641051151}, 0.1323941527885062},
    {{0.4701420641051151, 0.4701420641051151, 0.0597158717897698}, 0.1323941527885062},
    {{0.7974269853530873, 0.1012865073234563, 0.1012865073234563}, 0.1259391805448271},
    {{0.1012865073234563, 0.7974269853530873, 0.1012865073234563}, 0.1259391805448271},
    {{0.1012865073234563, 0.1012865073234563, 0.7974269853530873}, 0.1259391805448271},
}};

}  // namespace homogflow
