#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "homogflow/mesh.hpp"

namespace homogflow {

/// Nodal P1 field. Values are indexed by mesh node; when `support` is set,
/// only nodes on that side carry meaningful values (the rest are zero).
struct FieldSolution {
  std::shared_ptr<const Mesh> mesh;
  std::vector<double> values;
  std::optional<Subdomain> support;

  bool defined_at(Index node) const {
    return !support || mesh->node_side[node] == *support;
  }
};

}  // namespace homogflow
