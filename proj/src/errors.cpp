#include "homogflow/errors.hpp"

namespace homogflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::geometry: return "geometry";
    case ErrorKind::mesh: return "mesh";
    case ErrorKind::pairing: return "pairing";
    case ErrorKind::topology: return "topology";
    case ErrorKind::argument: return "argument";
    case ErrorKind::constraint: return "constraint";
    case ErrorKind::solver: return "solver";
    case ErrorKind::config: return "config";
    case ErrorKind::dependency: return "dependency";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace homogflow
