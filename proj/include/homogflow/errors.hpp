#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace homogflow {

enum class ErrorKind {
  geometry,
  mesh,
  pairing,
  topology,
  argument,
  constraint,
  solver,
  config,
  dependency,
  io,
};

std::string_view to_string(ErrorKind kind);

/// Base of every exception thrown by the library. The kind is what the CLI
/// reports in its machine-parsable error line.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define HOMOGFLOW_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& message) : Error(Kind, message) {}     \
  };

HOMOGFLOW_DEFINE_ERROR(GeometryError, ErrorKind::geometry)
HOMOGFLOW_DEFINE_ERROR(MeshError, ErrorKind::mesh)
HOMOGFLOW_DEFINE_ERROR(PairingError, ErrorKind::pairing)
HOMOGFLOW_DEFINE_ERROR(TopologyError, ErrorKind::topology)
HOMOGFLOW_DEFINE_ERROR(ArgumentError, ErrorKind::argument)
HOMOGFLOW_DEFINE_ERROR(ConstraintError, ErrorKind::constraint)
HOMOGFLOW_DEFINE_ERROR(ConfigError, ErrorKind::config)
HOMOGFLOW_DEFINE_ERROR(DependencyError, ErrorKind::dependency)
HOMOGFLOW_DEFINE_ERROR(IoError, ErrorKind::io)

#undef HOMOGFLOW_DEFINE_ERROR

/// Conjugate gradients failed: iteration budget exhausted, or the operator
/// turned out not to be positive definite.
class SolverError : public Error {
 public:
  SolverError(const std::string& message, double residual, int iterations)
      : Error(ErrorKind::solver, message),
        residual_(residual),
        iterations_(iterations) {}

  double residual() const noexcept { return residual_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace homogflow
