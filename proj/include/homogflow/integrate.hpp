#pragma once

#include <optional>
#include <span>
#include <vector>

#include "homogflow/assembly.hpp"
#include "homogflow/field.hpp"
#include "homogflow/mesh.hpp"

namespace homogflow {

/// Exact integral of a P1 field over the triangles of `tag` (all triangles if
/// unset): vertex average times area.
double integrate(const Mesh& mesh, std::span<const double> nodal,
                 std::optional<Subdomain> tag = std::nullopt);
double integrate(const FieldSolution& field, std::optional<Subdomain> tag = std::nullopt);

/// Trapezoid rule over the interface edges, reading the copies on `side`.
double integrate_interface(const Mesh& mesh, std::span<const double> nodal, Subdomain side);

/// Degree-5 quadrature of an analytic function.
double integrate(const Mesh& mesh, const ScalarFunction& f,
                 std::optional<Subdomain> tag = std::nullopt);

/// Integral of a P1 field times an analytic weight (degree-5 quadrature).
double integrate_product(const Mesh& mesh, std::span<const double> nodal, const ScalarFunction& f,
                         std::optional<Subdomain> tag = std::nullopt);

/// Exact L2 norm of a P1 field.
double l2_norm(const Mesh& mesh, std::span<const double> nodal,
               std::optional<Subdomain> tag = std::nullopt);

/// L2 distance between a P1 field and an analytic function.
double l2_error(const Mesh& mesh, std::span<const double> nodal, const ScalarFunction& exact,
                std::optional<Subdomain> tag = std::nullopt);

/// Integral of the squared gradient of a P1 field.
double gradient_energy(const Mesh& mesh, std::span<const double> nodal,
                       std::optional<Subdomain> tag = std::nullopt);

/// Integral of every basis function over `tag` (lumped mass).
std::vector<double> basis_integrals(const Mesh& mesh, std::optional<Subdomain> tag = std::nullopt);

/// Nodal interpolant of an analytic function.
std::vector<double> interpolate(const Mesh& mesh, const ScalarFunction& f);

}  // namespace homogflow
