#pragma once

#include <array>
#include <functional>
#include <span>

#include "homogflow/coefficients.hpp"
#include "homogflow/mesh.hpp"
#include "homogflow/sparse.hpp"

namespace homogflow {

using ScalarFunction = std::function<double(Point)>;

/// Gradients of the three P1 basis functions of a triangle.
std::array<Vec2, 3> p1_gradients(const Mesh& mesh, const Triangle& t);

/// Adds scale * int_{tag} K grad(phi_i) . grad(phi_j), with K taken at each
/// triangle centroid (pulled back to the reference cell).
void assemble_stiffness(const Mesh& mesh, const CoefficientField& coeff, Subdomain tag,
                        double scale, SparseSystem& system);

enum class InterfaceTerm {
  /// scale * int_Gamma h (u - v)(phi - psi): couples both copies.
  jump,
  /// scale * int_Gamma h v psi on the block copies only (Robin term).
  block_side,
};

/// Two-point Gauss per interface edge, h pulled back to the reference cell.
/// Throws TopologyError if an edge's duplicates are missing from `pairs`.
void assemble_interface_mass(const Mesh& mesh, const CoefficientField& h,
                             std::span<const InterfacePair> pairs, double scale,
                             SparseSystem& system, InterfaceTerm term = InterfaceTerm::jump);

/// Adds scale * int_{tag} f phi_i to the right-hand side (degree-5 rule).
void assemble_load(const Mesh& mesh, const ScalarFunction& f, Subdomain tag, double scale,
                   SparseSystem& system);

/// Adds -int_{tag} (K d) . grad(phi_i) to the right-hand side.
void assemble_gradient_load(const Mesh& mesh, const CoefficientField& coeff, Vec2 direction,
                            Subdomain tag, SparseSystem& system);

}  // namespace homogflow
