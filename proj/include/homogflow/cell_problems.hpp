#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "homogflow/coefficients.hpp"
#include "homogflow/field.hpp"
#include "homogflow/mesh.hpp"
#include "homogflow/sparse.hpp"

namespace homogflow {

/// Permeabilities of the matrix (A) and block (B), and the interface
/// permeability h. All Y-periodic, given on the reference cell.
struct CellCoefficients {
  CoefficientField A = CoefficientField::scalar(1.0);
  CoefficientField B = CoefficientField::scalar(1.0);
  CoefficientField h = CoefficientField::scalar(1.0);

  std::string describe() const;
};

/// Everything the macroscopic problem needs from the cell.
struct HomogenizedData {
  Mat2 A_h;
  /// Interface integral of the block potential alpha.
  double alpha_hat = 0.0;
  /// Block integral of alpha; G = alpha_bulk * f2.
  double alpha_bulk = 0.0;
  double y1_volume = 0.0;
  /// Hash of `geometry` + `coefficients`.
  std::string fingerprint;
  std::string geometry;
  std::string coefficients;
  int resolution = 0;

  friend bool operator==(const HomogenizedData&, const HomogenizedData&) = default;
};

struct CellSolution {
  std::array<FieldSolution, 2> omega;
  /// Absent when the cell has no block.
  std::optional<FieldSolution> alpha;
};

struct AlphaFunctionals {
  double alpha_hat = 0.0;
  double alpha_bulk = 0.0;
  double y1_volume = 0.0;
};

/// Periodic, zero-mean corrector on the matrix part of the cell:
///   int_{Y1} A grad(w_j) . grad(z) = -int_{Y1} A e_j . grad(z)
/// with the natural condition on the interface. `direction` is 0 or 1.
FieldSolution solve_corrector(int direction, std::shared_ptr<const Mesh> mesh,
                              const PeriodicMap& periodic, const CoefficientField& A,
                              const SolverOptions& options = {});

/// Energy form a_ij = int_{Y1} A (grad w_i + e_i) . (grad w_j + e_j).
/// Throws ArgumentError if the correctors live on different meshes.
Mat2 homogenized_tensor(const FieldSolution& omega0, const FieldSolution& omega1,
                        const CoefficientField& A);

/// Flux form int_{Y1} A (grad w_j + e_j) . e_i; equal to the energy form when
/// the correctors solve their cell problems.
Mat2 flux_form_tensor(const FieldSolution& omega0, const FieldSolution& omega1,
                      const CoefficientField& A);

/// Block potential:  -div(B grad alpha) = 1 in Y2,  B grad alpha . nu = h alpha
/// on Gamma, with nu pointing into the block. In weak form
///   int_{Y2} B grad(alpha) . grad(z) + int_Gamma h alpha z = int_{Y2} z.
/// Throws GeometryError for a cell without a block.
FieldSolution solve_alpha(std::shared_ptr<const Mesh> mesh, const CoefficientField& B,
                          const CoefficientField& h, const SolverOptions& options = {});

/// alpha_hat = int_Gamma alpha, alpha_bulk = int_{Y2} alpha, y1_volume = |Y1|.
AlphaFunctionals alpha_functionals(const FieldSolution& alpha);

std::string cell_fingerprint(const CellGeometry& geom, const CellCoefficients& coeffs);

struct CellResult {
  std::shared_ptr<const Mesh> mesh;
  PeriodicMap periodic;
  CellSolution solution;
  HomogenizedData data;
};

/// Meshes the cell and runs the two corrector solves and the alpha solve
/// (concurrently, up to worker_count()).
CellResult solve_cell_problems(const CellGeometry& geom, const CellCoefficients& coeffs,
                               const SolverOptions& options = {});

}  // namespace homogflow
