#pragma once

#include <span>
#include <vector>

#include "homogflow/mesh.hpp"

namespace homogflow {

/// Compressed sparse row matrix with sorted, unique column indices per row.
class CsrMatrix {
 public:
  struct Entry {
    Index row;
    Index col;
    double value;
  };

  CsrMatrix() = default;
  /// Duplicate entries are summed.
  static CsrMatrix from_entries(std::size_t n, std::vector<Entry> entries);

  std::size_t size() const { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  std::size_t nonzeros() const { return values_.size(); }

  void multiply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> operator*(std::span<const double> x) const;
  std::vector<double> diagonal() const;
  /// Stored value, or 0 for a structural zero.
  double value(Index row, Index col) const;
  double max_asymmetry() const;
  double max_abs() const;

  std::span<const Index> row_columns(Index row) const;
  std::span<const double> row_values(Index row) const;

 private:
  std::vector<Index> row_ptr_;
  std::vector<Index> cols_;
  std::vector<double> values_;
};

/// Symmetric system under assembly: entry buffer plus right-hand side.
class SparseSystem {
 public:
  explicit SparseSystem(std::size_t n) : n_(n), rhs_(n, 0.0) {}

  std::size_t size() const { return n_; }
  void add(Index row, Index col, double value) { entries_.push_back({row, col, value}); }
  void add_rhs(Index row, double value) { rhs_[row] += value; }

  const std::vector<CsrMatrix::Entry>& entries() const { return entries_; }
  const std::vector<double>& rhs() const { return rhs_; }
  std::vector<double>& rhs() { return rhs_; }
  CsrMatrix matrix() const { return CsrMatrix::from_entries(n_, entries_); }

 private:
  std::size_t n_;
  std::vector<CsrMatrix::Entry> entries_;
  std::vector<double> rhs_;
};

struct SolverOptions {
  double rel_tol = 1e-10;
  /// 0 selects 20 x (number of unknowns).
  int max_iter = 0;
};

struct SolveStats {
  int iterations = 0;
  double residual = 0.0;  // final relative residual ||b - A x|| / ||b||
};

/// Jacobi-preconditioned conjugate gradients. Throws SolverError on a
/// non-positive diagonal, negative curvature, or when the iteration budget is
/// exhausted (carrying the last relative residual).
std::vector<double> solve_spd(const CsrMatrix& a, std::span<const double> b,
                              const SolverOptions& options = {}, SolveStats* stats = nullptr);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace homogflow
