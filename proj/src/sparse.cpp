#include "homogflow/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "homogflow/errors.hpp"

namespace homogflow {

CsrMatrix CsrMatrix::from_entries(std::size_t n, std::vector<Entry> entries) {
  for (const auto& e : entries)
    if (e.row < 0 || e.col < 0 || static_cast<std::size_t>(e.row) >= n ||
        static_cast<std::size_t>(e.col) >= n)
      throw ArgumentError("sparse entry out of range");
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CsrMatrix m;
  m.row_ptr_.assign(n + 1, 0);
  m.cols_.reserve(entries.size() / 2);
  m.values_.reserve(entries.size() / 2);
  Index last_row = -1, last_col = -1;
  for (const auto& e : entries) {
    if (e.row == last_row && e.col == last_col) {
      m.values_.back() += e.value;
      continue;
    }
    m.cols_.push_back(e.col);
    m.values_.push_back(e.value);
    ++m.row_ptr_[e.row + 1];
    last_row = e.row;
    last_col = e.col;
  }
  for (std::size_t i = 0; i < n; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
  return m;
}

void CsrMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k] * x[cols_[k]];
    y[i] = s;
  }
}

std::vector<double> CsrMatrix::operator*(std::span<const double> x) const {
  std::vector<double> y(size());
  multiply(x, y);
  return y;
}

std::vector<double> CsrMatrix::diagonal() const {
  std::vector<double> d(size(), 0.0);
  for (std::size_t i = 0; i < size(); ++i) d[i] = value(static_cast<Index>(i), static_cast<Index>(i));
  return d;
}

double CsrMatrix::value(Index row, Index col) const {
  const auto cols = row_columns(row);
  const auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it == cols.end() || *it != col) return 0.0;
  return values_[row_ptr_[row] + (it - cols.begin())];
}

double CsrMatrix::max_asymmetry() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < size(); ++i)
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
      worst = std::max(worst, std::abs(values_[k] - value(cols_[k], static_cast<Index>(i))));
  return worst;
}

double CsrMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::span<const Index> CsrMatrix::row_columns(Index row) const {
  return {cols_.data() + row_ptr_[row], static_cast<std::size_t>(row_ptr_[row + 1] - row_ptr_[row])};
}

std::span<const double> CsrMatrix::row_values(Index row) const {
  return {values_.data() + row_ptr_[row],
          static_cast<std::size_t>(row_ptr_[row + 1] - row_ptr_[row])};
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> solve_spd(const CsrMatrix& a, std::span<const double> b,
                              const SolverOptions& options, SolveStats* stats) {
  const std::size_t n = a.size();
  if (b.size() != n) throw ArgumentError("right-hand side size does not match the matrix");
  std::vector<double> x(n, 0.0);
  const double bnorm = std::sqrt(dot(b, b));
  if (stats) *stats = {};
  if (n == 0 || bnorm == 0.0) return x;

  std::vector<double> inv_diag = a.diagonal();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(inv_diag[i] > 0.0))
      throw SolverError("matrix has a non-positive diagonal entry at row " + std::to_string(i),
                        1.0, 0);
    inv_diag[i] = 1.0 / inv_diag[i];
  }

  const int max_iter = options.max_iter > 0 ? options.max_iter : static_cast<int>(20 * n);
  const double target = options.rel_tol * bnorm;
  std::vector<double> r(b.begin(), b.end()), z(n), p(n), q(n);
  auto precondition = [&] {
    for (std::size_t i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  };
  precondition();
  p = z;
  double rz = dot(r, z);
  double rnorm = bnorm;
  int it = 0;
  while (it < max_iter) {
    a.multiply(p, q);
    const double curvature = dot(p, q);
    if (!(curvature > 0.0))
      throw SolverError("negative curvature: matrix is not positive definite", rnorm / bnorm, it);
    const double step = rz / curvature;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += step * p[i];
      r[i] -= step * q[i];
    }
    ++it;
    rnorm = std::sqrt(dot(r, r));
    if (rnorm <= target) {
      // confirm with the true residual; restart from it if the recurrence drifted
      a.multiply(x, q);
      for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - q[i];
      rnorm = std::sqrt(dot(r, r));
      if (rnorm <= target) break;
      precondition();
      p = z;
      rz = dot(r, z);
      continue;
    }
    precondition();
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  if (stats) *stats = {it, rnorm / bnorm};
  if (!(rnorm <= target)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "CG did not converge in %d iterations (relative residual %.3e)",
                  it, rnorm / bnorm);
    throw SolverError(buf, rnorm / bnorm, it);
  }
  return x;
}

}  // namespace homogflow
