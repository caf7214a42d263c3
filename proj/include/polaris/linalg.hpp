#pragma once
/* Dense exact linear algebra over a field K (K needs K(), K(int), +, -, *, /,
   ==).  Pivot choice is first nonzero entry, so results are deterministic. */

#include "polaris/error.hpp"

#include <optional>
#include <vector>

namespace polaris {

template <typename K>
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<std::vector<K>> a;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), a(r, std::vector<K>(c, K())) {}

  K& at(size_t i, size_t j) { return a[i][j]; }
  const K& at(size_t i, size_t j) const { return a[i][j]; }

  static Matrix from_rows(std::vector<std::vector<K>> rs) {
    Matrix m;
    m.rows = rs.size();
    m.cols = rs.empty() ? 0 : rs[0].size();
    for (auto& r : rs)
      if (r.size() != m.cols) fail("InternalError", "ragged matrix rows");
    m.a = std::move(rs);
    return m;
  }
};

/* row echelon in place; returns pivot columns.  When rhs != nullptr it gets the
   same row operations (augmented elimination). */
template <typename K>
std::vector<size_t> row_reduce(Matrix<K>& m, std::vector<K>* rhs = nullptr) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
    size_t sel = row;
    while (sel < m.rows && m.a[sel][col] == K()) ++sel;
    if (sel == m.rows) continue;
    std::swap(m.a[sel], m.a[row]);
    if (rhs) std::swap((*rhs)[sel], (*rhs)[row]);
    K inv = K(1) / m.a[row][col];
    for (size_t j = col; j < m.cols; ++j) m.a[row][j] = m.a[row][j] * inv;
    if (rhs) (*rhs)[row] = (*rhs)[row] * inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.a[i][col] == K()) continue;
      K f = m.a[i][col];
      for (size_t j = col; j < m.cols; ++j) m.a[i][j] = m.a[i][j] - f * m.a[row][j];
      if (rhs) (*rhs)[i] = (*rhs)[i] - f * (*rhs)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename K>
size_t rank(Matrix<K> m) {
  return row_reduce(m).size();
}

template <typename K>
K det(Matrix<K> m) {
  if (m.rows != m.cols) fail("InternalError", "determinant of a non-square matrix");
  K d(1);
  for (size_t col = 0; col < m.cols; ++col) {
    size_t sel = col;
    while (sel < m.rows && m.a[sel][col] == K()) ++sel;
    if (sel == m.rows) return K();
    if (sel != col) {
      std::swap(m.a[sel], m.a[col]);
      d = K() - d;
    }
    d = d * m.a[col][col];
    K inv = K(1) / m.a[col][col];
    for (size_t i = col + 1; i < m.rows; ++i) {
      if (m.a[i][col] == K()) continue;
      K f = m.a[i][col] * inv;
      for (size_t j = col; j < m.cols; ++j) m.a[i][j] = m.a[i][j] - f * m.a[col][j];
    }
  }
  return d;
}

/* unique solution of A x = b; nullopt when the system is inconsistent or
   underdetermined */
template <typename K>
std::optional<std::vector<K>> solve_unique(Matrix<K> m, std::vector<K> b) {
  if (b.size() != m.rows) fail("InternalError", "solve: size mismatch");
  auto pivots = row_reduce(m, &b);
  for (size_t i = pivots.size(); i < m.rows; ++i)
    if (!(b[i] == K())) return std::nullopt; // inconsistent
  if (pivots.size() != m.cols) return std::nullopt; // free variables remain
  std::vector<K> x(m.cols, K());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = b[i];
  return x;
}

/* basis of the null space of A, one vector per non-pivot column */
template <typename K>
std::vector<std::vector<K>> kernel(Matrix<K> m) {
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (size_t c : pivots) is_pivot[c] = true;
  std::vector<std::vector<K>> basis;
  for (size_t free = 0; free < m.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<K> v(m.cols, K());
    v[free] = K(1);
    for (size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = K() - m.a[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

} // namespace polaris
