#pragma once

#include <stdexcept>
#include <vector>

#include "toruslab/rational.hpp"

namespace tlab {

// Dense rational matrices, row-major. Small sizes only; everything exact.
using VecQ = std::vector<BigRational>;
using MatQ = std::vector<VecQ>;

inline MatQ matq_zero(size_t r, size_t c) { return MatQ(r, VecQ(c, BigRational(0))); }

inline MatQ matq_identity(size_t n) {
  MatQ m = matq_zero(n, n);
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline MatQ matq_mul(const MatQ& a, const MatQ& b) {
  size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  if (!a.empty() && a[0].size() != k) throw std::invalid_argument("matq_mul shape");
  MatQ out = matq_zero(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < c; ++j) out[i][j] += a[i][t] * b[t][j];
    }
  return out;
}

inline VecQ matq_apply(const MatQ& a, const VecQ& v) {
  VecQ out(a.size(), BigRational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j)
      if (a[i][j] != 0 && v[j] != 0) out[i] += a[i][j] * v[j];
  return out;
}

inline BigRational matq_det(MatQ m) {
  size_t n = m.size();
  if (n == 0) return BigRational(1);
  if (m[0].size() != n) throw std::invalid_argument("matq_det: not square");
  BigRational det(1);
  for (size_t col = 0; col < n; ++col) {
    size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return BigRational(0);
    if (piv != col) { std::swap(m[piv], m[col]); det = -det; }
    det *= m[col][col];
    BigRational inv = BigRational(1) / m[col][col];
    for (size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      BigRational f = m[r][col] * inv;
      for (size_t c = col; c < n; ++c) m[r][c] -= f * m[col][c];
    }
  }
  return det;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<size_t> matq_rref(MatQ& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  size_t rows = m.size(), cols = m[0].size(), row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t piv = row;
    while (piv < rows && m[piv][col] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[row]);
    BigRational inv = BigRational(1) / m[row][col];
    for (size_t c = col; c < cols; ++c) m[row][c] *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col] == 0) continue;
      BigRational f = m[r][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row, VecQ(cols, BigRational(0)));
  return pivots;
}

// Basis of the right null space of m (as rows of the result).
inline MatQ matq_nullspace(MatQ m) {
  if (m.empty()) return {};
  size_t cols = m[0].size();
  std::vector<size_t> pivots = matq_rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : pivots) is_pivot[p] = true;
  MatQ basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    VecQ v(cols, BigRational(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline size_t matq_rank(MatQ m) { return matq_rref(m).size(); }

inline MatQ matq_inverse(const MatQ& a) {
  size_t n = a.size();
  if (n == 0 || a[0].size() != n) throw std::invalid_argument("matq_inverse shape");
  MatQ aug = matq_zero(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  std::vector<size_t> piv = matq_rref(aug);
  if (piv.size() != n || piv.back() != n - 1)
    throw std::invalid_argument("matq_inverse: singular matrix");
  MatQ out = matq_zero(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

// True iff the row spans of a and b coincide.
inline bool matq_same_rowspan(MatQ a, MatQ b) {
  MatQ ra = a, rb = b;
  matq_rref(ra);
  matq_rref(rb);
  if (ra.size() != rb.size()) return false;
  MatQ stacked = ra;
  for (auto& row : rb) stacked.push_back(row);
  return matq_rank(std::move(stacked)) == ra.size();
}

}  // namespace tlab
