#include "threefold/linalg.hpp"

#include <algorithm>

namespace threefold {
namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(pivot, j), m(row, j));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Rational factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) -= factor * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename T>
std::vector<T> berkowitz(const Matrix<T>& a) {
  if (!a.square()) throw DimensionError("characteristic polynomial needs a square matrix");
  const std::size_t n = a.rows();
  // High-to-low coefficients of the leading principal minors' characteristic polynomials.
  std::vector<T> poly{T(1)};
  for (std::size_t r = 0; r < n; ++r) {
    // Column of the Toeplitz factor: 1, -a_rr, -R C, -R M C, ...
    std::vector<T> t(r + 2);
    t[0] = T(1);
    t[1] = -a(r, r);
    std::vector<T> v(r);  // M^k C
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 2; k < r + 2; ++k) {
      T s = 0;
      for (std::size_t i = 0; i < r; ++i) s += a(r, i) * v[i];
      t[k] = -s;
      std::vector<T> next(r);
      for (std::size_t i = 0; i < r; ++i) {
        T acc = 0;
        for (std::size_t j = 0; j < r; ++j) acc += a(i, j) * v[j];
        next[i] = acc;
      }
      v = std::move(next);
    }
    std::vector<T> q(r + 2);
    for (std::size_t i = 0; i < r + 2; ++i) {
      T acc = 0;
      for (std::size_t j = 0; j <= std::min(i, r); ++j) acc += t[i - j] * poly[j];
      q[i] = acc;
    }
    poly = std::move(q);
  }
  std::reverse(poly.begin(), poly.end());
  return poly;
}

}  // namespace

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
  return out;
}

IntegerMatrix to_integer(const RationalMatrix& m) {
  IntegerMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = to_integer(m(i, j));
  return out;
}

Rational determinant(const RationalMatrix& m) {
  if (!m.square()) throw DimensionError("determinant needs a square matrix");
  RationalMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col).is_zero()) continue;
      const Rational factor = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= factor * a(col, j);
    }
  }
  return det;
}

Integer determinant(const IntegerMatrix& m) {
  if (!m.square()) throw DimensionError("determinant needs a square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntegerMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a(swap_row, k).is_zero()) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::size_t rank(const RationalMatrix& m) {
  RationalMatrix a = m;
  return row_reduce(a).size();
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (!m.square()) throw DimensionError("inverse needs a square matrix");
  const std::size_t n = m.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const auto pivots = row_reduce(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<RationalVector> null_space(const RationalMatrix& m) {
  RationalMatrix a = m;
  const auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Integer> characteristic_polynomial(const IntegerMatrix& m) { return berkowitz(m); }

std::vector<Rational> characteristic_polynomial(const RationalMatrix& m) { return berkowitz(m); }

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw DimensionError("dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace threefold
