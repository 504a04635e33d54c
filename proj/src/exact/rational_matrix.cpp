#include "todalab/exact/rational_matrix.hpp"

#include <stdexcept>

namespace todalab::exact {

RationalMatrix rational_zero(std::size_t rows, std::size_t cols) {
  return RationalMatrix(rows, std::vector<Rational>(cols, Rational(0)));
}

RationalMatrix rational_product(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.empty()) return {};
  if (a[0].size() != b.size()) throw std::invalid_argument("rational_product: shape mismatch");
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  RationalMatrix r = rational_zero(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

std::optional<RationalMatrix> rational_inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m = a, inv = rational_zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw std::invalid_argument("rational_inverse: not square");
    inv[i][i] = 1;
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && is_zero(m[pivot][c])) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[c]);
    std::swap(inv[pivot], inv[c]);
    const Rational p = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= p;
      inv[c][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(m[r][c])) continue;
      const Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

Rational rational_determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && is_zero(m[pivot][c])) ++pivot;
    if (pivot == n) return Rational(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (is_zero(m[r][c])) continue;
      const Rational f = m[r][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[r][j] -= f * m[c][j];
    }
  }
  return det;
}

}  // namespace todalab::exact
