#include "todalab/exact/poly_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace todalab::exact {

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = LaurentPolynomial(1L);
  return m;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMatrix: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMatrix: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMatrix: shape mismatch in product");
  PolyMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

PolyMatrix operator*(const LaurentPolynomial& s, const PolyMatrix& a) {
  PolyMatrix r = a;
  for (auto& x : r.data_) x = s * x;
  return r;
}

PolyMatrix PolyMatrix::map(const std::function<LaurentPolynomial(const LaurentPolynomial&)>& f) const {
  PolyMatrix r = *this;
  for (auto& x : r.data_) x = f(x);
  return r;
}

PolyMatrix PolyMatrix::substitute(const std::map<Symbol, LaurentPolynomial>& values) const {
  return map([&](const LaurentPolynomial& p) { return p.substitute(values); });
}

LaurentPolynomial PolyMatrix::determinant() const {
  if (rows_ != cols_) throw std::invalid_argument("determinant of non-square matrix");
  std::vector<std::size_t> perm(rows_);
  std::iota(perm.begin(), perm.end(), 0);
  LaurentPolynomial det;
  do {
    // parity by counting inversions
    int inversions = 0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < rows_; ++j)
        if (perm[i] > perm[j]) ++inversions;
    LaurentPolynomial term(inversions % 2 == 0 ? 1L : -1L);
    for (std::size_t i = 0; i < rows_ && !term.is_zero(); ++i) {
      const auto& e = (*this)(i, perm[i]);
      if (e.is_zero())
        term = LaurentPolynomial();
      else
        term *= e;
    }
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const LaurentPolynomial& p) { return p.is_zero(); });
}

std::string PolyMatrix::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

}  // namespace todalab::exact
