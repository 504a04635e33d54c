#pragma once

#include <string>
#include <vector>

#include "todalab/exact/laurent.hpp"

namespace todalab::exact {

/// Dense matrix of Laurent polynomials. Small sizes only (Leibniz determinant).
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static PolyMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  LaurentPolynomial& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const LaurentPolynomial& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  PolyMatrix& operator+=(const PolyMatrix& o);
  PolyMatrix& operator-=(const PolyMatrix& o);
  friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
  friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const LaurentPolynomial& s, const PolyMatrix& a);
  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

  PolyMatrix map(const std::function<LaurentPolynomial(const LaurentPolynomial&)>& f) const;
  PolyMatrix substitute(const std::map<Symbol, LaurentPolynomial>& values) const;

  /// Leibniz expansion over all permutations.
  LaurentPolynomial determinant() const;

  bool is_zero() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<LaurentPolynomial> data_;
};

}  // namespace todalab::exact
