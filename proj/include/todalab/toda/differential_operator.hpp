#pragma once

#include <map>
#include <string>
#include <vector>

#include "todalab/exact/laurent.hpp"

namespace todalab::toda {

using exact::LaurentPolynomial;
using exact::Rational;

/// Exponents kappa_0..kappa_n of (hbar d/dt_i).
using DerivativeIndex = std::vector<int>;

/// Normal-ordered operator sum_kappa c_kappa(q, lambda, hbar) o prod_i (hbar d/dt_i)^kappa_i
/// acting on functions of t_0..t_n, where q_i = exp(t_i - t_{i-1}).
class DifferentialOperator {
 public:
  explicit DifferentialOperator(int n = 1);

  static DifferentialOperator identity(int n);
  static DifferentialOperator multiplication(int n, const LaurentPolynomial& c);
  /// hbar d/dt_i
  static DifferentialOperator hbar_d(int n, int i);

  int n() const { return n_; }
  const std::map<DerivativeIndex, LaurentPolynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const DerivativeIndex& kappa, const LaurentPolynomial& c);

  DifferentialOperator& operator+=(const DifferentialOperator& o);
  DifferentialOperator& operator-=(const DifferentialOperator& o);
  friend DifferentialOperator operator+(DifferentialOperator a, const DifferentialOperator& b) { return a += b; }
  friend DifferentialOperator operator-(DifferentialOperator a, const DifferentialOperator& b) { return a -= b; }
  friend DifferentialOperator operator*(const LaurentPolynomial& c, const DifferentialOperator& a);
  friend bool operator==(const DifferentialOperator&, const DifferentialOperator&) = default;

  /// Terms with no derivatives.
  LaurentPolynomial order_zero_part() const;

  /// Canonical text "coef d0^a d1^b ..." per term, highest derivative order first.
  std::string to_string() const;

 private:
  int n_;
  std::map<DerivativeIndex, LaurentPolynomial> terms_;
};

/// Normal-ordered product a o b.
DifferentialOperator compose(const DifferentialOperator& a, const DifferentialOperator& b);
DifferentialOperator commutator(const DifferentialOperator& a, const DifferentialOperator& b);

/// Exponent vector of q_1..q_n in a monomial, padded with zeros at both ends
/// (index 0 and n+1) so that d/dt_i q^m = (m_i - m_{i+1}) q^m.
std::vector<int> q_exponents(const exact::Monomial& m, int n);

}  // namespace todalab::toda
