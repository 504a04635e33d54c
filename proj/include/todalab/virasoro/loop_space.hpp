#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "todalab/exact/rational_matrix.hpp"

namespace todalab::virasoro {

using exact::Rational;
using exact::RationalMatrix;

/// Element of H((hbar)) with H = Q^N: hbar exponent -> coefficient vector.
class LoopElement {
 public:
  explicit LoopElement(int N = 1) : N_(N) {}
  static LoopElement basis(int N, int k, int alpha);

  int dim() const { return N_; }
  const std::map<int, std::vector<Rational>>& coefficients() const { return coeffs_; }
  Rational coefficient(int k, int alpha) const;
  void add(int k, int alpha, const Rational& c);

  LoopElement& operator+=(const LoopElement& o);
  LoopElement& operator-=(const LoopElement& o);
  friend LoopElement operator+(LoopElement a, const LoopElement& b) { return a += b; }
  friend LoopElement operator-(LoopElement a, const LoopElement& b) { return a -= b; }
  friend LoopElement operator*(const Rational& c, LoopElement a);
  friend bool operator==(const LoopElement& a, const LoopElement& b) { return a.N_ == b.N_ && a.coeffs_ == b.coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// f(-hbar)
  LoopElement reflected() const;
  std::string to_string() const;

 private:
  void prune(int k);
  int N_;
  std::map<int, std::vector<Rational>> coeffs_;
};

/// H with a symmetric nondegenerate pairing eta.
struct LoopSpace {
  int N = 1;
  RationalMatrix eta;
  RationalMatrix eta_inverse;

  static LoopSpace standard(int N);
  /// Throws std::invalid_argument unless eta is symmetric and invertible.
  static LoopSpace with_pairing(const RationalMatrix& eta);
};

/// Omega(f, g) = Res_hbar (f(-hbar), g(hbar)) = sum_k (-1)^k f_k^t eta g_{-1-k}
Rational omega(const LoopSpace& space, const LoopElement& f, const LoopElement& g);

/// Darboux basis: q_m^alpha is the coefficient of phi_alpha hbar^m (m >= 0) and
/// p_m^alpha pairs with it, sitting at hbar^{-1-m} with sign (-1)^{m+1}.
LoopElement q_direction(const LoopSpace& space, int m, int alpha);
LoopElement p_direction(const LoopSpace& space, int m, int alpha);

/// Linear operator on H((hbar)) given by its action on phi_alpha hbar^k.
struct LoopOperator {
  int N = 1;
  std::function<LoopElement(int k, int alpha)> on_basis;

  LoopElement operator()(const LoopElement& f) const;
};

LoopOperator compose(const LoopOperator& a, const LoopOperator& b);
LoopOperator commutator(const LoopOperator& a, const LoopOperator& b);

/// Multiplication by 1/hbar.
LoopOperator inverse_hbar(int N);

/// D_m = hbar^{-1/2} D^{m+1} hbar^{-1/2}, D = hbar (d/dhbar) hbar, acting diagonally on H.
LoopOperator point_operator(int N, int m);

/// hbar^{-1/2} (D - mu hbar + rho)^{m+1} hbar^{-1/2}, expanded one factor at a time.
LoopOperator family_operator(const RationalMatrix& mu, const RationalMatrix& rho, int m);

/// c_m(k) = prod_{j=1}^{m+1} (k + j - 1/2), so that D_m hbar^k = c_m(k) hbar^{k+m}.
Rational point_coefficient(int m, int k);

}  // namespace todalab::virasoro
