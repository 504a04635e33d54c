#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "todalab/exact/laurent.hpp"
#include "todalab/parallel.hpp"
#include "todalab/virasoro/loop_space.hpp"

namespace todalab::virasoro {

using exact::LaurentPolynomial;

/// Coordinate q_m^alpha (or p_m^alpha).
struct Index {
  int m = 0;
  int alpha = 0;
  friend auto operator<=>(const Index&, const Index&) = default;
};

/// "q{m}" when N = 1, otherwise "q{m}_{alpha}".
exact::Symbol q_symbol(int N, Index i);

/// c + sum eps a d_i d_j + sum b q_i d_j + sum c q_i q_j / eps. Symmetric
/// blocks are stored once with i <= j.
struct QuadraticOperator {
  int N = 1;
  Rational constant;
  std::map<std::pair<Index, Index>, Rational> dd;
  std::map<std::pair<Index, Index>, Rational> qd;  // (q index, d index)
  std::map<std::pair<Index, Index>, Rational> qq;

  void add_dd(Index a, Index b, const Rational& c);
  void add_qd(Index q, Index d, const Rational& c);
  void add_qq(Index a, Index b, const Rational& c);

  QuadraticOperator& operator+=(const QuadraticOperator& o);
  QuadraticOperator& operator-=(const QuadraticOperator& o);
  friend QuadraticOperator operator-(QuadraticOperator a, const QuadraticOperator& b) { return a -= b; }
  friend QuadraticOperator operator*(const Rational& s, QuadraticOperator a);
  friend bool operator==(const QuadraticOperator&, const QuadraticOperator&) = default;
  bool is_zero() const;

  /// Terms whose indices all lie at or below m_max.
  QuadraticOperator restricted(int m_max) const;

  /// Exact action on a polynomial in the q symbols (coefficients may involve eps).
  LaurentPolynomial apply(const LaurentPolynomial& p) const;
  std::string to_string() const;
};

class NotSymplecticError : public std::invalid_argument {
 public:
  NotSymplecticError(const std::string& what, int k1, int a1, int k2, int a2)
      : std::invalid_argument(what), basis{k1, a1, k2, a2} {}
  std::vector<int> basis;  // hbar powers and components of the violating pair
};

/// Max |hbar exponent| over which infinitesimal symplecticity is checked.
inline constexpr int kSymplecticCheckRange = 6;

/// Quantization of T through f -> Omega(f, T f)/2 on the Darboux coordinates
/// with m <= window, using p_i p_j -> eps d_i d_j, p_i q_j -> q_j d_i,
/// q_i q_j -> q_i q_j / eps.
QuadraticOperator quantize(const LoopSpace& space, const LoopOperator& T, int window);

/// The point-case operators L_{-1}..L_2 written out term by term, d-indices up to window.
QuadraticOperator point_virasoro(int m, int window);

/// Monomials of total degree <= degree in q_0..q_M (one-dimensional H).
std::vector<LaurentPolynomial> monomial_basis(int M, int degree);

struct CommutatorResidual {
  enum class Kind { Zero, Scalar, Operator };
  int m = 0, m_prime = 0;
  int window = 0;
  Kind kind = Kind::Operator;
  Rational scalar;           // residual = scalar * P for every test monomial P
  std::size_t tested = 0;    // number of monomials
  bool window_stable = false;  // unchanged when the window grows by one
  double mismatch_norm = 0;  // max |coefficient| of residual - scalar * P
  std::string mismatch;      // first offending residual, for Kind::Operator
};

std::string kind_name(CommutatorResidual::Kind k);

/// [L_m, L_m'] P - (m - m') L_{m+m'} P over the monomial basis.
CommutatorResidual commutation_check(int m, int m_prime, int M = 4, int degree = 3, Execution exec = Execution::Parallel);

/// Unquantized bracket check on phi_alpha hbar^k for |k| <= M:
/// [L_m, L_m'] - coefficient * L_{m+m'} vanishes on every basis vector.
bool family_bracket_holds(const RationalMatrix& mu, const RationalMatrix& rho, int m, int m_prime,
                          const Rational& coefficient, int M = 6);

/// Quantization of hbar^{-1/2} (D - mu hbar + rho)^{m+1} hbar^{-1/2} on the
/// given space. Throws NotSymplecticError unless mu and rho are compatible
/// with the pairing.
QuadraticOperator family_virasoro(const LoopSpace& space, const RationalMatrix& mu, const RationalMatrix& rho,
                                  int m, int window);

/// Quantized string operator of a space with pairing eta:
/// sum eta_ab q_0^a q_0^b / 2 eps + sum q_{m+1}^a d_m^a.
QuadraticOperator string_operator(const LoopSpace& space, int window);

}  // namespace todalab::virasoro
