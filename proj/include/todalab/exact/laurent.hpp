#pragma once

#include <complex>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "todalab/exact/rational.hpp"
#include "todalab/exact/symbol.hpp"

namespace todalab::exact {

/// Product of symbols with nonzero integer exponents, sorted by symbol id.
class Monomial {
 public:
  using Factor = std::pair<Symbol, int>;

  Monomial() = default;
  static Monomial of(Symbol s, int exponent = 1);
  static Monomial from_factors(std::vector<Factor> factors);

  int exponent(Symbol s) const;
  int total_degree() const;
  bool is_one() const { return factors_.empty(); }

  Monomial inverse() const;
  Monomial without(Symbol s) const;
  Monomial pow(int k) const;

  const std::vector<Factor>& factors() const { return factors_; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.factors_ <=> b.factors_; }

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;
};

/// Exact multivariate Laurent polynomial over the rationals. Zero
/// coefficients are never stored.
class LaurentPolynomial {
 public:
  using TermMap = std::map<Monomial, Rational>;

  LaurentPolynomial() = default;
  LaurentPolynomial(const Rational& c);  // NOLINT: constants convert implicitly
  LaurentPolynomial(long c);             // NOLINT
  LaurentPolynomial(int c) : LaurentPolynomial(static_cast<long>(c)) {}  // NOLINT

  static LaurentPolynomial variable(Symbol s, int exponent = 1);
  static LaurentPolynomial monomial(const Monomial& m, const Rational& c = Rational(1));

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_term() const;
  Rational coefficient_of(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);

  LaurentPolynomial& operator+=(const LaurentPolynomial& o);
  LaurentPolynomial& operator-=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const LaurentPolynomial& o);
  LaurentPolynomial& operator*=(const Rational& c);

  friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
  friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
  friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
  friend LaurentPolynomial operator*(LaurentPolynomial a, const Rational& c) { return a *= c; }
  friend LaurentPolynomial operator*(const Rational& c, LaurentPolynomial a) { return a *= c; }
  LaurentPolynomial operator-() const;

  friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) { return a.terms_ == b.terms_; }

  LaurentPolynomial pow(int k) const;
  /// Inverse of a monomial; throws std::domain_error otherwise.
  LaurentPolynomial monomial_inverse() const;

  LaurentPolynomial derivative(Symbol s) const;
  /// Substitute `s := value`. Negative powers of `s` require `value` to be
  /// a monomial.
  LaurentPolynomial substitute(Symbol s, const LaurentPolynomial& value) const;
  LaurentPolynomial substitute(const std::map<Symbol, LaurentPolynomial>& values) const;

  int max_degree(Symbol s) const;
  int min_degree(Symbol s) const;
  /// Coefficient of s^k, with s removed.
  LaurentPolynomial coefficient(Symbol s, int k) const;
  std::set<Symbol> symbols() const;

  template <class T>
  T evaluate(const std::function<T(Symbol)>& value) const {
    T sum{};
    for (const auto& [m, c] : terms_) {
      T term = static_cast<T>(c.get_d());
      for (const auto& [s, e] : m.factors()) {
        const T v = value(s);
        if (e > 0)
          for (int i = 0; i < e; ++i) term *= v;
        else
          for (int i = 0; i < -e; ++i) term /= v;
      }
      sum += term;
    }
    return sum;
  }

  /// Exact evaluation at rational values for every symbol that appears.
  Rational evaluate_exact(const std::map<Symbol, Rational>& values) const;

  /// Canonical text: terms in descending graded-lexicographic order with
  /// variables in natural-name order, coefficients as "num/den".
  std::string to_string() const;

 private:
  TermMap terms_;
};

std::vector<std::pair<Monomial, Rational>> graded_lex_terms(const LaurentPolynomial& p);

}  // namespace todalab::exact
