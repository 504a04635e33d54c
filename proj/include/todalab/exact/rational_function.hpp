#pragma once

#include <functional>
#include <map>
#include <string>

#include "todalab/exact/laurent.hpp"

namespace todalab::exact {

/// Sum of fractions N/D where every D is a product of powers of normalized
/// non-monomial polynomial factors (in practice linear forms in lambda).
/// Monomial denominators are absorbed into the Laurent numerators.
class RationalFunction {
 public:
  /// factor (normalized so its leading graded-lex coefficient is 1) -> power
  using Denominator = std::map<LaurentPolynomial::TermMap, int>;

  RationalFunction() = default;
  RationalFunction(const Rational& c) : RationalFunction(LaurentPolynomial(c)) {}  // NOLINT
  RationalFunction(const LaurentPolynomial& p);                                  // NOLINT

  /// numerator / factor^power
  static RationalFunction fraction(const LaurentPolynomial& numerator, const LaurentPolynomial& factor, int power = 1);

  const std::map<Denominator, LaurentPolynomial>& parts() const { return parts_; }

  bool is_zero() const;

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction operator-() const;
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const Rational& c);

  /// Single fraction over the least common denominator.
  std::pair<LaurentPolynomial, LaurentPolynomial> combined() const;

  double evaluate(const std::function<double(Symbol)>& value) const;

  std::string to_string() const;

 private:
  void add_part(const Denominator& d, const LaurentPolynomial& n);
  std::map<Denominator, LaurentPolynomial> parts_;
};

}  // namespace todalab::exact
