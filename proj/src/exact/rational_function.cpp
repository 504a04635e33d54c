#include "todalab/exact/rational_function.hpp"

#include <cmath>
#include <stdexcept>

namespace todalab::exact {
namespace {

LaurentPolynomial from_terms(const LaurentPolynomial::TermMap& t) {
  LaurentPolynomial p;
  for (const auto& [m, c] : t) p.add_term(m, c);
  return p;
}

}  // namespace

RationalFunction::RationalFunction(const LaurentPolynomial& p) { add_part({}, p); }

RationalFunction RationalFunction::fraction(const LaurentPolynomial& numerator, const LaurentPolynomial& factor,
                                            int power) {
  if (factor.is_zero()) throw std::domain_error("division by zero polynomial");
  if (power < 0) throw std::invalid_argument("negative denominator power");
  RationalFunction r;
  if (power == 0) return RationalFunction(numerator);
  if (factor.is_monomial()) {
    r.add_part({}, numerator * factor.pow(-power));
    return r;
  }
  const Rational lead = graded_lex_terms(factor).front().second;
  const LaurentPolynomial normalized = factor * Rational(1 / lead);
  Rational scale(1);
  for (int i = 0; i < power; ++i) scale /= lead;
  r.add_part(Denominator{{normalized.terms(), power}}, numerator * scale);
  return r;
}

void RationalFunction::add_part(const Denominator& d, const LaurentPolynomial& n) {
  if (n.is_zero()) return;
  auto [it, inserted] = parts_.try_emplace(d, n);
  if (!inserted) {
    it->second += n;
    if (it->second.is_zero()) parts_.erase(it);
  }
}

bool RationalFunction::is_zero() const {
  if (parts_.empty()) return true;
  if (parts_.size() == 1) return false;
  return combined().first.is_zero();
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  for (const auto& [d, n] : o.parts_) add_part(d, n);
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) {
  for (const auto& [d, n] : o.parts_) add_part(d, -n);
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r;
  for (const auto& [d, n] : parts_) r.parts_.emplace(d, -n);
  return r;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  RationalFunction r;
  for (const auto& [da, na] : a.parts_)
    for (const auto& [db, nb] : b.parts_) {
      RationalFunction::Denominator d = da;
      for (const auto& [f, p] : db) d[f] += p;
      r.add_part(d, na * nb);
    }
  return r;
}

RationalFunction operator*(const RationalFunction& a, const Rational& c) {
  RationalFunction r;
  for (const auto& [d, n] : a.parts_) r.add_part(d, n * c);
  return r;
}

std::pair<LaurentPolynomial, LaurentPolynomial> RationalFunction::combined() const {
  Denominator lcd;
  for (const auto& [d, n] : parts_)
    for (const auto& [f, p] : d) lcd[f] = std::max(lcd[f], p);
  LaurentPolynomial denominator(1L);
  for (const auto& [f, p] : lcd) denominator *= from_terms(f).pow(p);
  LaurentPolynomial numerator;
  for (const auto& [d, n] : parts_) {
    LaurentPolynomial term = n;
    for (const auto& [f, p] : lcd) {
      auto it = d.find(f);
      const int missing = p - (it == d.end() ? 0 : it->second);
      if (missing > 0) term *= from_terms(f).pow(missing);
    }
    numerator += term;
  }
  return {numerator, denominator};
}

double RationalFunction::evaluate(const std::function<double(Symbol)>& value) const {
  double sum = 0.0;
  for (const auto& [d, n] : parts_) {
    double den = 1.0;
    for (const auto& [f, p] : d) den *= std::pow(from_terms(f).evaluate<double>(value), p);
    sum += n.evaluate<double>(value) / den;
  }
  return sum;
}

std::string RationalFunction::to_string() const {
  if (parts_.empty()) return "0/1";
  std::string out;
  for (const auto& [d, n] : parts_) {
    if (!out.empty()) out += " + ";
    out += "(" + n.to_string() + ")";
    if (d.empty()) continue;
    out += "/(";
    bool first = true;
    for (const auto& [f, p] : d) {
      if (!first) out += "*";
      first = false;
      out += "(" + from_terms(f).to_string() + ")";
      if (p != 1) out += "^" + std::to_string(p);
    }
    out += ")";
  }
  return out;
}

}  // namespace todalab::exact
