#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "todalab/exact/laurent.hpp"
#include "todalab/exact/rational.hpp"

namespace todalab::exact {

class ValuationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Truncated Laurent series in hbar with coefficients in a commutative ring C
/// (Rational, LaurentPolynomial or RationalFunction). Coefficients of
/// hbar^k are known for every k <= order(); higher ones are unknown.
template <class C>
class HbarSeries {
 public:
  explicit HbarSeries(int order = 0) : order_(order) {}
  HbarSeries(const C& constant, int order) : order_(order) { set(0, constant); }

  static HbarSeries monomial(const C& c, int exponent, int order) {
    HbarSeries s(order);
    s.set(exponent, c);
    return s;
  }

  int order() const { return order_; }
  const std::map<int, C>& terms() const { return terms_; }

  /// Smallest exponent with a nonzero coefficient; order()+1 for the zero series.
  int valuation() const { return terms_.empty() ? order_ + 1 : terms_.begin()->first; }
  int lowest_exponent() const { return valuation(); }

  C coefficient(int k) const {
    if (k > order_) throw std::out_of_range("coefficient beyond truncation order");
    auto it = terms_.find(k);
    return it == terms_.end() ? C{} : it->second;
  }

  void set(int k, const C& c) {
    if (k > order_) return;
    if (is_zero_coeff(c))
      terms_.erase(k);
    else
      terms_[k] = c;
  }

  bool is_zero() const { return terms_.empty(); }

  HbarSeries truncated(int order) const {
    HbarSeries r(std::min(order, order_));
    for (const auto& [k, c] : terms_)
      if (k <= r.order_) r.terms_.emplace(k, c);
    return r;
  }

  HbarSeries& operator+=(const HbarSeries& o) {
    *this = this->truncated(std::min(order_, o.order_));
    for (const auto& [k, c] : o.terms_)
      if (k <= order_) set(k, coefficient(k) + c);
    return *this;
  }
  HbarSeries operator-() const {
    HbarSeries r(order_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  HbarSeries& operator-=(const HbarSeries& o) { return *this += -o; }
  friend HbarSeries operator+(HbarSeries a, const HbarSeries& b) { return a += b; }
  friend HbarSeries operator-(HbarSeries a, const HbarSeries& b) { return a -= b; }

  /// The product is known through min(va + ob, vb + oa).
  friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
    const int order = std::min(a.valuation() + b.order_, b.valuation() + a.order_);
    HbarSeries r(std::min(order, std::max(a.order_, b.order_)));
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [i, x] : a.terms_)
      for (const auto& [j, y] : b.terms_)
        if (i + j <= r.order_) r.set(i + j, r.coefficient(i + j) + x * y);
    return r;
  }

  HbarSeries scaled(const Rational& s) const {
    HbarSeries r(order_);
    for (const auto& [k, c] : terms_) r.set(k, c * s);
    return r;
  }

  /// f(hbar) -> f(-hbar).
  HbarSeries reflected() const {
    HbarSeries r(order_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, (k % 2 == 0) ? C(c) : C(-c));
    return r;
  }

  bool equals_through(const HbarSeries& o, int order) const {
    for (int k = std::min(valuation(), o.valuation()); k <= order; ++k)
      if (!is_zero_coeff(coefficient(k) - o.coefficient(k))) return false;
    return true;
  }

  friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
    return a.order_ == b.order_ && a.equals_through(b, a.order_);
  }

 private:
  static bool is_zero_coeff(const C& c) {
    if constexpr (std::is_same_v<C, Rational>)
      return exact::is_zero(c);
    else
      return c.is_zero();
  }

  int order_;
  std::map<int, C> terms_;
};

/// exp(a) for a with strictly positive valuation.
template <class C>
HbarSeries<C> series_exp(const HbarSeries<C>& a) {
  if (a.valuation() < 1) throw ValuationError("series_exp needs positive hbar-valuation");
  const int order = a.order();
  HbarSeries<C> result(C(Rational(1)), order);
  HbarSeries<C> power(C(Rational(1)), order);
  for (int k = 1; k * a.valuation() <= order; ++k) {
    power = (power * a).scaled(Rational(1, k));
    result += power;
  }
  return result;
}

/// log(a) for a = 1 + (positive valuation).
template <class C>
HbarSeries<C> series_log(const HbarSeries<C>& a) {
  HbarSeries<C> x = a - HbarSeries<C>(C(Rational(1)), a.order());
  if (x.valuation() < 1) throw ValuationError("series_log needs constant term 1 and no negative powers");
  const int order = a.order();
  HbarSeries<C> result(order), power(C(Rational(1)), order);
  for (int k = 1; k * x.valuation() <= order; ++k) {
    power = power * x;
    result += power.scaled(Rational(k % 2 == 1 ? 1 : -1, k));
  }
  return result;
}

template <class C>
HbarSeries<C> series_mul(const HbarSeries<C>& a, const HbarSeries<C>& b) {
  return a * b;
}

}  // namespace todalab::exact
