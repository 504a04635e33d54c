#include "todalab/toda/differential_operator.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "todalab/exact/rational.hpp"

namespace todalab::toda {

using exact::Monomial;

DifferentialOperator::DifferentialOperator(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("DifferentialOperator: n must be >= 1");
}

DifferentialOperator DifferentialOperator::identity(int n) { return multiplication(n, LaurentPolynomial(1L)); }

DifferentialOperator DifferentialOperator::multiplication(int n, const LaurentPolynomial& c) {
  DifferentialOperator op(n);
  op.add_term(DerivativeIndex(n + 1, 0), c);
  return op;
}

DifferentialOperator DifferentialOperator::hbar_d(int n, int i) {
  if (i < 0 || i > n) throw std::out_of_range("hbar_d: index out of range");
  DifferentialOperator op(n);
  DerivativeIndex k(n + 1, 0);
  k[i] = 1;
  op.add_term(k, LaurentPolynomial(1L));
  return op;
}

void DifferentialOperator::add_term(const DerivativeIndex& kappa, const LaurentPolynomial& c) {
  if (static_cast<int>(kappa.size()) != n_ + 1) throw std::invalid_argument("derivative index has wrong length");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(kappa, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

DifferentialOperator& DifferentialOperator::operator+=(const DifferentialOperator& o) {
  if (o.n_ != n_) throw std::invalid_argument("operator size mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

DifferentialOperator& DifferentialOperator::operator-=(const DifferentialOperator& o) {
  if (o.n_ != n_) throw std::invalid_argument("operator size mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

DifferentialOperator operator*(const LaurentPolynomial& c, const DifferentialOperator& a) {
  DifferentialOperator r(a.n_);
  for (const auto& [k, v] : a.terms_) r.add_term(k, c * v);
  return r;
}

LaurentPolynomial DifferentialOperator::order_zero_part() const {
  auto it = terms_.find(DerivativeIndex(n_ + 1, 0));
  return it == terms_.end() ? LaurentPolynomial() : it->second;
}

std::string DifferentialOperator::to_string() const {
  if (terms_.empty()) return "0/1";
  std::vector<const std::pair<const DerivativeIndex, LaurentPolynomial>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* a, auto* b) {
    const int da = std::accumulate(a->first.begin(), a->first.end(), 0);
    const int db = std::accumulate(b->first.begin(), b->first.end(), 0);
    if (da != db) return da > db;
    return a->first > b->first;
  });
  std::string out;
  for (const auto* t : order) {
    if (!out.empty()) out += " + ";
    out += "(" + t->second.to_string() + ")";
    for (std::size_t i = 0; i < t->first.size(); ++i) {
      if (t->first[i] == 0) continue;
      out += " d" + std::to_string(i);
      if (t->first[i] != 1) out += "^" + std::to_string(t->first[i]);
    }
  }
  return out;
}

std::vector<int> q_exponents(const Monomial& m, int n) {
  std::vector<int> e(n + 2, 0);
  for (int j = 1; j <= n; ++j) e[j] = m.exponent(exact::toda_q(j));
  return e;
}

DifferentialOperator compose(const DifferentialOperator& a, const DifferentialOperator& b) {
  if (a.n() != b.n()) throw std::invalid_argument("compose: operator size mismatch");
  const int n = a.n();
  const LaurentPolynomial h = LaurentPolynomial::variable(exact::hbar());
  DifferentialOperator r(n);
  for (const auto& [k1, c1] : a.terms()) {
    for (const auto& [k2, c2] : b.terms()) {
      for (const auto& [mon, coef] : c2.terms()) {
        // (hbar d)^k1 q^m = q^m prod_i (hbar d_i + hbar c_i)^{k1_i}
        const auto m = q_exponents(mon, n);
        std::vector<std::pair<DerivativeIndex, LaurentPolynomial>> expansion{
            {k2, c1 * LaurentPolynomial::monomial(mon, coef)}};
        for (int i = 0; i <= n; ++i) {
          if (k1[i] == 0) continue;
          const int ci = m[i] - m[i + 1];
          std::vector<std::pair<DerivativeIndex, LaurentPolynomial>> next;
          for (const auto& [idx, c] : expansion) {
            for (int s = (ci == 0 ? k1[i] : 0); s <= k1[i]; ++s) {
              Rational factor(exact::binomial(k1[i], s));
              for (int t = 0; t < k1[i] - s; ++t) factor *= ci;
              auto idx2 = idx;
              idx2[i] += s;
              next.emplace_back(idx2, c * h.pow(k1[i] - s) * factor);
            }
          }
          expansion = std::move(next);
        }
        for (const auto& [idx, c] : expansion) r.add_term(idx, c);
      }
    }
  }
  return r;
}

DifferentialOperator commutator(const DifferentialOperator& a, const DifferentialOperator& b) {
  return compose(a, b) - compose(b, a);
}

}  // namespace todalab::toda
