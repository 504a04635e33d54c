#include "todalab/toda/toda.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace todalab::toda {

using exact::PolyMatrix;

exact::PolyMatrix build_toda_matrix(int n) {
  if (n < 1) throw std::invalid_argument("build_toda_matrix: n must be >= 1");
  PolyMatrix a(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    a(i, i) = LaurentPolynomial::variable(exact::toda_p(i));
    if (i < n) {
      a(i, i + 1) = LaurentPolynomial::variable(exact::toda_q(i + 1));
      a(i + 1, i) = LaurentPolynomial(-1L);
    }
  }
  return a;
}

std::vector<LaurentPolynomial> toda_polynomials(int n) {
  if (n < 1) throw std::invalid_argument("toda_polynomials: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::vector<LaurentPolynomial>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  const auto x = LaurentPolynomial::variable(exact::char_x());
  PolyMatrix m = build_toda_matrix(n);
  for (int i = 0; i <= n; ++i) m(i, i) += x;
  const LaurentPolynomial det = m.determinant();
  std::vector<LaurentPolynomial> d;
  for (int i = 1; i <= n + 1; ++i) d.push_back(det.coefficient(exact::char_x(), n + 1 - i));
  std::lock_guard lock(mutex);
  cache.emplace(n, d);
  return d;
}

namespace {

DifferentialOperator quantize_commutative(int n, const LaurentPolynomial& poly) {
  DifferentialOperator op(n);
  for (const auto& [mon, c] : poly.terms()) {
    DerivativeIndex kappa(n + 1, 0);
    std::vector<exact::Monomial::Factor> rest;
    for (const auto& [s, e] : mon.factors()) {
      bool is_p = false;
      for (int i = 0; i <= n; ++i)
        if (s == exact::toda_p(i)) {
          if (e < 0) throw std::logic_error("negative momentum power");
          kappa[i] = e;
          is_p = true;
        }
      if (!is_p) rest.emplace_back(s, e);
    }
    op.add_term(kappa, LaurentPolynomial::monomial(exact::Monomial::from_factors(rest), c));
  }
  return op;
}

}  // namespace

std::vector<DifferentialOperator> toda_operators(int n) {
  std::vector<DifferentialOperator> ops;
  for (const auto& p : toda_polynomials(n)) ops.push_back(quantize_commutative(n, p));
  return ops;
}

DifferentialOperator build_hamiltonian(int n) {
  DifferentialOperator h(n);
  for (int i = 0; i <= n; ++i) {
    DerivativeIndex k(n + 1, 0);
    k[i] = 2;
    h.add_term(k, LaurentPolynomial(Rational(1, 2)));
  }
  LaurentPolynomial pot;
  for (int i = 1; i <= n; ++i) pot -= LaurentPolynomial::variable(exact::toda_q(i));
  h.add_term(DerivativeIndex(n + 1, 0), pot);
  return h;
}

std::vector<std::complex<double>> evaluate_toda_polynomials(int n, const std::vector<std::complex<double>>& p,
                                                            const std::vector<std::complex<double>>& q) {
  if (static_cast<int>(p.size()) != n + 1 || static_cast<int>(q.size()) != n)
    throw std::invalid_argument("evaluate_toda_polynomials: wrong argument sizes");
  std::map<exact::Symbol, std::complex<double>> values;
  for (int i = 0; i <= n; ++i) values[exact::toda_p(i)] = p[i];
  for (int i = 1; i <= n; ++i) values[exact::toda_q(i)] = q[i - 1];
  const std::function<std::complex<double>(exact::Symbol)> lookup = [&](exact::Symbol s) {
    auto it = values.find(s);
    if (it == values.end()) throw std::invalid_argument("unexpected symbol " + s.name());
    return it->second;
  };
  std::vector<std::complex<double>> out;
  for (const auto& d : toda_polynomials(n)) out.push_back(d.evaluate(lookup));
  return out;
}

}  // namespace todalab::toda
