#include "todalab/virasoro/loop_space.hpp"

#include <sstream>
#include <stdexcept>

namespace todalab::virasoro {

LoopElement LoopElement::basis(int N, int k, int alpha) {
  LoopElement e(N);
  e.add(k, alpha, 1);
  return e;
}

Rational LoopElement::coefficient(int k, int alpha) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Rational(0) : it->second[alpha];
}

void LoopElement::prune(int k) {
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) return;
  for (const auto& c : it->second)
    if (c != 0) return;
  coeffs_.erase(it);
}

void LoopElement::add(int k, int alpha, const Rational& c) {
  if (alpha < 0 || alpha >= N_) throw std::out_of_range("loop element component out of range");
  if (c == 0) return;
  auto [it, fresh] = coeffs_.try_emplace(k, std::vector<Rational>(N_));
  it->second[alpha] += c;
  prune(k);
}

LoopElement& LoopElement::operator+=(const LoopElement& o) {
  if (o.N_ != N_) throw std::invalid_argument("loop elements of different dimension");
  for (const auto& [k, v] : o.coeffs_)
    for (int a = 0; a < N_; ++a) add(k, a, v[a]);
  return *this;
}

LoopElement& LoopElement::operator-=(const LoopElement& o) {
  if (o.N_ != N_) throw std::invalid_argument("loop elements of different dimension");
  for (const auto& [k, v] : o.coeffs_)
    for (int a = 0; a < N_; ++a) add(k, a, -v[a]);
  return *this;
}

LoopElement operator*(const Rational& c, LoopElement a) {
  if (c == 0) return LoopElement(a.N_);
  for (auto& [k, v] : a.coeffs_)
    for (auto& x : v) x *= c;
  return a;
}

LoopElement LoopElement::reflected() const {
  LoopElement r(N_);
  for (const auto& [k, v] : coeffs_)
    for (int a = 0; a < N_; ++a) r.add(k, a, (k % 2 == 0) ? v[a] : Rational(-v[a]));
  return r;
}

std::string LoopElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : coeffs_)
    for (int a = 0; a < N_; ++a) {
      if (v[a] == 0) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << v[a].get_str() << ")*phi" << a << "*hbar^" << k;
    }
  return os.str();
}

LoopSpace LoopSpace::standard(int N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  LoopSpace s;
  s.N = N;
  s.eta = exact::rational_zero(N, N);
  for (int i = 0; i < N; ++i) s.eta[i][i] = 1;
  s.eta_inverse = s.eta;
  return s;
}

LoopSpace LoopSpace::with_pairing(const RationalMatrix& eta) {
  const int N = static_cast<int>(eta.size());
  if (N < 1) throw std::invalid_argument("empty pairing");
  for (const auto& row : eta)
    if (static_cast<int>(row.size()) != N) throw std::invalid_argument("pairing must be square");
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < i; ++j)
      if (eta[i][j] != eta[j][i]) throw std::invalid_argument("pairing must be symmetric");
  auto inv = exact::rational_inverse(eta);
  if (!inv) throw std::invalid_argument("pairing must be nondegenerate");
  return LoopSpace{N, eta, *inv};
}

Rational omega(const LoopSpace& space, const LoopElement& f, const LoopElement& g) {
  Rational sum = 0;
  for (const auto& [k, fv] : f.coefficients()) {
    auto it = g.coefficients().find(-1 - k);
    if (it == g.coefficients().end()) continue;
    Rational pair = 0;
    for (int a = 0; a < space.N; ++a) {
      if (fv[a] == 0) continue;
      for (int b = 0; b < space.N; ++b) pair += fv[a] * space.eta[a][b] * it->second[b];
    }
    sum += (k % 2 == 0) ? pair : Rational(-pair);
  }
  return sum;
}

LoopElement q_direction(const LoopSpace& space, int m, int alpha) {
  return LoopElement::basis(space.N, m, alpha);
}

LoopElement p_direction(const LoopSpace& space, int m, int alpha) {
  LoopElement e(space.N);
  const Rational sign = (m % 2 == 0) ? -1 : 1;
  for (int b = 0; b < space.N; ++b) e.add(-1 - m, b, sign * space.eta_inverse[b][alpha]);
  return e;
}

LoopElement LoopOperator::operator()(const LoopElement& f) const {
  LoopElement out(N);
  for (const auto& [k, v] : f.coefficients())
    for (int a = 0; a < N; ++a)
      if (v[a] != 0) out += v[a] * on_basis(k, a);
  return out;
}

LoopOperator compose(const LoopOperator& a, const LoopOperator& b) {
  return LoopOperator{a.N, [a, b](int k, int alpha) { return a(b.on_basis(k, alpha)); }};
}

LoopOperator commutator(const LoopOperator& a, const LoopOperator& b) {
  return LoopOperator{a.N, [a, b](int k, int alpha) {
                        return a(b.on_basis(k, alpha)) - b(a.on_basis(k, alpha));
                      }};
}

LoopOperator inverse_hbar(int N) {
  return LoopOperator{N, [N](int k, int alpha) { return LoopElement::basis(N, k - 1, alpha); }};
}

Rational point_coefficient(int m, int k) {
  Rational c = 1;
  for (int j = 1; j <= m + 1; ++j) c *= exact::make_rational(2 * (k + j) - 1, 2);
  return c;
}

LoopOperator point_operator(int N, int m) {
  if (m < -1) throw std::invalid_argument("m must be >= -1");
  return LoopOperator{N, [N, m](int k, int alpha) {
                        LoopElement e(N);
                        e.add(k + m, alpha, point_coefficient(m, k));
                        return e;
                      }};
}

LoopOperator family_operator(const RationalMatrix& mu, const RationalMatrix& rho, int m) {
  if (m < -1) throw std::invalid_argument("m must be >= -1");
  const int N = static_cast<int>(mu.size());
  if (N < 1 || static_cast<int>(rho.size()) != N) throw std::invalid_argument("mu and rho must be N x N");
  for (int i = 0; i < N; ++i)
    if (static_cast<int>(mu[i].size()) != N || static_cast<int>(rho[i].size()) != N)
      throw std::invalid_argument("mu and rho must be N x N");
  return LoopOperator{N, [mu, rho, N, m](int k, int alpha) {
    // Index j below stands for hbar^{j - 1/2}; the leading hbar^{-1/2} puts
    // phi_alpha hbar^k at j = k.
    LoopElement v = LoopElement::basis(N, k, alpha);
    for (int step = 0; step <= m; ++step) {
      LoopElement next(N);
      for (const auto& [j, c] : v.coefficients())
        for (int b = 0; b < N; ++b) {
          if (c[b] == 0) continue;
          // hbar (d/dhbar) hbar on hbar^{j-1/2}
          next.add(j + 1, b, exact::make_rational(2 * j + 1, 2) * c[b]);
          for (int a = 0; a < N; ++a) {
            if (mu[a][b] != 0) next.add(j + 1, a, -mu[a][b] * c[b]);
            if (rho[a][b] != 0) next.add(j, a, rho[a][b] * c[b]);
          }
        }
      v = std::move(next);
    }
    LoopElement out(N);
    for (const auto& [j, c] : v.coefficients())
      for (int a = 0; a < N; ++a) out.add(j - 1, a, c[a]);
    return out;
  }};
}

}  // namespace todalab::virasoro
