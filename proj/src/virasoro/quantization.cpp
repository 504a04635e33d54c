#include "todalab/virasoro/quantization.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace todalab::virasoro {

exact::Symbol q_symbol(int N, Index i) {
  if (N == 1) return exact::Symbol("q" + std::to_string(i.m));
  return exact::Symbol("q" + std::to_string(i.m) + "_" + std::to_string(i.alpha));
}

namespace {

std::pair<Index, Index> ordered(Index a, Index b) { return a <= b ? std::pair{a, b} : std::pair{b, a}; }

void accumulate(std::map<std::pair<Index, Index>, Rational>& block, std::pair<Index, Index> key, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = block.try_emplace(key, 0);
  it->second += c;
  if (it->second == 0) block.erase(it);
}

void merge(std::map<std::pair<Index, Index>, Rational>& into, const std::map<std::pair<Index, Index>, Rational>& from,
           const Rational& s) {
  for (const auto& [k, c] : from) accumulate(into, k, s * c);
}

}  // namespace

void QuadraticOperator::add_dd(Index a, Index b, const Rational& c) { accumulate(dd, ordered(a, b), c); }
void QuadraticOperator::add_qd(Index q, Index d, const Rational& c) { accumulate(qd, {q, d}, c); }
void QuadraticOperator::add_qq(Index a, Index b, const Rational& c) { accumulate(qq, ordered(a, b), c); }

QuadraticOperator& QuadraticOperator::operator+=(const QuadraticOperator& o) {
  constant += o.constant;
  merge(dd, o.dd, 1);
  merge(qd, o.qd, 1);
  merge(qq, o.qq, 1);
  return *this;
}

QuadraticOperator& QuadraticOperator::operator-=(const QuadraticOperator& o) {
  constant -= o.constant;
  merge(dd, o.dd, -1);
  merge(qd, o.qd, -1);
  merge(qq, o.qq, -1);
  return *this;
}

QuadraticOperator operator*(const Rational& s, QuadraticOperator a) {
  QuadraticOperator r;
  r.N = a.N;
  r.constant = s * a.constant;
  merge(r.dd, a.dd, s);
  merge(r.qd, a.qd, s);
  merge(r.qq, a.qq, s);
  return r;
}

bool QuadraticOperator::is_zero() const { return constant == 0 && dd.empty() && qd.empty() && qq.empty(); }

QuadraticOperator QuadraticOperator::restricted(int m_max) const {
  QuadraticOperator r;
  r.N = N;
  r.constant = constant;
  auto keep = [m_max](const std::pair<Index, Index>& k) { return k.first.m <= m_max && k.second.m <= m_max; };
  for (const auto& [k, c] : dd)
    if (keep(k)) r.dd.emplace(k, c);
  for (const auto& [k, c] : qd)
    if (keep(k)) r.qd.emplace(k, c);
  for (const auto& [k, c] : qq)
    if (keep(k)) r.qq.emplace(k, c);
  return r;
}

LaurentPolynomial QuadraticOperator::apply(const LaurentPolynomial& p) const {
  const auto eps = LaurentPolynomial::variable(exact::epsilon());
  const auto inv_eps = LaurentPolynomial::variable(exact::epsilon(), -1);
  LaurentPolynomial out = constant * p;
  for (const auto& [k, c] : dd) {
    const auto d = p.derivative(q_symbol(N, k.first)).derivative(q_symbol(N, k.second));
    if (!d.is_zero()) out += c * (eps * d);
  }
  for (const auto& [k, c] : qd) {
    const auto d = p.derivative(q_symbol(N, k.second));
    if (!d.is_zero()) out += c * (LaurentPolynomial::variable(q_symbol(N, k.first)) * d);
  }
  for (const auto& [k, c] : qq)
    out += c * (LaurentPolynomial::variable(q_symbol(N, k.first)) * LaurentPolynomial::variable(q_symbol(N, k.second)) *
                inv_eps * p);
  return out;
}

std::string QuadraticOperator::to_string() const {
  std::ostringstream os;
  auto name = [this](Index i) { return q_symbol(N, i).name(); };
  os << constant.get_str();
  for (const auto& [k, c] : dd) os << " + (" << c.get_str() << ")*eps*d" << name(k.first) << "*d" << name(k.second);
  for (const auto& [k, c] : qd) os << " + (" << c.get_str() << ")*" << name(k.first) << "*d" << name(k.second);
  for (const auto& [k, c] : qq) os << " + (" << c.get_str() << ")*" << name(k.first) << "*" << name(k.second) << "/eps";
  return os.str();
}

namespace {

void check_symplectic(const LoopSpace& space, const LoopOperator& T) {
  const int R = kSymplecticCheckRange;
  for (int k = -R; k <= R; ++k)
    for (int a = 0; a < space.N; ++a) {
      const auto f = LoopElement::basis(space.N, k, a);
      const auto Tf = T(f);
      for (int l = -R; l <= R; ++l)
        for (int b = 0; b < space.N; ++b) {
          const auto g = LoopElement::basis(space.N, l, b);
          const Rational s = omega(space, Tf, g) + omega(space, f, T(g));
          if (s != 0) {
            std::ostringstream os;
            os << "operator is not infinitesimally symplectic: Omega(Tf,g) + Omega(f,Tg) = " << s.get_str()
               << " for f = phi" << a << " hbar^" << k << ", g = phi" << b << " hbar^" << l;
            throw NotSymplecticError(os.str(), k, a, l, b);
          }
        }
    }
}

}  // namespace

QuadraticOperator quantize(const LoopSpace& space, const LoopOperator& T, int window) {
  if (window < 0) throw std::invalid_argument("window must be nonnegative");
  if (T.N != space.N) throw std::invalid_argument("operator and space dimensions differ");
  check_symplectic(space, T);

  struct Coordinate {
    bool momentum;
    Index index;
    LoopElement direction;
  };
  std::vector<Coordinate> coords;
  for (int m = 0; m <= window; ++m)
    for (int a = 0; a < space.N; ++a) {
      coords.push_back({false, {m, a}, q_direction(space, m, a)});
      coords.push_back({true, {m, a}, p_direction(space, m, a)});
    }
  std::vector<LoopElement> images;
  images.reserve(coords.size());
  for (const auto& c : coords) images.push_back(T(c.direction));

  // f -> Omega(f, Tf)/2 on f = sum x_a X_a has x_a x_b coefficient
  // (B_ab + B_ba)/2 for a != b and B_aa/2 on the diagonal.
  QuadraticOperator out;
  out.N = space.N;
  const std::size_t n = coords.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      Rational c = omega(space, coords[a].direction, images[b]);
      if (a != b) c += omega(space, coords[b].direction, images[a]);
      c /= 2;
      if (c == 0) continue;
      const auto& x = coords[a];
      const auto& y = coords[b];
      if (x.momentum && y.momentum)
        out.add_dd(x.index, y.index, c);
      else if (x.momentum)
        out.add_qd(y.index, x.index, c);
      else if (y.momentum)
        out.add_qd(x.index, y.index, c);
      else
        out.add_qq(x.index, y.index, c);
    }
  return out;
}

QuadraticOperator point_virasoro(int m, int window) {
  if (m < -1 || m > 2) throw std::invalid_argument("point_virasoro is tabulated for m = -1..2");
  if (window < m + 2) throw std::invalid_argument("window must be at least m + 2");
  QuadraticOperator L;
  L.N = 1;
  auto half = [](int j) { return exact::make_rational(2 * j + 1, 2); };
  switch (m) {
    case -1:
      L.add_qq({0, 0}, {0, 0}, exact::make_rational(1, 2));
      for (int j = 0; j <= window; ++j) L.add_qd({j + 1, 0}, {j, 0}, 1);
      break;
    case 0:
      for (int j = 0; j <= window; ++j) L.add_qd({j, 0}, {j, 0}, half(j));
      break;
    case 1:
      L.add_dd({0, 0}, {0, 0}, exact::make_rational(1, 8));
      for (int j = 0; j + 1 <= window; ++j) L.add_qd({j, 0}, {j + 1, 0}, half(j) * half(j + 1));
      break;
    case 2:
      // The quantization rule and [L_2, L_{-1}] = 3 L_1 both force 3/8 here; a
      // written value of 3/4 would leave 3/8 q_0 d_1 in that bracket.
      L.add_dd({0, 0}, {1, 0}, exact::make_rational(3, 8));
      for (int j = 0; j + 2 <= window; ++j) L.add_qd({j, 0}, {j + 2, 0}, half(j) * half(j + 1) * half(j + 2));
      break;
  }
  return L;
}

std::vector<LaurentPolynomial> monomial_basis(int M, int degree) {
  std::vector<LaurentPolynomial> out{LaurentPolynomial(1)};
  std::vector<LaurentPolynomial> layer{LaurentPolynomial(1)};
  std::vector<int> last_var{-1};
  for (int d = 1; d <= degree; ++d) {
    std::vector<LaurentPolynomial> next;
    std::vector<int> next_last;
    for (std::size_t i = 0; i < layer.size(); ++i)
      for (int v = std::max(last_var[i], 0); v <= M; ++v) {
        next.push_back(layer[i] * LaurentPolynomial::variable(q_symbol(1, {v, 0})));
        next_last.push_back(v);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
    last_var = std::move(next_last);
  }
  return out;
}

std::string kind_name(CommutatorResidual::Kind k) {
  switch (k) {
    case CommutatorResidual::Kind::Zero: return "zero";
    case CommutatorResidual::Kind::Scalar: return "scalar";
    case CommutatorResidual::Kind::Operator: return "operator";
  }
  return "unknown";
}

namespace {

std::vector<LaurentPolynomial> residuals(int m, int mp, int window, const std::vector<LaurentPolynomial>& basis,
                                         Execution exec) {
  const auto A = point_virasoro(m, window);
  const auto B = point_virasoro(mp, window);
  const auto C = Rational(m - mp) * point_virasoro(m + mp, window);
  std::vector<LaurentPolynomial> out(basis.size());
  auto one = [&](std::size_t i) {
    const auto& P = basis[i];
    out[i] = A.apply(B.apply(P)) - B.apply(A.apply(P)) - C.apply(P);
  };
  const long count = static_cast<long>(basis.size());
  if (exec == Execution::Serial) {
    for (long i = 0; i < count; ++i) one(i);
  } else {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (long i = 0; i < count; ++i) one(i);
  }
  return out;
}

double max_abs_coefficient(const LaurentPolynomial& p) {
  double m = 0;
  for (const auto& [mon, c] : p.terms()) m = std::max(m, std::abs(c.get_d()));
  return m;
}

}  // namespace

CommutatorResidual commutation_check(int m, int m_prime, int M, int degree, Execution exec) {
  if (m < -1 || m > 2 || m_prime < -1 || m_prime > 2) throw std::invalid_argument("m, m' must lie in -1..2");
  if (m + m_prime < -1) throw std::invalid_argument("m + m' must be >= -1");
  if (M < 0 || degree < 0) throw std::invalid_argument("window and degree must be nonnegative");
  CommutatorResidual r;
  r.m = m;
  r.m_prime = m_prime;
  // Test monomials reach q_M, and L_{-1} then produces q_{M+1}; every d index
  // that can act is at most M + 1.
  r.window = M + 2;
  const auto basis = monomial_basis(M, degree);
  r.tested = basis.size();
  const auto res = residuals(m, m_prime, r.window, basis, exec);
  r.window_stable = res == residuals(m, m_prime, r.window + 1, basis, exec);

  std::optional<Rational> scalar;
  for (std::size_t i = 0; i < basis.size() && !scalar; ++i) {
    if (res[i].is_zero()) continue;
    const auto& [mon, c] = *basis[i].terms().begin();
    const Rational cand = res[i].coefficient_of(mon) / c;
    scalar = cand;
  }
  if (!scalar) {
    r.kind = CommutatorResidual::Kind::Zero;
    r.scalar = 0;
    return r;
  }
  r.kind = CommutatorResidual::Kind::Scalar;
  r.scalar = *scalar;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto diff = res[i] - *scalar * basis[i];
    if (diff.is_zero()) continue;
    r.mismatch_norm = std::max(r.mismatch_norm, max_abs_coefficient(diff));
    if (r.kind == CommutatorResidual::Kind::Scalar) {
      r.kind = CommutatorResidual::Kind::Operator;
      r.mismatch = basis[i].to_string() + " -> " + diff.to_string();
    }
  }
  return r;
}

bool family_bracket_holds(const RationalMatrix& mu, const RationalMatrix& rho, int m, int m_prime,
                          const Rational& coefficient, int M) {
  const auto A = family_operator(mu, rho, m);
  const auto B = family_operator(mu, rho, m_prime);
  const auto C = family_operator(mu, rho, m + m_prime);
  const auto bracket = commutator(A, B);
  const int N = A.N;
  for (int k = -M; k <= M; ++k)
    for (int a = 0; a < N; ++a)
      if (!(bracket.on_basis(k, a) - coefficient * C.on_basis(k, a)).is_zero()) return false;
  return true;
}

QuadraticOperator family_virasoro(const LoopSpace& space, const RationalMatrix& mu, const RationalMatrix& rho, int m,
                                  int window) {
  return quantize(space, family_operator(mu, rho, m), window);
}

QuadraticOperator string_operator(const LoopSpace& space, int window) {
  QuadraticOperator L;
  L.N = space.N;
  for (int a = 0; a < space.N; ++a)
    for (int b = a; b < space.N; ++b) L.add_qq({0, a}, {0, b}, a == b ? space.eta[a][a] / 2 : space.eta[a][b]);
  for (int j = 0; j <= window; ++j)
    for (int a = 0; a < space.N; ++a) L.add_qd({j + 1, a}, {j, a}, 1);
  return L;
}

}  // namespace todalab::virasoro
