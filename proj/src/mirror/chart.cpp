#include "todalab/mirror/chart.hpp"

#include <algorithm>
#include <set>

#include "todalab/exact/rational_matrix.hpp"

namespace todalab::mirror {

using exact::RationalMatrix;

namespace {

LaurentPolynomial lam(int i) { return LaurentPolynomial::variable(exact::lambda(i)); }

// Index m when p == lambda_m exactly, otherwise -1.
int single_lambda_index(const LaurentPolynomial& p, int n) {
  for (int m = 0; m <= n; ++m)
    if (p == lam(m)) return m;
  return -1;
}

}  // namespace

const LaurentPolynomial& SigmaChart::rho(int i, int j) const {
  if (i < 1 || i > n_ + 1 || j < -1 || j > n_ - i + 1) throw std::out_of_range("rho index out of range");
  return rho_[i - 1][j + 1];
}

const LaurentPolynomial& SigmaChart::exponent(int i, int j) const { return exponents_.at({i, j}); }

std::vector<LaurentPolynomial> SigmaChart::exponents() const {
  std::vector<LaurentPolynomial> out;
  for (const auto& v : variables_) out.push_back(exponent(v.i, v.j));
  return out;
}

PhaseExpression SigmaChart::phase() const {
  PhaseExpression f;
  for (const auto& v : variables_) {
    f.exponential += LaurentPolynomial::variable(v.symbol);
    const auto& c = exponent(v.i, v.j);
    if (!c.is_zero()) f.log_terms[v.symbol] = c;
  }
  for (const auto& e : eliminated_) f.exponential += LaurentPolynomial::monomial(e.value);
  for (int i = 1; i <= n_; ++i)
    if (!rho(1, i - 1).is_zero()) f.log_terms[exact::toda_q(i)] = rho(1, i - 1);
  return f;
}

std::string SigmaChart::label() const {
  std::string s = "(";
  for (std::size_t i = 0; i < k_.size(); ++i) s += (i ? "," : "") + std::to_string(k_[i]);
  return s + ")";
}

SigmaChart make_chart(const MirrorGraph& g, const std::vector<int>& k) {
  const int n = g.n();
  if (static_cast<int>(k.size()) != n) throw std::invalid_argument("k-sequence must have length n");
  for (int i = 1; i <= n; ++i)
    if (k[i - 1] < 0 || k[i - 1] > n - i + 1)
      throw std::invalid_argument("k_" + std::to_string(i) + " = " + std::to_string(k[i - 1]) + " outside [0, " +
                                  std::to_string(n - i + 1) + "]");

  SigmaChart c;
  c.n_ = n;
  c.k_ = k;
  std::vector<bool> is_chart(g.edges().size(), false);
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) {
      const EdgeKind kind = j < k[i - 1] ? EdgeKind::U : EdgeKind::V;
      const int idx = g.find_edge(kind, i, j);
      is_chart[idx] = true;
      c.variables_.push_back({i, j, kind, g.edges()[idx].symbol});
    }

  // rho table, filled from the bottom row up
  c.rho_.resize(n + 1);
  for (int i = 1; i <= n + 1; ++i) {
    c.rho_[i - 1].assign(n - i + 3, LaurentPolynomial());
    LaurentPolynomial top;
    for (int m = i - 1; m <= n; ++m) top += lam(m);
    c.rho_[i - 1][n - i + 2] = top;
  }
  for (int i = n; i >= 1; --i)
    for (int j = 0; j <= n - i; ++j)
      c.rho_[i - 1][j + 1] = j < k[i - 1] ? c.rho(i + 1, j) : c.rho(i + 1, j - 1) + lam(i - 1);

  for (int i = 1; i <= n + 1; ++i) {
    std::multiset<int> seen;
    for (int j = 0; j <= n - i + 1; ++j) seen.insert(single_lambda_index(c.rho(i, j) - c.rho(i, j - 1), n));
    std::multiset<int> want;
    for (int m = i - 1; m <= n; ++m) want.insert(m);
    if (seen != want) throw std::logic_error("rho differences are not a permutation of lambda in row " + std::to_string(i));
  }
  for (int j = 0; j <= n; ++j) c.permutation_.push_back(single_lambda_index(c.rho(1, j) - c.rho(1, j - 1), n));

  for (const auto& v : c.variables_) {
    const int i = v.i, j = v.j;
    LaurentPolynomial e = j < k[i - 1] ? lam(i - 1) - (c.rho(i, j) - c.rho(i, j - 1))
                                       : -lam(i - 1) + (c.rho(i, j + 1) - c.rho(i, j));
    c.exponents_.emplace(std::make_pair(i, j), e);
  }

  // Log-linear relations: rows = boxes then roofs; columns = edges, and q.
  const std::size_t d = static_cast<std::size_t>(g.dimension());
  const std::size_t ne = g.edges().size();
  RationalMatrix rel = exact::rational_zero(d, ne), qrhs = exact::rational_zero(d, n);
  std::size_t row = 0;
  for (const auto& b : g.boxes()) {
    rel[row][b.v_ij] += 1;
    rel[row][b.u_ij1] += 1;
    rel[row][b.u_i1j] -= 1;
    rel[row][b.v_i1j] -= 1;
    ++row;
  }
  for (const auto& r : g.roofs()) {
    rel[row][r.u] += 1;
    rel[row][r.v] += 1;
    qrhs[row][r.q_index - 1] = 1;
    ++row;
  }
  std::vector<std::size_t> elim_idx, chart_idx;
  for (std::size_t e = 0; e < ne; ++e) (is_chart[e] ? chart_idx : elim_idx).push_back(e);
  RationalMatrix me = exact::rational_zero(d, d), mc = exact::rational_zero(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t a = 0; a < d; ++a) me[r][a] = rel[r][elim_idx[a]];
    for (std::size_t a = 0; a < d; ++a) mc[r][a] = rel[r][chart_idx[a]];
  }
  const auto inv = exact::rational_inverse(me);
  if (!inv) throw MonomialSolveError("chart " + c.label() + ": relations do not determine the eliminated edges");
  const RationalMatrix wcoef = exact::rational_product(*inv, mc);
  const RationalMatrix qcoef = exact::rational_product(*inv, qrhs);

  for (std::size_t a = 0; a < d; ++a) {
    std::vector<Monomial::Factor> factors;
    int q_total = 0;
    auto as_int = [&](const Rational& x, const std::string& what) {
      if (x.get_den() != 1)
        throw MonomialSolveError("chart " + c.label() + ": non-integral exponent of " + what + " in " +
                                 g.edges()[elim_idx[a]].symbol.name());
      return static_cast<int>(x.get_num().get_si());
    };
    for (std::size_t b = 0; b < d; ++b) {
      const int e = -as_int(wcoef[a][b], g.edges()[chart_idx[b]].symbol.name());
      if (e != 0) factors.emplace_back(g.edges()[chart_idx[b]].symbol, e);
    }
    for (int i = 1; i <= n; ++i) {
      const int e = as_int(qcoef[a][i - 1], "q" + std::to_string(i));
      if (e < 0)
        throw MonomialSolveError("chart " + c.label() + ": negative q exponent in " +
                                 g.edges()[elim_idx[a]].symbol.name());
      q_total += e;
      if (e != 0) factors.emplace_back(exact::toda_q(i), e);
    }
    if (q_total < 1)
      throw MonomialSolveError("chart " + c.label() + ": eliminated edge " + g.edges()[elim_idx[a]].symbol.name() +
                               " has no q factor");
    c.eliminated_.push_back({elim_idx[a], g.edges()[elim_idx[a]].symbol, Monomial::from_factors(factors)});
  }
  for (const auto& v : c.variables_) c.edge_monomials_.emplace(v.symbol, Monomial::of(v.symbol));
  for (const auto& e : c.eliminated_) c.edge_monomials_.emplace(e.symbol, e.value);

  // d(ln w)/dT over the vertices off the top row
  std::map<Vertex, std::size_t> vpos;
  for (const auto& v : g.vertices())
    if (v.i >= 1) vpos.emplace(v, vpos.size());
  RationalMatrix jac = exact::rational_zero(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    const auto& e = g.edges()[chart_idx[a]];
    if (auto it = vpos.find(e.head); it != vpos.end()) jac[a][it->second] += 1;
    if (auto it = vpos.find(e.tail); it != vpos.end()) jac[a][it->second] -= 1;
  }
  const Rational det = exact::rational_determinant(jac);
  if (det != 1 && det != -1)
    throw MonomialSolveError("chart " + c.label() + ": coordinate change has determinant " + exact::to_string(det));
  c.jacobian_sign_ = det > 0 ? 1 : -1;
  return c;
}

std::vector<std::vector<int>> all_k_sequences(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> k(n, 0);
  while (true) {
    out.push_back(k);
    int i = n - 1;
    while (i >= 0 && k[i] == n - i) {  // k_{i+1} ranges over 0..n-i
      k[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++k[i];
  }
  return out;
}

std::vector<SigmaChart> all_charts(const MirrorGraph& g) {
  std::vector<SigmaChart> out;
  for (const auto& k : all_k_sequences(g.n())) out.push_back(make_chart(g, k));
  return out;
}

}  // namespace todalab::mirror
