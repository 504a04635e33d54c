#include "todalab/critical/uv_identity.hpp"

#include <stdexcept>

namespace todalab::critical {

using exact::LaurentPolynomial;
using exact::PolyMatrix;
using mirror::EdgeKind;

PolyMatrix u_matrix(const mirror::MirrorGraph& g, int k) {
  const int size = g.n() - k + 2;
  PolyMatrix u(size, size);
  for (int i = 0; i + 1 < size; ++i) u(i, i) = g.edge_variable(EdgeKind::U, k, i);
  for (int i = 1; i < size; ++i) u(i, i - 1) = LaurentPolynomial(1);
  return u;
}

PolyMatrix v_matrix(const mirror::MirrorGraph& g, int k) {
  const int size = g.n() - k + 2;
  PolyMatrix v(size, size);
  for (int i = 0; i < size; ++i) v(i, i) = LaurentPolynomial(-1);
  for (int i = 0; i + 1 < size; ++i) v(i, i + 1) = g.edge_variable(EdgeKind::V, k, i);
  return v;
}

PolyMatrix a_matrix(const mirror::MirrorGraph& g, int k) {
  const int size = g.n() - k + 2;
  PolyMatrix a(size, size);
  if (k == g.n() + 1) return a;
  for (int i = 0; i < size; ++i) {
    LaurentPolynomial d;
    if (i > 0) d += g.edge_variable(EdgeKind::V, k, i - 1);
    if (i + 1 < size) d -= g.edge_variable(EdgeKind::U, k, i);
    a(i, i) = d;
    if (i + 1 < size) {
      a(i, i + 1) = g.edge_variable(EdgeKind::U, k, i) * g.edge_variable(EdgeKind::V, k, i);
      a(i + 1, i) = LaurentPolynomial(-1);
    }
  }
  return a;
}

namespace {

// Right-hand side of the block identity, before substitution.
PolyMatrix block_rhs(const mirror::MirrorGraph& g, int k) {
  const int size = g.n() - k + 2;
  const PolyMatrix inner = a_matrix(g, k + 1);
  PolyMatrix r(size, size);
  for (int i = 0; i + 1 < size; ++i)
    for (int j = 0; j + 1 < size; ++j) r(i, j) = inner(i, j);
  for (int i = 0; i + 1 < size; ++i) r(i, i) -= LaurentPolynomial::variable(exact::lambda(k)) + g.vertex_derivative(k, i);
  r(size - 1, size - 2) = LaurentPolynomial(-1);
  r(size - 1, size - 1) = -LaurentPolynomial::variable(exact::lambda(k - 1));
  return r;
}

}  // namespace

UvReport uv_identity_report(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("uv identity check supports 1 <= n <= 4");
  const mirror::MirrorGraph g(n);
  const auto charts = mirror::all_charts(g);
  UvReport report;
  for (int k = 1; k <= n; ++k) {
    const PolyMatrix u = u_matrix(g, k), v = v_matrix(g, k);
    ++report.checks;
    if (!(u * v == a_matrix(g, k))) {
      report.factorization_ok = false;
      report.failures.push_back({k, "", "A_k != U_k V_k"});
    }
    const int size = n - k + 2;
    const PolyMatrix lhs =
        v * u - LaurentPolynomial::variable(exact::lambda(k - 1)) * PolyMatrix::identity(size);
    const PolyMatrix rhs = block_rhs(g, k);
    for (const auto& chart : charts) {
      std::map<exact::Symbol, LaurentPolynomial> values;
      for (const auto& [s, m] : chart.edge_monomials()) values.emplace(s, LaurentPolynomial::monomial(m, 1));
      auto reduce = [&](const LaurentPolynomial& p) { return mirror::impose_trace_zero(p.substitute(values), n); };
      const PolyMatrix diff = (lhs - rhs).map(reduce);
      ++report.checks;
      if (!diff.is_zero()) {
        report.identity_ok = false;
        report.failures.push_back({k, chart.label(), diff.to_string()});
      }
    }
  }
  return report;
}

bool uv_identity_check(int n) { return uv_identity_report(n).ok(); }

}  // namespace todalab::critical
