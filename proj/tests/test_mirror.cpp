#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "todalab/mirror/chart.hpp"

using namespace todalab;
using exact::LaurentPolynomial;
using exact::Rational;
using mirror::EdgeKind;
using mirror::MirrorGraph;

namespace {

LaurentPolynomial lam(int i) { return LaurentPolynomial::variable(exact::lambda(i)); }
LaurentPolynomial q(int i) { return LaurentPolynomial::variable(exact::toda_q(i)); }
LaurentPolynomial u(int i, int j) { return LaurentPolynomial::variable(mirror::edge_symbol(EdgeKind::U, i, j)); }
LaurentPolynomial v(int i, int j) { return LaurentPolynomial::variable(mirror::edge_symbol(EdgeKind::V, i, j)); }

std::map<exact::Symbol, LaurentPolynomial> as_poly(const std::map<exact::Symbol, exact::Monomial>& m) {
  std::map<exact::Symbol, LaurentPolynomial> out;
  for (const auto& [s, mono] : m) out.emplace(s, LaurentPolynomial::monomial(mono));
  return out;
}

}  // namespace

TEST(MirrorGraph, Counts) {
  const int boxes[] = {0, 0, 1, 3, 6};
  for (int n = 1; n <= 4; ++n) {
    MirrorGraph g(n);
    EXPECT_EQ(static_cast<int>(g.vertices().size()), (n + 1) * (n + 2) / 2);
    EXPECT_EQ(static_cast<int>(g.edges().size()), n * (n + 1));
    EXPECT_EQ(static_cast<int>(g.boxes().size()), boxes[n]);
    EXPECT_EQ(static_cast<int>(g.roofs().size()), n);
    EXPECT_EQ(g.dimension(), n * (n + 1) / 2);
  }
  MirrorGraph g2(2);
  EXPECT_EQ(g2.box_relation(g2.boxes()[0]), v(1, 0) * u(1, 1) - u(2, 0) * v(2, 0));
  MirrorGraph g1(1);
  EXPECT_EQ(g1.roof_relation(g1.roofs()[0]), u(1, 0) * v(1, 0) - q(1));
}

TEST(MirrorGraph, WeightsSmall) {
  MirrorGraph g(2);
  auto w = [&](EdgeKind k, int i, int j) { return g.weight(g.find_edge(k, i, j)); };
  const Rational h(1, 2);
  EXPECT_EQ(w(EdgeKind::U, 1, 0), lam(0));
  EXPECT_EQ(w(EdgeKind::U, 2, 0), lam(1) + lam(0) * h);
  EXPECT_EQ(w(EdgeKind::V, 2, 0), -lam(1) - lam(0) * h);
  EXPECT_EQ(w(EdgeKind::V, 1, 1), -lam(0));
  EXPECT_EQ(w(EdgeKind::U, 1, 1), lam(0) * h);
  EXPECT_EQ(w(EdgeKind::V, 1, 0), -lam(0) * h);
  MirrorGraph g1(1);
  EXPECT_EQ(g1.weight(g1.find_edge(EdgeKind::U, 1, 0)), lam(0));
  EXPECT_EQ(g1.weight(g1.find_edge(EdgeKind::V, 1, 0)), -lam(0));
}

TEST(MirrorGraph, PhaseN1) {
  const auto f = MirrorGraph(1).phase();
  EXPECT_EQ(f.exponential, u(1, 0) + v(1, 0));
  EXPECT_EQ(f.log_terms.at(mirror::edge_symbol(EdgeKind::U, 1, 0)), lam(0));
  EXPECT_EQ(f.log_terms.at(mirror::edge_symbol(EdgeKind::V, 1, 0)), -lam(0));
}

TEST(MirrorGraph, VertexDerivativeMatchesExplicitSum) {
  for (int n = 1; n <= 4; ++n) {
    MirrorGraph g(n);
    for (int k = 1; k <= n; ++k)
      for (int i = 0; i <= n - k; ++i) {
        const auto d = mirror::impose_trace_zero(g.vertex_derivative(k, i), n);
        const auto want = mirror::impose_trace_zero(
            g.edge_variable(EdgeKind::U, k, i) - g.edge_variable(EdgeKind::V, k, i) +
                g.edge_variable(EdgeKind::V, k + 1, i - 1) - g.edge_variable(EdgeKind::U, k + 1, i) + lam(k - 1) - lam(k),
            n);
        EXPECT_EQ(d, want) << "n=" << n << " vertex (" << k << "," << i << ")";
      }
    // top vertices involve only row-1 edges
    for (int j = 0; j <= n; ++j) {
      const auto d = g.vertex_derivative(0, j);
      for (const auto s : d.symbols()) {
        const auto& name = s.name();
        if (name[0] == 'u' || name[0] == 'v') EXPECT_EQ(name.substr(1, 2), "1_") << name;
      }
    }
  }
}

TEST(MirrorGraph, WeightsSumToZero) {
  for (int n = 1; n <= 5; ++n) {
    MirrorGraph g(n);
    LaurentPolynomial s;
    for (std::size_t e = 0; e < g.edges().size(); ++e) s += g.weight(e);
    EXPECT_TRUE(s.is_zero());
  }
}

TEST(SigmaChart, RhoValuesForK120) {
  MirrorGraph g(3);
  const auto c = mirror::make_chart(g, {1, 2, 0});
  EXPECT_EQ(c.rho(4, 0), lam(3));
  EXPECT_EQ(c.rho(3, 1), lam(2) + lam(3));
  EXPECT_EQ(c.rho(2, 2), lam(1) + lam(2) + lam(3));
  EXPECT_EQ(c.rho(3, 0), lam(2));
  EXPECT_EQ(c.rho(2, 0), lam(2));
  EXPECT_EQ(c.rho(2, 1), lam(2) + lam(3));
  EXPECT_EQ(c.rho(1, 0), lam(2));
  EXPECT_EQ(c.rho(1, 1), lam(0) + lam(2));
  EXPECT_EQ(c.rho(1, 2), lam(0) + lam(2) + lam(3));
  EXPECT_EQ(c.permutation(), (std::vector<int>{2, 0, 3, 1}));
}

TEST(SigmaChart, N1Chart) {
  MirrorGraph g(1);
  const auto c = mirror::make_chart(g, {1});
  ASSERT_EQ(c.eliminated().size(), 1u);
  EXPECT_EQ(LaurentPolynomial::monomial(c.eliminated()[0].value), q(1) * u(1, 0).pow(-1));
  EXPECT_EQ(mirror::impose_trace_zero(c.exponent(1, 0), 1), lam(0) * Rational(2));
  EXPECT_EQ(c.q_log_coefficient(1), lam(1));
  const auto f = c.phase().with_trace_zero(1);
  EXPECT_EQ(f.exponential, u(1, 0) + q(1) * u(1, 0).pow(-1));
  EXPECT_EQ(f.log_terms.at(exact::toda_q(1)), -lam(0));
  EXPECT_THROW(mirror::make_chart(g, {2}), std::invalid_argument);
  EXPECT_THROW(mirror::make_chart(g, {0, 0}), std::invalid_argument);
}

class ChartProperties : public ::testing::TestWithParam<int> {};

TEST_P(ChartProperties, AllCharts) {
  const int n = GetParam();
  MirrorGraph g(n);
  const auto charts = mirror::all_charts(g);
  long fact = 1;
  for (int i = 2; i <= n + 1; ++i) fact *= i;
  ASSERT_EQ(static_cast<long>(charts.size()), fact);
  std::set<std::vector<int>> perms;
  const auto f = g.phase();
  for (const auto& c : charts) {
    perms.insert(c.permutation());
    EXPECT_EQ(static_cast<int>(c.variables().size()), g.dimension());
    // Relations hold identically after substituting the eliminated edges.
    const auto subs = as_poly(c.edge_monomials());
    for (const auto& b : g.boxes()) EXPECT_TRUE(g.box_relation(b).substitute(subs).is_zero()) << c.label();
    for (const auto& r : g.roofs()) EXPECT_TRUE(g.roof_relation(r).substitute(subs).is_zero()) << c.label();
    // Chart phase agrees with the graph phase under the constraint.
    EXPECT_EQ(f.substitute(c.edge_monomials()).with_trace_zero(n), c.phase().with_trace_zero(n)) << c.label();
    // Exponent multiset is the set of lambda_{sigma(i)} - lambda_{sigma(j)}, i > j.
    std::multiset<std::string> got, want;
    for (const auto& e : c.exponents()) got.insert(mirror::impose_trace_zero(e, n).to_string());
    const auto& p = c.permutation();
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j < i; ++j) want.insert(mirror::impose_trace_zero(lam(p[i]) - lam(p[j]), n).to_string());
    EXPECT_EQ(got, want) << c.label();
    EXPECT_TRUE(c.jacobian_sign() == 1 || c.jacobian_sign() == -1);
  }
  EXPECT_EQ(static_cast<long>(perms.size()), fact);
}

INSTANTIATE_TEST_SUITE_P(SmallN, ChartProperties, ::testing::Values(1, 2, 3, 4));
