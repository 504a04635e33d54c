#include <gtest/gtest.h>

#include <random>

#include "todalab/toda/toda.hpp"

using namespace todalab;
using exact::LaurentPolynomial;
using exact::Rational;
using toda::DerivativeIndex;
using toda::DifferentialOperator;

namespace {

LaurentPolynomial p(int i) { return LaurentPolynomial::variable(exact::toda_p(i)); }
LaurentPolynomial q(int i) { return LaurentPolynomial::variable(exact::toda_q(i)); }
LaurentPolynomial hbar() { return LaurentPolynomial::variable(exact::hbar()); }

// Tridiagonal continuant: f_k = (p_k + x) f_{k-1} + q_k f_{k-2}.
LaurentPolynomial continuant(int n) {
  const auto x = LaurentPolynomial::variable(exact::char_x());
  LaurentPolynomial prev(1L), cur = p(0) + x;
  for (int k = 1; k <= n; ++k) {
    LaurentPolynomial next = (p(k) + x) * cur + q(k) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

DifferentialOperator random_operator(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> nterms(1, 5), kexp(0, 2), qexp(-2, 2), coef(-5, 5);
  DifferentialOperator op(n);
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    DerivativeIndex k(n + 1);
    for (auto& e : k) e = kexp(rng);
    LaurentPolynomial c(coef(rng));
    for (int j = 1; j <= n; ++j) c *= q(j).pow(qexp(rng));
    if (coef(rng) > 0) c *= hbar();
    op.add_term(k, c);
  }
  return op;
}

}  // namespace

TEST(TodaMatrix, Shape) {
  const auto a = toda::build_toda_matrix(1);
  EXPECT_EQ(a(0, 0), p(0));
  EXPECT_EQ(a(0, 1), q(1));
  EXPECT_EQ(a(1, 0), LaurentPolynomial(-1));
  EXPECT_EQ(a(1, 1), p(1));
  const auto b = toda::build_toda_matrix(2);
  EXPECT_EQ(b(1, 2), q(2));
  EXPECT_EQ(b(2, 1), LaurentPolynomial(-1));
  EXPECT_TRUE(b(0, 2).is_zero());
  EXPECT_TRUE(b(2, 0).is_zero());
}

TEST(TodaMatrix, DeterminantMatchesContinuant) {
  for (int n = 1; n <= 4; ++n) {
    const auto d = toda::toda_polynomials(n);
    const auto x = LaurentPolynomial::variable(exact::char_x());
    LaurentPolynomial det = x.pow(n + 1);
    for (int i = 1; i <= n + 1; ++i) det += d[i - 1] * x.pow(n + 1 - i);
    EXPECT_EQ(det, continuant(n)) << "n=" << n;
  }
}

TEST(TodaOperators, SmallExamples) {
  const auto d1 = toda::toda_operators(1);
  DifferentialOperator e1(1), e2(1);
  e1.add_term({1, 0}, LaurentPolynomial(1));
  e1.add_term({0, 1}, LaurentPolynomial(1));
  e2.add_term({1, 1}, LaurentPolynomial(1));
  e2.add_term({0, 0}, q(1));
  EXPECT_EQ(d1[0], e1);
  EXPECT_EQ(d1[1], e2);

  const auto d2 = toda::toda_operators(2);
  DifferentialOperator f2(2);
  f2.add_term({1, 1, 0}, LaurentPolynomial(1));
  f2.add_term({1, 0, 1}, LaurentPolynomial(1));
  f2.add_term({0, 1, 1}, LaurentPolynomial(1));
  f2.add_term({0, 0, 0}, q(1) + q(2));
  EXPECT_EQ(d2[1], f2);

  for (int n = 1; n <= 4; ++n) {
    DifferentialOperator trace(n);
    for (int i = 0; i <= n; ++i) trace += DifferentialOperator::hbar_d(n, i);
    EXPECT_EQ(toda::toda_operators(n)[0], trace);
  }
}

TEST(TodaOperators, HamiltonianExamples) {
  DifferentialOperator h(1);
  h.add_term({2, 0}, LaurentPolynomial(Rational(1, 2)));
  h.add_term({0, 2}, LaurentPolynomial(Rational(1, 2)));
  h.add_term({0, 0}, -q(1));
  EXPECT_EQ(toda::build_hamiltonian(1), h);
  for (int n = 1; n <= 3; ++n) {
    const auto d = toda::toda_operators(n);
    const auto rel = LaurentPolynomial(Rational(1, 2)) * toda::compose(d[0], d[0]) - d[1];
    EXPECT_EQ(rel, toda::build_hamiltonian(n)) << "n=" << n;
  }
}

TEST(TodaOperators, ComposeLeibniz) {
  const auto d1 = DifferentialOperator::hbar_d(1, 1);
  const auto d0 = DifferentialOperator::hbar_d(1, 0);
  const auto mq = DifferentialOperator::multiplication(1, q(1));
  DifferentialOperator want1(1), want0(1);
  want1.add_term({0, 1}, q(1));
  want1.add_term({0, 0}, hbar() * q(1));
  want0.add_term({1, 0}, q(1));
  want0.add_term({0, 0}, -hbar() * q(1));
  EXPECT_EQ(toda::compose(d1, mq), want1);
  EXPECT_EQ(toda::compose(d0, mq), want0);
  EXPECT_EQ(toda::compose(DifferentialOperator::identity(1), want0), want0);
  EXPECT_EQ(toda::commutator(d1, mq), DifferentialOperator::multiplication(1, hbar() * q(1)));
}

TEST(TodaOperators, ComposeAssociativeRandom) {
  std::mt19937 rng(7);
  for (int n = 1; n <= 2; ++n)
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = random_operator(rng, n), b = random_operator(rng, n), c = random_operator(rng, n);
      EXPECT_EQ(toda::compose(toda::compose(a, b), c), toda::compose(a, toda::compose(b, c)));
    }
}

class TodaCommutativity : public ::testing::TestWithParam<int> {};

TEST_P(TodaCommutativity, AllCommutatorsVanish) {
  const int n = GetParam();
  const auto d = toda::toda_operators(n);
  const auto h = toda::build_hamiltonian(n);
  for (int i = 0; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j)
      EXPECT_TRUE(toda::commutator(d[i], d[j]).is_zero()) << "[D_" << i + 1 << ",D_" << j + 1 << "]";
    EXPECT_TRUE(toda::commutator(h, d[i]).is_zero()) << "[H,D_" << i + 1 << "]";
  }
}

INSTANTIATE_TEST_SUITE_P(SmallN, TodaCommutativity, ::testing::Values(1, 2, 3));

TEST(TodaOperators, TopOperatorAtZeroQ) {
  for (int n = 1; n <= 3; ++n) {
    const auto top = toda::toda_operators(n)[n];
    DifferentialOperator q0(n);
    for (const auto& [k, c] : top.terms()) {
      LaurentPolynomial v;
      for (const auto& [m, coef] : c.terms())
        if (toda::q_exponents(m, n) == std::vector<int>(n + 2, 0)) v.add_term(m, coef);
      q0.add_term(k, v);
    }
    DifferentialOperator want(n);
    want.add_term(DerivativeIndex(n + 1, 1), LaurentPolynomial(1));
    EXPECT_EQ(q0, want);
  }
}

TEST(TodaOperators, NonCommutingOrderMatters) {
  // Sanity check that the ring is genuinely noncommutative.
  const auto a = DifferentialOperator::hbar_d(2, 1);
  const auto b = DifferentialOperator::multiplication(2, q(1) * q(2).pow(-1));
  EXPECT_FALSE(toda::commutator(a, b).is_zero());
}

TEST(TodaOperators, NumericEvaluation) {
  const auto v = toda::evaluate_toda_polynomials(1, {{1.0, 0.0}, {2.0, 0.0}}, {{3.0, 0.0}});
  EXPECT_DOUBLE_EQ(v[0].real(), 3.0);
  EXPECT_DOUBLE_EQ(v[1].real(), 5.0);
  EXPECT_FALSE(toda::toda_operators(2)[2].to_string().empty());
}
