#include <gtest/gtest.h>

#include <random>

#include "todalab/exact/bernoulli.hpp"
#include "todalab/exact/hbar_series.hpp"
#include "todalab/exact/laurent.hpp"
#include "todalab/exact/poly_matrix.hpp"
#include "todalab/exact/rational.hpp"
#include "todalab/exact/rational_function.hpp"
#include "todalab/exact/symmetric.hpp"

using namespace todalab::exact;

namespace {

using LP = LaurentPolynomial;

LP var(const char* name, int e = 1) { return LP::variable(Symbol(name), e); }

// Multiplicative inverse of the power series (1 - e^{-x})/x, times k!.
std::vector<Rational> bernoulli_by_series_inversion(int m) {
  std::vector<Rational> a(m + 1), b(m + 1);
  for (int j = 0; j <= m; ++j) a[j] = Rational((j % 2 == 0) ? 1 : -1) / Rational(factorial(j + 1));
  b[0] = 1;
  for (int k = 1; k <= m; ++k) {
    Rational s(0);
    for (int j = 1; j <= k; ++j) s += a[j] * b[k - j];
    b[k] = -s;
  }
  for (int k = 0; k <= m; ++k) b[k] *= Rational(factorial(k));
  return b;
}

LP random_poly(std::mt19937& rng, const std::vector<Symbol>& vars) {
  std::uniform_int_distribution<int> terms(0, 5), expo(-3, 3), coef(-9, 9), den(1, 4);
  LP p;
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    std::vector<Monomial::Factor> f;
    for (Symbol s : vars) f.emplace_back(s, expo(rng));
    p.add_term(Monomial::from_factors(f), make_rational(coef(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST(Rational, ParseForms) {
  EXPECT_EQ(parse_rational("-3/8"), make_rational(-3, 8));
  EXPECT_EQ(parse_rational("6/4"), make_rational(3, 2));
  EXPECT_EQ(parse_rational("0.125"), make_rational(1, 8));
  EXPECT_EQ(parse_rational("1e-4"), make_rational(1, 10000));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_EQ(to_string(Rational(5)), "5/1");
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
}

TEST(Symmetric, Examples) {
  auto r = [](long a) { return Rational(a); };
  EXPECT_EQ(elementary_symmetric_sigma<Rational>({r(0), r(0)}), (std::vector<Rational>{r(0), r(0)}));
  EXPECT_EQ(elementary_symmetric_sigma<Rational>({r(1), r(-1)}), (std::vector<Rational>{r(0), r(-1)}));
  EXPECT_EQ(elementary_symmetric_sigma<Rational>({r(1), r(2), r(-3)}), (std::vector<Rational>{r(0), r(-7), r(6)}));
}

TEST(Symmetric, SymbolicProductExpansion) {
  // prod (x - lambda_i) rebuilt from the sigmas
  std::vector<LP> lam{LP::variable(lambda(0)), LP::variable(lambda(1)), LP::variable(lambda(2))};
  const auto s = elementary_symmetric_sigma(lam);
  const LP x = LP::variable(char_x());
  LP lhs = x.pow(3) + s[0] * x.pow(2) + s[1] * x + s[2];
  LP rhs = (x - lam[0]) * (x - lam[1]) * (x - lam[2]);
  EXPECT_EQ(lhs, rhs);
}

TEST(Bernoulli, Examples) {
  EXPECT_EQ(bernoulli(2), make_rational(1, 6));
  EXPECT_EQ(bernoulli(4), make_rational(-1, 30));
  EXPECT_EQ(bernoulli(6), make_rational(1, 42));
  EXPECT_EQ(bernoulli_sequence(1)[1], make_rational(1, 2));
  EXPECT_THROW(bernoulli(3), std::invalid_argument);
  EXPECT_THROW(bernoulli(0), std::invalid_argument);
  EXPECT_THROW(bernoulli(-2), std::invalid_argument);
}

TEST(Bernoulli, MatchesSeriesInversionOracle) {
  const auto oracle = bernoulli_by_series_inversion(24);
  const auto b = bernoulli_sequence(24);
  for (int k = 0; k <= 24; ++k) EXPECT_EQ(b[k], oracle[k]) << "k=" << k;
}

TEST(Bernoulli, RecurrenceInThisConvention) {
  // With B_1 = +1/2 the binomial sum equals m+1; flipping B_1 to -1/2 gives the zero-sum form.
  const auto b = bernoulli_sequence(13);
  for (int m = 1; m <= 12; ++m) {
    Rational plus(0), minus(0);
    for (int j = 0; j <= m; ++j) {
      const Rational bj = (j == 1) ? Rational(-b[1]) : b[j];
      plus += Rational(binomial(m + 1, j)) * b[j];
      minus += Rational(binomial(m + 1, j)) * bj;
    }
    EXPECT_EQ(plus, Rational(m + 1)) << m;
    EXPECT_EQ(minus, Rational(0)) << m;
  }
}

TEST(Bernoulli, StirlingCoefficients) {
  const auto c = stirling_coefficients(3);
  EXPECT_EQ(c[0], make_rational(1, 12));
  EXPECT_EQ(c[1], make_rational(-1, 360));
  EXPECT_EQ(c[2], make_rational(1, 1260));
}

TEST(Laurent, RingAxiomsRandom) {
  std::mt19937 rng(20240611);
  const std::vector<Symbol> vars{Symbol("a"), Symbol("b"), Symbol("c"), Symbol("d")};
  for (int trial = 0; trial < 200; ++trial) {
    const LP a = random_poly(rng, vars), b = random_poly(rng, vars), c = random_poly(rng, vars);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Laurent, DerivativeAndSubstitution) {
  const LP x = var("x"), y = var("y");
  const LP p = x.pow(3) * y.pow(-2) + LP(make_rational(1, 2)) * x;
  EXPECT_EQ(p.derivative(Symbol("x")), LP(3) * x.pow(2) * y.pow(-2) + LP(make_rational(1, 2)));
  EXPECT_EQ(p.derivative(Symbol("y")), LP(-2) * x.pow(3) * y.pow(-3));
  EXPECT_EQ(p.substitute(Symbol("y"), LP(2) * x), LP(make_rational(1, 4)) * x + LP(make_rational(1, 2)) * x);
  EXPECT_THROW(p.substitute(Symbol("y"), x + LP(1)), std::domain_error);
  EXPECT_EQ(p.coefficient(Symbol("y"), -2), x.pow(3));
  EXPECT_EQ(p.max_degree(Symbol("x")), 3);
  EXPECT_EQ(p.min_degree(Symbol("y")), -2);
}

TEST(Laurent, CanonicalText) {
  const LP p = var("q2") + var("q10") * var("q2") + LP(make_rational(-3, 2)) + var("q1", -1);
  EXPECT_EQ(p.to_string(), "1/1*q2*q10 + 1/1*q2 + -3/2 + 1/1*q1^-1");
  EXPECT_EQ(LP().to_string(), "0/1");
}

TEST(HbarSeriesRational, ExpLogExamples) {
  using S = HbarSeries<Rational>;
  EXPECT_EQ(series_exp(S(8)), S(Rational(1), 8));
  const S h = S::monomial(Rational(1), 1, 8);
  const S prod = series_exp(h) * series_exp(-h);
  EXPECT_EQ(prod, S(Rational(1), 8));
  EXPECT_THROW(series_exp(S(Rational(1), 4)), ValuationError);
  EXPECT_THROW(series_log(S::monomial(Rational(2), 0, 4)), ValuationError);
}

TEST(HbarSeriesLaurent, LogExpInverse) {
  using S = HbarSeries<LP>;
  const S ch = S::monomial(var("c"), 1, 5);
  EXPECT_EQ(series_log(series_exp(ch)), ch);
  // random positive-valuation input
  S a(6);
  a.set(1, var("c") + LP(2));
  a.set(2, var("c", -1));
  a.set(5, LP(make_rational(3, 7)));
  EXPECT_EQ(series_log(series_exp(a)), a);
  EXPECT_EQ(series_exp(series_log(series_exp(a))), series_exp(a));
}

TEST(HbarSeriesLaurent, Reflection) {
  using S = HbarSeries<LP>;
  S a(5);
  a.set(1, var("c"));
  a.set(2, LP(1));
  const S r = a.reflected();
  EXPECT_EQ(r.coefficient(1), -var("c"));
  EXPECT_EQ(r.coefficient(2), LP(1));
}

TEST(RationalFunction, PartialFractionsCancel) {
  const LP a = var("a"), b = var("b");
  // 1/(a-b) + 1/(b-a) = 0, and 1/(a(a-b)) - 1/(b(a-b)) + 1/(ab) = 0
  const auto x = RationalFunction::fraction(LP(1), a - b) + RationalFunction::fraction(LP(1), b - a);
  EXPECT_TRUE(x.is_zero());
  const auto y = RationalFunction::fraction(a.pow(-1), a - b) - RationalFunction::fraction(b.pow(-1), a - b) +
                 RationalFunction(a.pow(-1) * b.pow(-1));
  EXPECT_TRUE(y.is_zero());
  const auto z = RationalFunction::fraction(LP(1), a - b, 2) * RationalFunction(a - b);
  EXPECT_TRUE((z - RationalFunction::fraction(LP(2), LP(2) * a - LP(2) * b)).is_zero());
  EXPECT_THROW(RationalFunction::fraction(LP(1), LP()), std::domain_error);
}

TEST(PolyMatrix, DeterminantTwoByTwo) {
  PolyMatrix m(2, 2);
  m(0, 0) = var("p0") + var("x");
  m(0, 1) = var("q1");
  m(1, 0) = LP(-1);
  m(1, 1) = var("p1") + var("x");
  const LP expected = var("x").pow(2) + (var("p0") + var("p1")) * var("x") + var("p0") * var("p1") + var("q1");
  EXPECT_EQ(m.determinant(), expected);
  EXPECT_EQ(PolyMatrix::identity(3).determinant(), LP(1));
}
