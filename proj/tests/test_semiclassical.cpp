#include <gtest/gtest.h>

#include <cmath>

#include "todalab/semiclassical/semiclassical.hpp"

using namespace todalab;
using namespace todalab::semiclassical;
using exact::Rational;

namespace {

LaurentPolynomial lam(int i) { return LaurentPolynomial::variable(exact::lambda(i)); }

const critical::CriticalPointRecord& record_with_kind(const critical::CriticalCensus& c, mirror::EdgeKind k) {
  for (const auto& r : c.records)
    if (r.chart.variables()[0].kind == k) return r;
  throw std::logic_error("missing chart");
}

}  // namespace

TEST(Stirling, TailCoefficients) {
  const auto c = gamma_stirling_tail(3);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], Rational(1, 12));
  EXPECT_EQ(c[1], Rational(-1, 360));
  EXPECT_EQ(c[2], Rational(1, 1260));
  EXPECT_THROW(gamma_stirling_tail(0), std::invalid_argument);
}

TEST(Stirling, PartialSumsWithinNextTermBound) {
  const auto c = gamma_stirling_tail(6);
  for (double z : {5.0, 10.0})
    for (int K = 1; K <= 5; ++K) {
      const double bound = std::abs(exact::to_double(c[K])) / std::pow(z, 2 * K + 1);
      EXPECT_LT(std::abs(std::lgamma(z) - stirling_partial_sum(z, K)), bound) << z << " " << K;
    }
  EXPECT_LT(std::abs(std::lgamma(10.0) - stirling_partial_sum(10.0, 4)), 1e-10);
}

TEST(FixedPoint, WeightsAndPowerSums) {
  const auto fp = fixed_point_data({2, 0, 1}, 3);
  ASSERT_EQ(fp.weights.size(), 3u);
  EXPECT_EQ(fp.weights[0], lam(1) - lam(2));  // i=2, j=0
  EXPECT_EQ(fp.weights[1], lam(1) - lam(0));  // i=2, j=1
  EXPECT_EQ(fp.weights[2], lam(0) - lam(2));  // i=1, j=0
  EXPECT_EQ(fp.power_sums.count(1), 1u);
  EXPECT_EQ(fp.power_sums.count(3), 1u);
  EXPECT_EQ(fp.power_sums.count(2), 0u);
  // numeric N_3 at lambda = (1, 2, 4)
  const std::function<double(exact::Symbol)> at = [](exact::Symbol s) {
    return s == exact::lambda(0) ? 1.0 : s == exact::lambda(1) ? 2.0 : 4.0;
  };
  const double expected = std::pow(-2.0, -3) + std::pow(1.0, -3) + std::pow(-3.0, -3);
  EXPECT_NEAR(fp.power_sums.at(3).evaluate(at), expected, 1e-14);
}

TEST(ClassicalLimit, SingleWeightSeries) {
  const auto fp = fixed_point_data({0, 1}, 5);
  const auto b = classical_limit_b(fp, 3);
  const auto c = gamma_stirling_tail(3);
  for (int k = 1; k <= 3; ++k) {
    const auto expected = RationalFunction::fraction(LaurentPolynomial(c[k - 1]), lam(1) - lam(0), 2 * k - 1);
    EXPECT_TRUE((b.coefficient(2 * k - 1) - expected).is_zero()) << k;
  }
  EXPECT_TRUE(b.coefficient(2).is_zero());
}

TEST(ClassicalLimit, AllPermutationsExact) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& rep : verify_all_classical_limits(n, 4)) {
      EXPECT_TRUE(rep.matches) << n;
      EXPECT_TRUE(rep.orthogonal) << n;
      EXPECT_TRUE(rep.homogeneous) << n;
      EXPECT_FALSE(rep.first_mismatch.has_value());
    }
}

TEST(ClassicalLimit, SerialMatchesParallel) {
  const auto a = verify_all_classical_limits(2, 3, Execution::Serial);
  const auto b = verify_all_classical_limits(2, 3, Execution::Parallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].permutation, b[i].permutation);
    EXPECT_EQ(a[i].pass(), b[i].pass());
  }
}

TEST(ClassicalLimit, DetectsPerturbedSeries) {
  // a wrong weight set must break the identity
  auto fp = fixed_point_data({0, 1, 2}, 7);
  const auto b = classical_limit_b(fp, 4);
  fp.weights.back() = fp.weights.back() * LaurentPolynomial(2);
  EXPECT_FALSE((stirling_weight_sum(fp, 4) - b).is_zero());
}

TEST(ClassicalLimit, HomogeneousDegree) {
  EXPECT_EQ(homogeneous_degree(RationalFunction::fraction(lam(0), lam(0) - lam(1), 3)), -2);
  EXPECT_FALSE(homogeneous_degree(RationalFunction(lam(0) + LaurentPolynomial(1))).has_value());
}

TEST(Stationary, OneDimensionalLeadingTerm) {
  const std::vector<double> lambda{0.5, -0.5};
  const auto census = critical::all_critical_points(1, lambda, {1.0});
  const auto& r = record_with_kind(census, mirror::EdgeKind::U);
  const cplx u = r.coordinates[0];
  const cplx h = 2.0 / (u * u * u) - 2 * lambda[0] / (u * u);
  const cplx lead = stationary_leading(r, 1.0, HessianFrame::Chart);
  EXPECT_LT(std::abs(lead * lead - 1.0 / h), 1e-12);
  // log frame: the scalar Hessian is 2p with p = u + lambda_0
  const cplx log_lead = stationary_leading(r, 1.0);
  EXPECT_LT(std::abs(log_lead * log_lead - 1.0 / (2.0 * (u + lambda[0]))), 1e-12);
}

TEST(Stationary, LaplaceConsistency) {
  const auto a = laplace_consistency(1, {0.5, -0.5}, {1.0}, -0.125);
  EXPECT_LT(a.rel_mismatch, 5e-2);
  const auto b = laplace_consistency(1, {0.5, -0.5}, {1.0}, -0.0625);
  EXPECT_LT(b.rel_mismatch, a.rel_mismatch);
  const auto c = laplace_consistency(2, {0.25, 0.125, -0.375}, {1.0, 1.0}, -0.125);
  EXPECT_LT(c.rel_mismatch, 5e-2);
}

TEST(PsiOsc, GramConstantInLogFrame) {
  const std::vector<NamedAmplitude> amps{amplitude_one(), amplitude_momentum(0)};
  const auto g = gram_variation(1, {0.5, -0.5}, {{1.0}, {1.1}, {2.0}}, amps);
  EXPECT_LT(g.variation, 1e-12);
  // Sum over critical points of 1/(2p) vanishes and of p/(2p) is 1/2 + 1/2.
  EXPECT_LT(std::abs(g.grams[0](0, 0)), 1e-12);
  EXPECT_NEAR(std::abs(g.grams[0](0, 1)), 1.0, 1e-12);
  const auto chart = gram_variation(1, {0.5, -0.5}, {{1.0}, {1.1}}, amps, HessianFrame::Chart);
  EXPECT_GT(chart.variation, 1e-3);
}

TEST(PsiOsc, ColumnsScaleQuasiHomogeneously) {
  const std::vector<double> lambda{0.25, 0.125, -0.375};
  const std::vector<cplx> q{0.6, 0.9};
  const std::vector<NamedAmplitude> amps{amplitude_one(), amplitude_momentum(0), amplitude_momentum(2)};
  const auto base = psi_osc(critical::all_critical_points(2, lambda, q), amps);
  const double c = 2.0;
  std::vector<double> l2 = lambda;
  for (auto& x : l2) x *= c;
  std::vector<cplx> q2 = q;
  for (auto& x : q2) x *= c * c;
  const auto scaled = psi_osc(critical::all_critical_points(2, l2, q2), amps);
  const double d = 3;
  for (int k = 0; k < base.entries.rows(); ++k)
    for (int s = 0; s < base.entries.cols(); ++s) {
      const cplx expected = base.entries(k, s) * std::pow(c, amps[k].degree - d / 2);
      EXPECT_LT(std::abs(scaled.entries(k, s) - expected), 1e-9 * std::max(1.0, std::abs(expected)));
    }
}

TEST(PsiOsc, NonequivariantLimitIsFinite) {
  const std::vector<NamedAmplitude> amps{amplitude_one(), amplitude_momentum(0)};
  auto at = [&](double eps) { return psi_osc(critical::all_critical_points(1, {eps, -eps}, {1.0}), amps).entries; };
  const auto a = at(1e-4), b = at(1e-6);
  EXPECT_TRUE(a.allFinite());
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-3);
}
