#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "todalab/critical/critical.hpp"
#include "todalab/critical/uv_identity.hpp"
#include "todalab/exact/symmetric.hpp"

using namespace todalab;
using namespace todalab::critical;

namespace {

// Distinct rationals with small denominators summing to zero.
std::vector<double> random_lambda(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-12, 12);
  for (;;) {
    std::vector<double> l(n + 1);
    double sum = 0;
    for (int i = 0; i < n; ++i) sum += (l[i] = num(rng) / 4.0);
    l[n] = -sum;
    bool distinct = true;
    for (int i = 0; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) distinct = distinct && std::abs(l[i] - l[j]) > 0.2;
    if (distinct) return l;
  }
}

std::vector<cplx> random_q(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(0.05, 1.0);
  std::vector<cplx> q(n);
  for (auto& x : q) x = d(rng);
  return q;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(Critical, OneDimensionalRootsAndHessian) {
  const std::vector<double> lambda{0.5, -0.5};
  const std::vector<cplx> q{0.7};
  const auto census = all_critical_points(1, lambda, q);
  ASSERT_EQ(census.records.size(), 2u);
  for (const auto& r : census.records) {
    const cplx u = r.edges.at(mirror::edge_symbol(mirror::EdgeKind::U, 1, 0));
    EXPECT_LT(std::abs(u * u + 2 * lambda[0] * u - q[0]), 1e-12);
    if (r.chart.variables()[0].kind == mirror::EdgeKind::U) {
      const cplx expected = 2.0 * q[0] / (u * u * u) - 2 * lambda[0] / (u * u);
      EXPECT_LT(std::abs(r.hessian(0, 0) - expected), 1e-10);
    }
    EXPECT_NEAR(std::norm(r.sqrt_hessian_det()), std::abs(r.hessian_det), 1e-10);
  }
  EXPECT_TRUE(census.all_distinct);
}

TEST(Critical, StartPointIsQZeroCriticalPoint) {
  const std::vector<double> lambda{-1.0, 0.25, 0.75};
  const mirror::MirrorGraph g(2);
  for (const auto& chart : mirror::all_charts(g)) {
    const CompiledPhase ph(chart, lambda, {0.3, 0.4});
    const VectorXc s = start_point(chart, lambda).array().log();
    EXPECT_LT(ph.gradient(s, 0.0).cwiseAbs().maxCoeff(), 1e-14) << chart.label();
  }
}

TEST(Critical, RejectsDegenerateLambda) {
  EXPECT_THROW(validate_lambda({0.5, 0.5, -1.0}), DegenerateLambdaError);
  EXPECT_THROW(validate_lambda({0.5, 0.25}), DegenerateLambdaError);
  EXPECT_THROW(all_critical_points(2, {1.0, 1.0, -2.0}, {0.5, 0.5}), DegenerateLambdaError);
}

TEST(Critical, CharPolyPlusMatchesDiagonal) {
  MatrixXc m = MatrixXc::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 2.0;
  m(2, 2) = -3.0;
  m(0, 2) = 5.0;  // upper triangular: eigenvalues unchanged
  const auto c = char_poly_plus(m);
  // (x+1)(x+2)(x-3) = x^3 - 7x - 6
  EXPECT_LT(std::abs(c[0] - 0.0), 1e-12);
  EXPECT_LT(std::abs(c[1] + 7.0), 1e-12);
  EXPECT_LT(std::abs(c[2] + 6.0), 1e-12);
}

class CensusTest : public ::testing::TestWithParam<int> {};

TEST_P(CensusTest, CountNondegeneracySpectralLagrangian) {
  const int n = GetParam();
  std::mt19937 rng(1000 + n);
  for (int trial = 0; trial < 3; ++trial) {
    const auto lambda = random_lambda(n, rng);
    const auto q = random_q(n, rng);
    const auto census = all_critical_points(n, lambda, q);
    ASSERT_EQ(static_cast<long>(census.records.size()), factorial(n + 1));
    EXPECT_TRUE(census.all_nondegenerate);
    EXPECT_TRUE(census.all_distinct) << census.min_pairwise_distance;
    for (const auto& r : census.records) {
      EXPECT_LT(spectral_check(r), 1e-8) << r.chart.label();
      for (double res : to_lagrangian(r).residuals) EXPECT_LT(res, 1e-8) << r.chart.label();
      EXPECT_LT(r.gradient_norm, 1e-10);
    }
  }
}

TEST_P(CensusTest, ScalingLaw) {
  const int n = GetParam();
  std::mt19937 rng(2000 + n);
  const auto lambda = random_lambda(n, rng);
  const auto q = random_q(n, rng);
  const auto base = all_critical_points(n, lambda, q);
  for (double c : {2.0, 1.0 / 3.0}) {
    std::vector<double> l2 = lambda;
    for (auto& x : l2) x *= c;
    std::vector<cplx> q2 = q;
    for (auto& x : q2) x *= c * c;
    const auto scaled = all_critical_points(n, l2, q2);
    ASSERT_EQ(scaled.records.size(), base.records.size());
    for (std::size_t i = 0; i < base.records.size(); ++i) {
      const cplx expected = c * base.records[i].critical_value;
      EXPECT_LT(std::abs(scaled.records[i].critical_value - expected), 1e-8 * std::max(1.0, std::abs(expected)))
          << base.records[i].chart.label();
    }
  }
}

TEST_P(CensusTest, SerialMatchesParallel) {
  const int n = GetParam();
  std::mt19937 rng(3000 + n);
  const auto lambda = random_lambda(n, rng);
  const auto q = random_q(n, rng);
  const auto a = all_critical_points(n, lambda, q, {}, Execution::Serial);
  const auto b = all_critical_points(n, lambda, q, {}, Execution::Parallel);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].chart.label(), b.records[i].chart.label());
    EXPECT_EQ(edge_distance(a.records[i], b.records[i]), 0.0);
  }
}

TEST_P(CensusTest, SmallQApproachesChartLimit) {
  const int n = GetParam();
  std::mt19937 rng(4000 + n);
  const auto lambda = random_lambda(n, rng);
  const std::vector<cplx> q(n, 1e-8);
  for (const auto& r : all_critical_points(n, lambda, q).records) {
    const VectorXc w0 = start_point(r.chart, lambda);
    EXPECT_LT((r.coordinates - w0).cwiseAbs().maxCoeff(), 1e-5) << r.chart.label();
  }
}

INSTANTIATE_TEST_SUITE_P(Small, CensusTest, ::testing::Values(1, 2, 3));

TEST(UvIdentity, HoldsForAllChartsUpToThree) {
  for (int n = 1; n <= 3; ++n) {
    const auto report = uv_identity_report(n);
    EXPECT_TRUE(report.factorization_ok) << n;
    EXPECT_TRUE(report.identity_ok) << n << ": "
                                    << (report.failures.empty() ? "" : report.failures.front().detail);
  }
}

TEST(UvIdentity, FactorizationExplicitN1) {
  const mirror::MirrorGraph g(1);
  const auto a = a_matrix(g, 1);
  EXPECT_EQ(u_matrix(g, 1) * v_matrix(g, 1), a);
  EXPECT_TRUE(a_matrix(g, 2).is_zero());
  EXPECT_EQ(a_matrix(g, 2).rows(), 1u);
  EXPECT_THROW(uv_identity_report(5), std::invalid_argument);
}
