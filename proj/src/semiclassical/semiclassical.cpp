#include "todalab/semiclassical/semiclassical.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "todalab/exact/bernoulli.hpp"
#include "todalab/oscillatory/integrals.hpp"

namespace todalab::semiclassical {

FixedPointData fixed_point_data(const std::vector<int>& permutation, int max_l) {
  FixedPointData fp;
  fp.permutation = permutation;
  const int n = static_cast<int>(permutation.size()) - 1;
  for (int i = n; i >= 0; --i)
    for (int j = 0; j < i; ++j)
      fp.weights.push_back(LaurentPolynomial::variable(exact::lambda(permutation[i])) -
                           LaurentPolynomial::variable(exact::lambda(permutation[j])));
  for (int l = 1; l <= max_l; l += 2) {
    RationalFunction sum;
    for (const auto& chi : fp.weights) sum += RationalFunction::fraction(LaurentPolynomial(1), chi, l);
    fp.power_sums.emplace(l, sum);
  }
  return fp;
}

std::vector<Rational> gamma_stirling_tail(int K) {
  if (K < 1) throw std::invalid_argument("K must be at least 1");
  return exact::stirling_coefficients(K);
}

double stirling_partial_sum(double z, int K) {
  double s = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * std::numbers::pi);
  const auto c = gamma_stirling_tail(K);
  for (int i = 1; i <= K; ++i) s += exact::to_double(c[i - 1]) / std::pow(z, 2 * i - 1);
  return s;
}

HbarSeries<RationalFunction> classical_limit_b(const FixedPointData& fp, int K) {
  HbarSeries<RationalFunction> b(2 * K - 1);
  for (int k = 1; k <= K; ++k) {
    auto it = fp.power_sums.find(2 * k - 1);
    if (it == fp.power_sums.end()) throw std::invalid_argument("fixed point data lacks N_" + std::to_string(2 * k - 1));
    const Rational c = exact::bernoulli(2 * k) / Rational(2 * k) / Rational(2 * k - 1);
    b.set(2 * k - 1, it->second * c);
  }
  return b;
}

HbarSeries<RationalFunction> stirling_weight_sum(const FixedPointData& fp, int K) {
  const auto c = gamma_stirling_tail(K);
  HbarSeries<RationalFunction> total(2 * K - 1);
  for (const auto& chi : fp.weights) {
    // c_i z^{-(2i-1)} at z = chi / hbar is c_i chi^{-(2i-1)} hbar^{2i-1}
    HbarSeries<RationalFunction> one(2 * K - 1);
    for (int i = 1; i <= K; ++i) one.set(2 * i - 1, RationalFunction::fraction(LaurentPolynomial(c[i - 1]), chi, 2 * i - 1));
    total += one;
  }
  return total;
}

std::optional<int> homogeneous_degree(const RationalFunction& f) {
  std::optional<int> degree;
  auto poly_degree = [](const LaurentPolynomial::TermMap& terms) -> std::optional<int> {
    std::optional<int> d;
    for (const auto& [m, c] : terms) {
      if (d && *d != m.total_degree()) return std::nullopt;
      d = m.total_degree();
    }
    return d;
  };
  for (const auto& [den, num] : f.parts()) {
    auto d = poly_degree(num.terms());
    if (!d) return std::nullopt;
    int total = *d;
    for (const auto& [factor, power] : den) {
      auto fd = poly_degree(factor);
      if (!fd) return std::nullopt;
      total -= power * *fd;
    }
    if (degree && *degree != total) return std::nullopt;
    degree = total;
  }
  return degree;
}

ClassicalLimitReport verify_classical_limit(const std::vector<int>& permutation, int K) {
  const auto fp = fixed_point_data(permutation, 2 * K - 1);
  const auto b = classical_limit_b(fp, K);
  const auto lhs = stirling_weight_sum(fp, K);
  ClassicalLimitReport rep;
  rep.permutation = permutation;
  rep.K = K;
  rep.matches = true;
  for (int k = 1; k <= 2 * K - 1; ++k)
    if (!(lhs.coefficient(k) - b.coefficient(k)).is_zero()) {
      rep.matches = false;
      rep.first_mismatch = k;
      break;
    }
  rep.orthogonal = (b + b.reflected()).is_zero();
  rep.homogeneous = true;
  for (const auto& [k, c] : b.terms()) {
    const auto d = homogeneous_degree(c);
    rep.homogeneous = rep.homogeneous && d && *d == -k;
  }
  return rep;
}

std::vector<ClassicalLimitReport> verify_all_classical_limits(int n, int K, Execution exec) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n + 1);
  for (int i = 0; i <= n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<ClassicalLimitReport> out(perms.size());
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (std::size_t i = 0; i < perms.size(); ++i) out[i] = verify_classical_limit(perms[i], K);
  } else {
    for (std::size_t i = 0; i < perms.size(); ++i) out[i] = verify_classical_limit(perms[i], K);
  }
  return out;
}

cplx stationary_leading(const CriticalPointRecord& r, cplx amplitude, HessianFrame frame) {
  return amplitude / (frame == HessianFrame::Log ? r.sqrt_log_hessian_det : r.sqrt_hessian_det());
}

NamedAmplitude amplitude_one() {
  return {"1", 0, [](const CriticalPointRecord&) { return cplx(1.0); }};
}

NamedAmplitude amplitude_momentum(int i) {
  return {"p" + std::to_string(i), 1, [i](const CriticalPointRecord& r) { return critical::to_lagrangian(r).p.at(i); }};
}

PsiOscMatrix psi_osc(const critical::CriticalCensus& census, const std::vector<NamedAmplitude>& amplitudes,
                     HessianFrame frame) {
  PsiOscMatrix psi;
  psi.entries = MatrixXc(amplitudes.size(), census.records.size());
  for (const auto& a : amplitudes) psi.amplitudes.push_back(a.name);
  for (std::size_t s = 0; s < census.records.size(); ++s) {
    const auto& r = census.records[s];
    psi.charts.push_back(r.chart.label());
    for (std::size_t k = 0; k < amplitudes.size(); ++k)
      psi.entries(static_cast<int>(k), static_cast<int>(s)) = stationary_leading(r, amplitudes[k].value(r), frame);
  }
  return psi;
}

GramReport gram_variation(int n, const std::vector<double>& lambda, const std::vector<std::vector<cplx>>& q_grid,
                          const std::vector<NamedAmplitude>& amplitudes, HessianFrame frame) {
  GramReport rep;
  for (const auto& q : q_grid) {
    const auto census = critical::all_critical_points(n, lambda, q);
    const auto psi = psi_osc(census, amplitudes, frame);
    rep.grams.push_back(psi.entries * psi.entries.transpose());
  }
  for (const auto& g : rep.grams) rep.variation = std::max(rep.variation, (g - rep.grams.front()).cwiseAbs().maxCoeff());
  return rep;
}

LaplaceCheck laplace_consistency(int n, const std::vector<double>& lambda, const std::vector<double>& q, double hbar,
                                 std::optional<double> prefactor_exponent) {
  std::vector<cplx> qc(q.begin(), q.end());
  const auto census = critical::all_critical_points(n, lambda, qc);
  const CriticalPointRecord* real_point = nullptr;
  for (const auto& r : census.records) {
    bool positive = true;
    for (int k = 0; k < r.coordinates.size(); ++k)
      positive = positive && r.coordinates[k].real() > 0 &&
                 std::abs(r.coordinates[k].imag()) <= 1e-9 * r.coordinates[k].real();
    if (positive) real_point = &r;
  }
  if (!real_point) throw std::runtime_error("no critical point on the positive torus");
  std::vector<double> t{0.0};
  for (double qi : q) t.push_back(t.back() + std::log(qi));
  const osc::IntegralTask task{n, lambda, hbar, real_point->chart, t, {}};
  LaplaceCheck out;
  out.chart = real_point->chart.label();
  out.integral = osc::evaluate(task).value;
  const double d = real_point->coordinates.size();
  const double e = prefactor_exponent.value_or(d / 2);
  out.leading = std::exp(real_point->critical_value / hbar) * std::pow(2 * std::numbers::pi * std::abs(hbar), e) /
                real_point->sqrt_log_hessian_det;
  out.rel_mismatch = std::abs(out.integral / out.leading - 1.0);
  return out;
}

}  // namespace todalab::semiclassical
