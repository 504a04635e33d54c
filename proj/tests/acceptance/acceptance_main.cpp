// One line per acceptance criterion; exit status 0 only if every criterion passes.

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "todalab/critical/critical.hpp"
#include "todalab/critical/uv_identity.hpp"
#include "todalab/oscillatory/integrals.hpp"
#include "todalab/semiclassical/semiclassical.hpp"
#include "todalab/toda/toda.hpp"
#include "todalab/virasoro/quantization.hpp"

using namespace todalab;
using critical::cplx;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
};

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

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

// Censuses shared by criteria 2 and 3.
std::vector<critical::CriticalCensus>& censuses() {
  static std::vector<critical::CriticalCensus> all = [] {
    std::vector<critical::CriticalCensus> out;
    std::mt19937 rng(20240601);
    for (int n = 1; n <= 3; ++n)
      for (int draw = 0; draw < 3; ++draw) {
        const auto lambda = random_lambda(n, rng);
        const auto q = random_q(n, rng);
        out.push_back(critical::all_critical_points(n, lambda, q));
      }
    return out;
  }();
  return all;
}

void toda_commutativity(Verdict& v) {
  std::size_t checked = 0;
  for (int n = 1; n <= 3; ++n) {
    const auto d = toda::toda_operators(n);
    const auto h = toda::build_hamiltonian(n);
    for (int i = 0; i <= n; ++i) {
      for (int j = i + 1; j <= n; ++j, ++checked)
        if (!toda::commutator(d[i], d[j]).is_zero()) {
          v.pass = false;
          v.detail << " [D" << i + 1 << ",D" << j + 1 << "]!=0 at n=" << n;
        }
      ++checked;
      if (!toda::commutator(h, d[i]).is_zero()) {
        v.pass = false;
        v.detail << " [H,D" << i + 1 << "]!=0 at n=" << n;
      }
    }
  }
  v.detail << checked << " commutators, n=1..3, all exactly zero";
}

void census(Verdict& v) {
  double min_det = INFINITY;
  for (const auto& c : censuses()) {
    const int n = c.records.front().chart.n();
    int good = 0;
    for (const auto& r : c.records) {
      min_det = std::min(min_det, std::abs(r.log_hessian_det));
      if (r.nondegenerate && std::abs(r.log_hessian_det) > 1e-8) ++good;
    }
    if (good != factorial(n + 1) || static_cast<long>(c.records.size()) != factorial(n + 1) || !c.all_distinct) {
      v.pass = false;
      v.detail << "n=" << n << ": " << good << " good of " << c.records.size() << "; ";
    }
  }
  v.detail << "counts 2/6/24 over 3 draws each; min |det log-Hessian| = " << min_det;
}

void spectral(Verdict& v) {
  double worst_spec = 0, worst_lag = 0;
  std::size_t points = 0;
  for (const auto& c : censuses())
    for (const auto& r : c.records) {
      ++points;
      worst_spec = std::max(worst_spec, critical::spectral_check(r));
      for (double x : critical::to_lagrangian(r).residuals) worst_lag = std::max(worst_lag, x);
    }
  v.pass = worst_spec < 1e-8 && worst_lag < 1e-8;
  v.detail << points << " points; max spectral " << worst_spec << ", max phi-image " << worst_lag;
}

void uv_identity(Verdict& v) {
  std::size_t checks = 0;
  for (int n = 1; n <= 3; ++n) {
    const auto rep = critical::uv_identity_report(n);
    checks += rep.checks;
    if (!rep.ok()) {
      v.pass = false;
      v.detail << "n=" << n << " fails (" << rep.failures.size() << "); ";
    }
  }
  v.detail << checks << " exact matrix identities, n=1..3";
}

// -hbar^2 F'' + q F + lambda_0^2 F = 0 in x = ln q, 4th-order central differences.
double bessel_ode_residual(double lambda0, double q, double hbar) {
  const double h = -hbar, nu = 2 * lambda0 / h, x0 = std::log(q), dx = 1e-2;
  auto F = [&](double x) { return 2 * boost::math::cyl_bessel_k(nu, 2 * std::exp(x / 2) / h); };
  const double f0 = F(x0);
  const double f2 = (-F(x0 + 2 * dx) + 16 * F(x0 + dx) - 30 * f0 + 16 * F(x0 - dx) - F(x0 - 2 * dx)) / (12 * dx * dx);
  return std::abs(-hbar * hbar * f2 + q * f0 + lambda0 * lambda0 * f0) / std::abs(f0);
}

void eigen(Verdict& v) {
  double worst1 = 0, worst_oracle = 0, worst_ode = 0;
  for (double lambda0 : {0.25, 0.5})
    for (double q : {0.5, 1.0, 2.0}) {
      const auto rep = osc::eigen_residual(1, {lambda0, -lambda0}, -1.0, {0.0, std::log(q)});
      for (double r : rep.residuals) worst1 = std::max(worst1, r);
      const double oracle = 2 * boost::math::cyl_bessel_k(2 * lambda0, 2 * std::sqrt(q));
      worst_oracle = std::max(worst_oracle, std::abs(rep.value / oracle - 1));
      worst_ode = std::max(worst_ode, bessel_ode_residual(lambda0, q, -1.0));
    }
  const auto rep2 = osc::eigen_residual(2, {0.25, 0.125, -0.375}, -1.0, {0.0, 0.0, 0.0});
  const double worst2 = *std::max_element(rep2.residuals.begin(), rep2.residuals.end());
  v.pass = worst1 < 1e-6 && worst_ode < 1e-6 && worst_oracle < 1e-8 && worst2 < 1e-3 && rep2.residuals.size() == 3;
  v.detail << "n=1 quadrature " << worst1 << ", Bessel-K oracle ODE " << worst_ode << ", oracle agreement "
           << worst_oracle << "; n=2 max over D1..D3 " << worst2;
}

void factorization(Verdict& v) {
  for (int n : {1, 2}) {
    const std::vector<double> lambda = n == 1 ? std::vector<double>{-1.0, 1.0} : std::vector<double>{-1.5, 0.0, 1.5};
    const auto chart = osc::find_admissible_chart(n, lambda, -1.0);
    if (!chart) {
      v.pass = false;
      v.detail << "n=" << n << " no admissible chart; ";
      continue;
    }
    const auto a = osc::q_to_zero_factorization(n, lambda, -1.0, *chart, 1e-4);
    const auto b = osc::q_to_zero_factorization(n, lambda, -1.0, *chart, 1e-6);
    v.pass = v.pass && a.mismatch < 1e-3 && b.mismatch < a.mismatch;
    v.detail << "n=" << n << " chart " << chart->label() << ": " << a.mismatch << " at 1e-4, " << b.mismatch
             << " at 1e-6; ";
  }
}

void classical_limit(Verdict& v) {
  std::size_t perms = 0;
  for (int n = 1; n <= 3; ++n)
    for (const auto& r : semiclassical::verify_all_classical_limits(n, 4)) {
      ++perms;
      if (!r.matches) {
        v.pass = false;
        v.detail << "mismatch at n=" << n << "; ";
      }
    }
  v.detail << perms << " permutations, n=1..3, exact through hbar^7";
}

void quasi_homogeneity(Verdict& v) {
  std::mt19937 rng(77);
  double worst = 0;
  for (int n = 1; n <= 2; ++n) {
    const auto lambda = random_lambda(n, rng);
    const auto q = random_q(n, rng);
    const auto base = critical::all_critical_points(n, lambda, q);
    for (double c : {2.0, 1.0 / 3.0}) {
      auto l2 = lambda;
      for (auto& x : l2) x *= c;
      auto q2 = q;
      for (auto& x : q2) x *= c * c;
      const auto scaled = critical::all_critical_points(n, l2, q2);
      if (scaled.records.size() != base.records.size()) {
        v.pass = false;
        continue;
      }
      for (std::size_t i = 0; i < base.records.size(); ++i) {
        const cplx expected = c * base.records[i].critical_value;
        worst = std::max(worst,
                         std::abs(scaled.records[i].critical_value - expected) / std::max(1.0, std::abs(expected)));
      }
    }
  }
  v.pass = v.pass && worst < 1e-8;
  v.detail << "all charts, n<=2, c in {2,1/3}; max relative deviation " << worst;
}

void virasoro_algebra(Verdict& v) {
  using namespace virasoro;
  const auto space = LoopSpace::standard(1);
  for (int m = -1; m <= 2; ++m)
    if (quantize(space, point_operator(1, m), 8) != point_virasoro(m, 8).restricted(8)) {
      v.pass = false;
      v.detail << "quantize(D_" << m << ") differs; ";
    }
  int pairs = 0;
  for (int m = -1; m <= 2; ++m)
    for (int mp = -1; mp <= 2; ++mp) {
      if (m + mp < -1 || m + mp > 2) continue;
      ++pairs;
      const auto r = commutation_check(m, mp, 4, 3);
      const Rational forced = m + mp == 0 ? exact::make_rational(m - mp, 16) : Rational(0);
      if (r.kind == CommutatorResidual::Kind::Operator || r.scalar != forced || !r.window_stable) {
        v.pass = false;
        v.detail << "(" << m << "," << mp << ") residual " << kind_name(r.kind) << "; ";
      }
    }
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int N = 1; N <= 3; ++N)
    for (int draw = 0; draw < 2; ++draw) {
      auto mu = exact::rational_zero(N, N), rho = exact::rational_zero(N, N);
      for (int i = 0; i < N; ++i) {
        mu[i][i] = exact::make_rational(num(rng), den(rng));
        for (int j = 0; j < i; ++j) rho[i][j] = exact::make_rational(num(rng), den(rng));
      }
      for (int m = -1; m <= 2; ++m)
        for (int mp = -1; mp <= 2; ++mp)
          if (m + mp >= -1 && !family_bracket_holds(mu, rho, m, mp, Rational(mp - m), 6)) {
            v.pass = false;
            v.detail << "family bracket fails N=" << N << "; ";
          }
    }
  v.detail << "4 explicit operators, " << pairs
           << " commutator pairs on degree<=3 monomials in q0..q4, family bracket at N=1..3 (L2 eps term 3/8)";
}

void cp1(Verdict& v) {
  const auto rep = osc::cp1_example_check(0.5, {0.5, 1.0, 2.0});
  v.pass = rep.closed_form_mismatch < 1e-8 && rep.momentum_mismatch < 1e-8;
  v.detail << "d/dt closed form " << rep.closed_form_mismatch << ", du/dt - p " << rep.momentum_mismatch;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria{
      {"Toda commutativity", toda_commutativity},
      {"critical-point census", census},
      {"spectral identity and phi-image", spectral},
      {"UV matrix identity", uv_identity},
      {"eigenvalue equations", eigen},
      {"q->0 factorization", factorization},
      {"classical-limit identity", classical_limit},
      {"quasi-homogeneity", quasi_homogeneity},
      {"Virasoro algebra", virasoro_algebra},
      {"CP1 example", cp1},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << "exception: " << e.what();
    }
    failures += v.pass ? 0 : 1;
    std::printf("criterion %2zu %s: %s | %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first,
                v.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
