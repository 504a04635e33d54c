#include "todalab/oscillatory/integrals.hpp"

#include <omp.h>

#include <cmath>
#include <complex>
#include <map>

#include "todalab/critical/critical.hpp"
#include "todalab/exact/symmetric.hpp"
#include "todalab/toda/toda.hpp"

namespace todalab::osc {

std::vector<double> q_from_t(const std::vector<double>& t) {
  std::vector<double> q;
  for (std::size_t i = 1; i < t.size(); ++i) q.push_back(std::exp(t[i] - t[i - 1]));
  return q;
}

ConvexPhase chart_phase(const mirror::SigmaChart& chart, const std::vector<double>& lambda,
                        const std::vector<double>& q) {
  const auto& vars = chart.variables();
  const int d = static_cast<int>(vars.size());
  std::map<exact::Symbol, int> pos;
  for (int k = 0; k < d; ++k) pos.emplace(vars[k].symbol, k);
  ConvexPhase g;
  g.sigma.resize(d);
  for (int k = 0; k < d; ++k) {
    g.sigma[k] = critical::evaluate_lambda_form(chart.exponent(vars[k].i, vars[k].j), lambda);
    ConvexPhase::Term t{std::vector<int>(d, 0), 1.0};
    t.exponent[k] = 1;
    g.terms.push_back(t);
  }
  for (const auto& e : chart.eliminated()) {
    ConvexPhase::Term t{std::vector<int>(d, 0), 1.0};
    for (const auto& [s, p] : e.value.factors()) {
      if (auto it = pos.find(s); it != pos.end()) {
        t.exponent[it->second] = p;
        continue;
      }
      for (int i = 1; i <= chart.n(); ++i)
        if (s == exact::toda_q(i)) t.coefficient *= std::pow(q[i - 1], p);
    }
    g.terms.push_back(t);
  }
  return g;
}

double chart_constant(const mirror::SigmaChart& chart, const std::vector<double>& lambda, const std::vector<double>& q) {
  double c = 0;
  for (int i = 1; i <= chart.n(); ++i)
    c += critical::evaluate_lambda_form(chart.q_log_coefficient(i), lambda) * std::log(q[i - 1]);
  return c;
}

void validate_task(const IntegralTask& task) {
  if (task.n < 1 || task.n > 2) throw std::invalid_argument("oscillatory integrals support n = 1 or 2");
  if (!(task.hbar < 0)) throw std::invalid_argument("hbar must be negative");
  if (static_cast<int>(task.lambda.size()) != task.n + 1) throw std::invalid_argument("lambda must have n+1 entries");
  if (static_cast<int>(task.t.size()) != task.n + 1) throw std::invalid_argument("t must have n+1 entries");
  if (task.chart.n() != task.n) throw std::invalid_argument("chart is for a different n");
  double sum = 0;
  for (double l : task.lambda) sum += l;
  if (std::abs(sum) > 1e-12) throw std::invalid_argument("lambda must sum to zero");
}

QuadratureResult evaluate(const IntegralTask& task, Execution exec) {
  validate_task(task);
  const auto q = q_from_t(task.t);
  auto r = integrate(chart_phase(task.chart, task.lambda, q), -task.hbar, task.controls, exec);
  const double c = std::exp(chart_constant(task.chart, task.lambda, q) / task.hbar);
  r.value *= c;
  r.error *= c;
  return r;
}

double evaluate_on_grid(const IntegralTask& task, const QuadratureGrid& grid, Execution exec) {
  validate_task(task);
  const auto q = q_from_t(task.t);
  return integrate_on_grid(chart_phase(task.chart, task.lambda, q), -task.hbar, grid, exec) *
         std::exp(chart_constant(task.chart, task.lambda, q) / task.hbar);
}

double bessel_k(double nu, double x) {
  if (!(x > 0)) throw std::invalid_argument("bessel_k requires x > 0");
  // cut off where x cosh u - |nu| u exceeds the value at 0 by 60
  double upper = 1.0;
  while (x * std::cosh(upper) - std::abs(nu) * upper - x < 60.0) upper += 0.5;
  auto f = [&](double u) { return std::exp(-x * (std::cosh(u) - 1.0)) * std::cosh(nu * u); };
  int cells = 16;
  double step = upper / cells;
  double sum = 0.5 * (f(0.0) + f(upper));
  for (int i = 1; i < cells; ++i) sum += f(i * step);
  double prev = sum * step;
  for (int level = 0; level < 20; ++level) {
    for (int i = 0; i < cells; ++i) sum += f((i + 0.5) * step);
    cells *= 2;
    step /= 2;
    const double cur = sum * step;
    if (std::abs(cur - prev) <= 1e-15 * std::abs(cur) && level >= 2) return cur * std::exp(-x);
    prev = cur;
  }
  return prev * std::exp(-x);
}

double n1_bessel_value(double lambda0, double q, double hbar) {
  const double h = -hbar;
  return 2.0 * bessel_k(2.0 * lambda0 / h, 2.0 * std::sqrt(q) / h);
}

std::vector<std::pair<int, double>> central_stencil(int order) {
  switch (order) {
    case 0: return {{0, 1.0}};
    case 1: return {{-1, -0.5}, {1, 0.5}};
    case 2: return {{-1, 1.0}, {0, -2.0}, {1, 1.0}};
    case 3: return {{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}};
    case 4: return {{-2, 1.0}, {-1, -4.0}, {0, 6.0}, {1, -4.0}, {2, 1.0}};
    default: throw std::invalid_argument("central stencils are tabulated up to order 4");
  }
}

namespace {

using XPoly = std::map<std::vector<int>, double>;  // polynomial in d/dx_1..d/dx_n

// D_i as a constant-coefficient polynomial in d/dx at the base q.
XPoly operator_in_x(const toda::DifferentialOperator& op, int n, const std::vector<double>& q, double hbar) {
  const std::function<double(exact::Symbol)> lookup = [&](exact::Symbol s) {
    if (s == exact::hbar()) return hbar;
    for (int i = 1; i <= n; ++i)
      if (s == exact::toda_q(i)) return q[i - 1];
    throw std::invalid_argument("unexpected symbol " + s.name());
  };
  XPoly total;
  for (const auto& [kappa, coef] : op.terms()) {
    // d/dt_i = d/dx_i - d/dx_{i+1}, the x indices running over 1..n
    XPoly p{{std::vector<int>(n, 0), coef.evaluate(lookup)}};
    for (int i = 0; i <= n; ++i)
      for (int rep = 0; rep < kappa[i]; ++rep) {
        XPoly next;
        for (const auto& [beta, c] : p) {
          if (i >= 1) {
            auto b = beta;
            ++b[i - 1];
            next[b] += c * hbar;
          }
          if (i + 1 <= n) {
            auto b = beta;
            ++b[i];
            next[b] -= c * hbar;
          }
        }
        p = std::move(next);
      }
    for (const auto& [beta, c] : p) total[beta] += c;
  }
  for (auto it = total.begin(); it != total.end();) it = it->second == 0.0 ? total.erase(it) : std::next(it);
  return total;
}

}  // namespace

EigenReport eigen_residual(int n, const std::vector<double>& lambda, double hbar, const std::vector<double>& t_base,
                           double h_step, std::optional<mirror::SigmaChart> chart, const QuadratureControls& controls,
                           Execution exec) {
  const mirror::MirrorGraph graph(n);
  IntegralTask base{n, lambda, hbar, chart ? *chart : mirror::all_charts(graph).front(), t_base, controls};
  validate_task(base);
  const auto q = q_from_t(t_base);

  EigenReport rep;
  rep.n = n;
  rep.lambda = lambda;
  rep.q = q;
  rep.hbar = hbar;
  rep.step = h_step;

  const auto first = evaluate(base, exec);
  if (!first.converged) throw std::runtime_error("quadrature did not converge at the base point");
  rep.evaluations = first.evaluations;
  QuadratureGrid grid = first.grid;
  // room for the minimum to move across the stencil
  for (std::size_t k = 0; k < grid.lo.size(); ++k) {
    grid.lo[k] -= 2.0;
    grid.hi[k] += 2.0;
  }
  rep.grid = grid;

  const auto ops = toda::toda_operators(n);
  std::vector<XPoly> polys;
  for (const auto& op : ops) polys.push_back(operator_in_x(op, n, q, hbar));

  // Offsets in units of h/2: the coarse stencil uses even multiples.
  std::map<std::vector<int>, double> values;
  for (const auto& p : polys)
    for (const auto& [beta, c] : p)
      for (int scale : {2, 1}) {
        std::vector<std::vector<int>> pts{{}};
        for (int a = 0; a < n; ++a) {
          std::vector<std::vector<int>> next;
          for (const auto& pt : pts)
            for (const auto& [off, w] : central_stencil(beta[a])) {
              auto e = pt;
              e.push_back(off * scale);
              next.push_back(e);
            }
          pts = std::move(next);
        }
        for (const auto& pt : pts) values.emplace(pt, 0.0);
      }
  std::vector<std::vector<int>> keys;
  for (const auto& [k, v] : values) keys.push_back(k);
  std::vector<double> results(keys.size());
  auto eval_point = [&](std::size_t i) {
    IntegralTask task = base;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b <= n; ++b) task.t[b] += keys[i][a] * h_step / 2;
    results[i] = evaluate_on_grid(task, grid, Execution::Serial);
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (std::size_t i = 0; i < keys.size(); ++i) eval_point(i);
  } else {
    for (std::size_t i = 0; i < keys.size(); ++i) eval_point(i);
  }
  for (std::size_t i = 0; i < keys.size(); ++i) values[keys[i]] = results[i];
  rep.stencil_points = keys.size();
  rep.evaluations += static_cast<long>(keys.size()) * grid.total_nodes();
  const double center = values.at(std::vector<int>(n, 0));
  rep.value = center;

  auto derivative = [&](const std::vector<int>& beta, int scale) {
    const double h = h_step * scale / 2;
    std::vector<std::pair<std::vector<int>, double>> pts{{{}, 1.0}};
    int order = 0;
    for (int a = 0; a < n; ++a) {
      order += beta[a];
      std::vector<std::pair<std::vector<int>, double>> next;
      for (const auto& [pt, w] : pts)
        for (const auto& [off, w1] : central_stencil(beta[a])) {
          auto e = pt;
          e.push_back(off * scale);
          next.emplace_back(e, w * w1);
        }
      pts = std::move(next);
    }
    double acc = 0;
    for (const auto& [pt, w] : pts) acc += w * values.at(pt);
    return acc / std::pow(h, order);
  };

  const auto sigma = exact::elementary_symmetric_sigma(lambda);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    double coarse = 0, fine = 0;
    for (const auto& [beta, c] : polys[i]) {
      coarse += c * derivative(beta, 2);
      fine += c * derivative(beta, 1);
    }
    const double applied = (4 * fine - coarse) / 3;
    rep.residuals.push_back(std::abs(applied - sigma[i] * center) / std::abs(center));
  }
  return rep;
}

std::optional<mirror::SigmaChart> find_admissible_chart(int n, const std::vector<double>& lambda, double hbar) {
  const mirror::MirrorGraph graph(n);
  for (const auto& chart : mirror::all_charts(graph)) {
    bool ok = true;
    for (const auto& v : chart.variables())
      ok = ok && critical::evaluate_lambda_form(chart.exponent(v.i, v.j), lambda) / hbar > 0;
    if (ok) return chart;
  }
  return std::nullopt;
}

FactorizationResult q_to_zero_factorization(int n, const std::vector<double>& lambda, double hbar,
                                            const mirror::SigmaChart& chart, double q_small,
                                            const QuadratureControls& controls) {
  if (!(hbar < 0)) throw std::invalid_argument("hbar must be negative");
  if (!(q_small > 0)) throw std::invalid_argument("q must be positive");
  const std::vector<double> q(n, q_small);
  const ConvexPhase g = chart_phase(chart, lambda, q);
  FactorizationResult r;
  r.product = 1.0;
  for (int k = 0; k < g.dim(); ++k) {
    const double a = g.sigma[k] / hbar;
    if (!(a > 0)) throw NoAdmissibleChart("chart " + chart.label() + " has sigma/hbar <= 0");
    r.product *= std::tgamma(a) * std::pow(-hbar, a);
  }
  const auto res = integrate(g, -hbar, controls);
  if (!res.converged) throw std::runtime_error("quadrature did not converge");
  r.rescaled = res.value;
  r.mismatch = std::abs(r.rescaled / r.product - 1.0);
  return r;
}

Cp1Report cp1_example_check(double lambda0, const std::vector<double>& q_grid) {
  using cplx = std::complex<double>;
  if (lambda0 == 0.0) throw std::invalid_argument("the example needs lambda_0 != 0");
  Cp1Report rep;
  rep.lambda0 = lambda0;
  rep.q_grid = q_grid;
  const double lambda1 = -lambda0;
  const std::vector<double> lambda{lambda0, lambda1};
  const mirror::MirrorGraph graph(1);
  const auto charts = mirror::all_charts(graph);
  const double dt = 1e-3;
  const std::vector<std::pair<int, double>> d1{{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}};
  auto closed_form = [&](cplx p) { return 2.0 * p + lambda0 * std::log(lambda1 + p) + lambda1 * std::log(lambda0 + p); };

  for (double q : q_grid) {
    if (!(q > 0)) throw std::invalid_argument("q grid must be positive");
    const double p_plus = std::sqrt(lambda0 * lambda0 + q);
    rep.root_residual = std::max({rep.root_residual, std::abs(-p_plus * p_plus + lambda0 * lambda0 + q)});
    for (const auto& chart : charts) {
      cplx du = 0;
      for (const auto& [off, w] : d1) {
        const auto rec = critical::continue_to(chart, lambda, {cplx(q * std::exp(off * dt))});
        du += w * rec.critical_value / dt;
      }
      const double p = std::abs(du.real() - p_plus) < std::abs(du.real() + p_plus) ? p_plus : -p_plus;
      cplx dF = 0;
      for (const auto& [off, w] : d1) {
        const double pt = (p > 0 ? 1 : -1) * std::sqrt(lambda0 * lambda0 + q * std::exp(off * dt));
        dF += w * closed_form(pt) / dt;
      }
      rep.closed_form_mismatch = std::max(rep.closed_form_mismatch, std::abs(du - dF));
      rep.momentum_mismatch = std::max(rep.momentum_mismatch, std::abs(du - p));
    }

    // frame of the example at this q
    const cplx v = std::sqrt(cplx(p_plus));
    const cplx i(0, 1);
    Eigen::Matrix2cd m;
    m << 0.0, std::pow(v, 4), 1.0, 0.0;
    Eigen::Matrix2cd psi;
    psi << v, -i * v, 1.0 / v, i / v;
    psi /= std::sqrt(2.0);
    const Eigen::Vector2cd r1 = m * psi.col(0) - p_plus * psi.col(0);
    const Eigen::Vector2cd r2 = m * psi.col(1) + p_plus * psi.col(1);
    rep.psi_eigen_residual = std::max({rep.psi_eigen_residual, r1.norm(), r2.norm()});
    Eigen::Matrix2cd pairing;
    pairing << 0.0, 1.0, 1.0, 0.0;
    const Eigen::Matrix2cd gram = psi.transpose() * pairing * psi - Eigen::Matrix2cd::Identity();
    rep.psi_pairing_residual = std::max(rep.psi_pairing_residual, gram.norm());
  }
  return rep;
}

}  // namespace todalab::osc
