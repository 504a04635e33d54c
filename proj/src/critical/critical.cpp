#include "todalab/critical/critical.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "todalab/exact/symmetric.hpp"
#include "todalab/toda/toda.hpp"

namespace todalab::critical {
namespace {

double row_scaled_abs_det(const MatrixXc& m) {
  MatrixXc s = m;
  for (int r = 0; r < s.rows(); ++r) {
    const double norm = s.row(r).norm();
    if (norm == 0.0) return 0.0;
    s.row(r) /= norm;
  }
  return std::abs(s.determinant());
}

double max_abs(const VectorXc& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

bool all_finite(const VectorXc& v) {
  for (int i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) return false;
  return true;
}

// Magnitude of the largest summand in each gradient component, used to make
// the Newton stopping rule relative.
double gradient_scale(const CompiledPhase& ph, const VectorXc& s, cplx z) {
  double scale = 1.0 + ph.sigma().cwiseAbs().maxCoeff();
  for (const auto& t : ph.terms()) {
    cplx arg = 0.0;
    for (int k = 0; k < s.size(); ++k) arg += t.exponent[k] * s[k];
    cplx c = t.coefficient;
    for (int i = 0; i < t.q_degree; ++i) c *= z;
    scale = std::max(scale, std::abs(c * std::exp(arg)) * t.exponent.cwiseAbs().maxCoeff());
  }
  return scale;
}

}  // namespace

cplx CriticalPointRecord::sqrt_hessian_det() const {
  cplx prod = 1.0;
  for (int k = 0; k < coordinates.size(); ++k) prod *= coordinates[k];
  return sqrt_log_hessian_det / prod;
}

VectorXc start_point(const mirror::SigmaChart& chart, const std::vector<double>& lambda) {
  const auto& vars = chart.variables();
  VectorXc w(static_cast<int>(vars.size()));
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const double s = evaluate_lambda_form(chart.exponent(vars[k].i, vars[k].j), lambda);
    if (std::abs(s) < 1e-12)
      throw DegenerateLambdaError("chart " + chart.label() + ": exponent sigma(" + std::to_string(vars[k].i) + "," +
                                  std::to_string(vars[k].j) + ") vanishes; lambda is not generic");
    w[static_cast<int>(k)] = -s;
  }
  return w;
}

CriticalPointRecord continue_to(const mirror::SigmaChart& chart, const std::vector<double>& lambda,
                                const std::vector<cplx>& q_target, const ContinuationOptions& opt) {
  const CompiledPhase ph(chart, lambda, q_target);
  const int d = ph.dim();
  const VectorXc w0 = start_point(chart, lambda);
  VectorXc s = w0.array().log();

  auto z_of = [&](double tau) { return cplx(tau, opt.detour * tau * (1.0 - tau)); };

  CriticalPointRecord rec{chart, lambda, q_target, {}, {}, 0.0, 0.0, {}, 0.0, {}, 0.0, 0.0, 0.0, false, 0, false, {}, {}};
  cplx det_prev = ph.log_hessian(s, 0.0).determinant();
  cplx sqrt_prev = std::sqrt(det_prev);
  const double det_scale = std::abs(det_prev);
  bool phase_jump = false;

  double tau = 0.0, dt = 1.0 / opt.initial_steps;
  const double min_dt = dt * std::ldexp(1.0, -opt.max_halvings);
  while (tau < 1.0) {
    const double tn = std::min(1.0, tau + dt);
    const cplx z0 = z_of(tau), z1 = z_of(tn);
    bool accepted = false;
    phase_jump = false;
    int newton_iters = 0;
    VectorXc sp;
    cplx det_new;
    {
      const MatrixXc j0 = ph.log_hessian(s, z0);
      const VectorXc ds = j0.partialPivLu().solve(ph.gradient_z(s, z0)) * (z1 - z0);
      sp = s - ds;
      bool ok = all_finite(sp) && max_abs(ds) <= 1.0;
      for (int it = 0; ok && it < opt.max_newton; ++it) {
        const VectorXc g = ph.gradient(sp, z1);
        if (!all_finite(g)) break;
        if (max_abs(g) <= 1e-10 * gradient_scale(ph, sp, z1)) {
          accepted = true;
          break;
        }
        const VectorXc step = ph.log_hessian(sp, z1).partialPivLu().solve(g);
        // A large first correction means the predictor left the basin.
        if (!all_finite(step) || (it == 0 && max_abs(step) > 0.1)) {
          ok = false;
          break;
        }
        sp -= step;
        ++newton_iters;
      }
      if (accepted) {
        const MatrixXc h = ph.log_hessian(sp, z1);
        det_new = h.determinant();
        if (std::abs(det_new) < opt.caustic_threshold * det_scale)
          throw CausticError("chart " + chart.label() + ": Hessian singular along the path", tn);
        // keep the determinant's phase change per step small so sqrt can be tracked
        phase_jump = std::abs(std::arg(det_new / det_prev)) > std::numbers::pi / 4;
        accepted = !phase_jump;
      }
    }
    if (!accepted) {
      dt /= 2;
      if (dt < min_dt && phase_jump)
        throw CausticError("chart " + chart.label() + ": Hessian determinant changes sign along the path", tau);
      if (dt < min_dt)
        throw ContinuationError("chart " + chart.label() + ": step size underflow at tau=" + std::to_string(tau), tau);
      continue;
    }
    cplx root = std::sqrt(det_new);
    if (std::abs(root - sqrt_prev) > std::abs(-root - sqrt_prev)) root = -root;
    sqrt_prev = root;
    det_prev = det_new;
    s = sp;
    tau = tn;
    ++rec.steps;
    if (newton_iters <= 2) dt = std::min(2 * dt, 0.25);
  }

  // polish at the target
  for (int it = 0; it < 50; ++it) {
    const VectorXc g = ph.gradient(s, 1.0);
    if (!all_finite(g)) throw ContinuationError("chart " + chart.label() + ": polish diverged", 1.0);
    if (max_abs(g) <= opt.tol * gradient_scale(ph, s, 1.0)) break;
    const VectorXc step = ph.log_hessian(s, 1.0).partialPivLu().solve(g);
    if (!all_finite(step)) throw ContinuationError("chart " + chart.label() + ": polish diverged", 1.0);
    s -= step;
  }

  const VectorXc g = ph.gradient(s, 1.0);
  rec.log_coordinates = s;
  rec.coordinates = s.array().exp();
  rec.gradient_norm = max_abs(g);
  if (!(rec.gradient_norm <= opt.tol * gradient_scale(ph, s, 1.0)))
    throw ContinuationError("chart " + chart.label() + ": polish did not reach tolerance", 1.0);
  rec.critical_value = ph.chart_constant() + ph.regular_value(s, 1.0);
  rec.log_hessian = ph.log_hessian(s, 1.0);
  rec.log_hessian_det = rec.log_hessian.determinant();
  {
    cplx root = std::sqrt(rec.log_hessian_det);
    if (std::abs(root - sqrt_prev) > std::abs(-root - sqrt_prev)) root = -root;
    rec.sqrt_log_hessian_det = root;
  }
  rec.hessian = MatrixXc(d, d);
  for (int k = 0; k < d; ++k)
    for (int l = 0; l < d; ++l)
      rec.hessian(k, l) =
          (rec.log_hessian(k, l) - (k == l ? g[k] : cplx(0.0))) / (rec.coordinates[k] * rec.coordinates[l]);
  rec.hessian_det = rec.hessian.determinant();
  rec.scaled_det = row_scaled_abs_det(rec.hessian);
  rec.nondegenerate = std::abs(rec.log_hessian_det) > opt.nondegeneracy_threshold;

  std::map<exact::Symbol, int> pos;
  for (int k = 0; k < d; ++k) pos.emplace(chart.variables()[k].symbol, k);
  for (const auto& [sym, mono] : chart.edge_monomials()) {
    cplx v = 1.0;
    for (const auto& [f, e] : mono.factors()) {
      if (auto it = pos.find(f); it != pos.end()) {
        v *= std::pow(rec.coordinates[it->second], e);
        continue;
      }
      for (int i = 1; i <= chart.n(); ++i)
        if (f == exact::toda_q(i)) v *= std::pow(q_target[i - 1], e);
    }
    rec.edges.emplace(sym, v);
  }
  return rec;
}

void validate_lambda(const std::vector<double>& lambda) {
  double sum = 0.0, scale = 1.0;
  for (double l : lambda) {
    sum += l;
    scale = std::max(scale, std::abs(l));
  }
  if (std::abs(sum) > 1e-12 * scale) throw DegenerateLambdaError("lambda must sum to zero");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if (std::abs(lambda[i] - lambda[j]) <= 1e-12 * scale)
        throw DegenerateLambdaError("lambda entries " + std::to_string(i) + " and " + std::to_string(j) +
                                    " coincide; generic lambda required");
}

double edge_distance(const CriticalPointRecord& a, const CriticalPointRecord& b) {
  double d = 0.0;
  for (const auto& [s, v] : a.edges) d = std::max(d, std::abs(v - b.edges.at(s)));
  return d;
}

CriticalCensus all_critical_points(int n, const std::vector<double>& lambda, const std::vector<cplx>& q,
                                   const ContinuationOptions& options, Execution exec) {
  validate_lambda(lambda);
  const mirror::MirrorGraph graph(n);
  const auto charts = mirror::all_charts(graph);
  const int count = static_cast<int>(charts.size());
  std::vector<std::optional<CriticalPointRecord>> slots(count);
  std::vector<std::string> errors(count);

  auto solve = [&](int c) {
    const double g0 = options.detour;
    const std::vector<double> detours =
        g0 == 0.0 ? std::vector<double>{0.0, 0.25, -0.25, 0.6, -0.6} : std::vector<double>{g0, -g0, 2.5 * g0, -2.5 * g0};
    std::string log;
    for (std::size_t attempt = 0; attempt < detours.size(); ++attempt) {
      ContinuationOptions o = options;
      o.detour = detours[attempt];
      try {
        auto rec = continue_to(charts[c], lambda, q, o);
        rec.detoured = attempt > 0;
        if (!log.empty()) rec.warnings.push_back(log);
        slots[c] = std::move(rec);
        return;
      } catch (const ContinuationError& e) {
        log += std::string(log.empty() ? "" : "; ") + e.what() + " (detour " + std::to_string(o.detour) + ")";
      }
    }
    errors[c] = log;
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
    for (int c = 0; c < count; ++c) solve(c);
  } else {
    for (int c = 0; c < count; ++c) solve(c);
  }

  CriticalCensus census;
  for (int c = 0; c < count; ++c) {
    if (slots[c])
      census.records.push_back(std::move(*slots[c]));
    else
      census.warnings.push_back(errors[c]);
  }
  census.all_nondegenerate = std::all_of(census.records.begin(), census.records.end(),
                                         [](const CriticalPointRecord& r) { return r.nondegenerate; });
  census.min_pairwise_distance = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < census.records.size(); ++a)
    for (std::size_t b = a + 1; b < census.records.size(); ++b)
      census.min_pairwise_distance =
          std::min(census.min_pairwise_distance, edge_distance(census.records[a], census.records[b]));
  census.all_distinct = census.min_pairwise_distance > 1e-6;
  return census;
}

MatrixXc numeric_a1(const CriticalPointRecord& r) {
  const int n = r.chart.n();
  auto edge = [&](mirror::EdgeKind k, int i, int j) -> cplx {
    auto it = r.edges.find(mirror::edge_symbol(k, i, j));
    return it == r.edges.end() ? cplx(0.0) : it->second;
  };
  MatrixXc a = MatrixXc::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i) {
    a(i, i) = (i > 0 ? edge(mirror::EdgeKind::V, 1, i - 1) : 0.0) - (i < n ? edge(mirror::EdgeKind::U, 1, i) : 0.0);
    if (i < n) {
      a(i, i + 1) = edge(mirror::EdgeKind::U, 1, i) * edge(mirror::EdgeKind::V, 1, i);
      a(i + 1, i) = -1.0;
    }
  }
  return a;
}

std::vector<cplx> char_poly_plus(const MatrixXc& m) {
  const int size = static_cast<int>(m.rows());
  const MatrixXc b = -m;
  MatrixXc mk = MatrixXc::Zero(size, size);
  std::vector<cplx> c{1.0};
  for (int k = 1; k <= size; ++k) {
    mk = b * mk + c.back() * MatrixXc::Identity(size, size);
    c.push_back(-(b * mk).trace() / static_cast<double>(k));
  }
  return {c.begin() + 1, c.end()};
}

double spectral_check(const CriticalPointRecord& r) {
  const int n = r.chart.n();
  MatrixXc m = numeric_a1(r) - r.lambda[0] * MatrixXc::Identity(n + 1, n + 1);
  const auto coeffs = char_poly_plus(m);
  const auto sigma = exact::elementary_symmetric_sigma(r.lambda);
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  double dev = 0.0;
  for (int i = 0; i <= n; ++i) dev = std::max(dev, std::abs(coeffs[i] - sigma[i]) / std::pow(scale, i + 1));
  return dev;
}

LagrangianPoint to_lagrangian(const CriticalPointRecord& r) {
  const int n = r.chart.n();
  const MatrixXc a = numeric_a1(r);
  LagrangianPoint lp;
  for (int i = 0; i <= n; ++i) lp.p.push_back(a(i, i) - r.lambda[0]);
  for (int i = 0; i < n; ++i) lp.q.push_back(a(i, i + 1));
  const auto d = toda::evaluate_toda_polynomials(n, lp.p, lp.q);
  const auto sigma = exact::elementary_symmetric_sigma(r.lambda);
  double scale = 1.0;
  for (const auto& x : lp.p) scale = std::max(scale, 1.0 + std::abs(x));
  for (const auto& x : lp.q) scale = std::max(scale, 1.0 + std::sqrt(std::abs(x)));
  for (int i = 0; i <= n; ++i) lp.residuals.push_back(std::abs(d[i] - sigma[i]) / std::pow(scale, i + 1));
  return lp;
}

}  // namespace todalab::critical
