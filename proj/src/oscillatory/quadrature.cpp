#include "todalab/oscillatory/quadrature.hpp"

#include <omp.h>

#include <cmath>

namespace todalab::osc {

namespace {

double term_value(const ConvexPhase::Term& t, const Eigen::VectorXd& s) {
  double a = 0;
  for (std::size_t k = 0; k < t.exponent.size(); ++k) a += t.exponent[k] * s[static_cast<int>(k)];
  return t.coefficient * std::exp(a);
}

std::string face_name(int axis, bool upper) {
  return std::string(upper ? "upper" : "lower") + " face of axis " + std::to_string(axis);
}

}  // namespace

double ConvexPhase::value(const Eigen::VectorXd& s) const {
  double v = sigma.dot(s);
  for (const auto& t : terms) v += term_value(t, s);
  return v;
}

Eigen::VectorXd ConvexPhase::gradient(const Eigen::VectorXd& s) const {
  Eigen::VectorXd g = sigma;
  for (const auto& t : terms) {
    const double v = term_value(t, s);
    for (int k = 0; k < dim(); ++k) g[k] += t.exponent[k] * v;
  }
  return g;
}

Eigen::MatrixXd ConvexPhase::hessian(const Eigen::VectorXd& s) const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim(), dim());
  for (const auto& t : terms) {
    const double v = term_value(t, s);
    for (int k = 0; k < dim(); ++k)
      for (int l = 0; l < dim(); ++l) h(k, l) += t.exponent[k] * t.exponent[l] * v;
  }
  return h;
}

std::vector<int> QuadratureGrid::nodes() const {
  std::vector<int> n(lo.size());
  for (std::size_t k = 0; k < lo.size(); ++k) n[k] = static_cast<int>(std::llround((hi[k] - lo[k]) / step)) + 1;
  return n;
}

long QuadratureGrid::total_nodes() const {
  long t = 1;
  for (int n : nodes()) t *= n;
  return t;
}

Eigen::VectorXd locate_minimum(const ConvexPhase& g, double max_extent) {
  const int d = g.dim();
  Eigen::VectorXd s = Eigen::VectorXd::Zero(d);
  double f = g.value(s);
  for (int it = 0; it < 500; ++it) {
    const Eigen::VectorXd grad = g.gradient(s);
    if (grad.lpNorm<Eigen::Infinity>() < 1e-13 * (1.0 + std::abs(f))) return s;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(g.hessian(s) + 1e-14 * Eigen::MatrixXd::Identity(d, d));
    Eigen::VectorXd step = -ldlt.solve(grad);
    if (!step.allFinite() || grad.dot(step) >= 0) step = -grad;
    // cap the step so that exponentials stay representable
    const double len = step.lpNorm<Eigen::Infinity>();
    if (len > 2.0) step *= 2.0 / len;
    double alpha = 1.0;
    Eigen::VectorXd next = s + step;
    double fn = g.value(next);
    while (!(fn <= f + 1e-4 * alpha * grad.dot(step)) && alpha > 1e-12) {
      alpha /= 2;
      next = s + alpha * step;
      fn = g.value(next);
    }
    if (alpha <= 1e-12) return s;  // no further decrease at machine precision
    s = next;
    f = fn;
    for (int k = 0; k < d; ++k)
      if (std::abs(s[k]) > max_extent) throw DivergenceError(face_name(k, s[k] > 0));
  }
  return s;
}

QuadratureGrid fit_box(const ConvexPhase& g, const Eigen::VectorXd& minimum, double h, const QuadratureControls& c) {
  const int d = g.dim();
  const double gmin = g.value(minimum);
  QuadratureGrid grid;
  grid.step = c.initial_step;
  grid.lo.resize(d);
  grid.hi.resize(d);
  for (int k = 0; k < d; ++k) {
    grid.lo[k] = minimum[k] - 2.0;
    grid.hi[k] = minimum[k] + 2.0;
  }
  // The sublevel set {g <= g_min + gap h} is convex and contains the minimum,
  // so it lies inside the box once every face is above the level.
  for (;;) {
    bool grown = false;
    for (int k = 0; k < d; ++k) {
      for (bool upper : {false, true}) {
        QuadratureGrid face = grid;
        if (upper)
          face.lo[k] = face.hi[k];
        else
          face.hi[k] = face.lo[k];
        const auto n = face.nodes();
        const long total = face.total_nodes();
        double lowest = std::numeric_limits<double>::infinity();
        Eigen::VectorXd s(d);
        for (long idx = 0; idx < total; ++idx) {
          long r = idx;
          for (int a = d - 1; a >= 0; --a) {
            s[a] = face.lo[a] + (r % n[a]) * face.step;
            r /= n[a];
          }
          lowest = std::min(lowest, g.value(s));
        }
        if ((lowest - gmin) / h < c.face_gap) {
          (upper ? grid.hi[k] : grid.lo[k]) += upper ? 1.0 : -1.0;
          if (std::abs((upper ? grid.hi[k] : grid.lo[k]) - minimum[k]) > c.max_extent)
            throw DivergenceError(face_name(k, upper));
          grown = true;
        }
      }
    }
    if (!grown) return grid;
  }
}

namespace {

// Sum over one slice i0 of the first axis.
double slice_sum(const ConvexPhase& g, const QuadratureGrid& grid, const std::vector<int>& n,
                 const std::vector<std::vector<std::vector<double>>>& factors, double h, double offset, int i0) {
  const int d = g.dim();
  const std::size_t nt = g.terms.size();
  long inner = 1;
  for (int a = 1; a < d; ++a) inner *= n[a];
  std::vector<int> idx(d, 0);
  idx[0] = i0;
  double sum = 0;
  for (long r = 0; r < inner; ++r) {
    long rem = r;
    for (int a = d - 1; a >= 1; --a) {
      idx[a] = static_cast<int>(rem % n[a]);
      rem /= n[a];
    }
    double v = 0;
    for (int a = 0; a < d; ++a) v += g.sigma[a] * (grid.lo[a] + idx[a] * grid.step);
    for (std::size_t t = 0; t < nt; ++t) {
      double p = g.terms[t].coefficient;
      for (int a = 0; a < d; ++a) p *= factors[t][a][idx[a]];
      v += p;
    }
    sum += std::exp(-(v - offset) / h);
  }
  return sum;
}

}  // namespace

double trapezoid_sum(const ConvexPhase& g, const QuadratureGrid& grid, double h, double offset, Execution exec) {
  const int d = g.dim();
  const auto n = grid.nodes();
  // factors[t][a][i] = exp(e_ta * s_a(i))
  std::vector<std::vector<std::vector<double>>> factors(g.terms.size(), std::vector<std::vector<double>>(d));
  for (std::size_t t = 0; t < g.terms.size(); ++t)
    for (int a = 0; a < d; ++a) {
      factors[t][a].resize(n[a]);
      for (int i = 0; i < n[a]; ++i)
        factors[t][a][i] = std::exp(g.terms[t].exponent[a] * (grid.lo[a] + i * grid.step));
    }
  std::vector<double> slices(n[0]);
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int i0 = 0; i0 < n[0]; ++i0) slices[i0] = slice_sum(g, grid, n, factors, h, offset, i0);
  } else {
    for (int i0 = 0; i0 < n[0]; ++i0) slices[i0] = slice_sum(g, grid, n, factors, h, offset, i0);
  }
  double total = 0;
  for (double s : slices) total += s;
  return total * std::pow(grid.step, d);
}

QuadratureResult integrate(const ConvexPhase& g, double h, const QuadratureControls& c, Execution exec) {
  if (!(h > 0)) throw std::invalid_argument("integrate requires h > 0");
  QuadratureResult r;
  r.minimum = locate_minimum(g, c.max_extent);
  r.min_value = g.value(r.minimum);
  QuadratureGrid grid = fit_box(g, r.minimum, h, c);
  // snap the box to a multiple of the coarse step so refinements nest
  for (std::size_t k = 0; k < grid.lo.size(); ++k) {
    const double cells = std::ceil((grid.hi[k] - grid.lo[k]) / grid.step);
    grid.hi[k] = grid.lo[k] + cells * grid.step;
  }
  double prev = trapezoid_sum(g, grid, h, r.min_value, exec);
  r.evaluations += grid.total_nodes();
  for (int level = 1; level <= c.max_levels; ++level) {
    grid.step /= 2;
    const double cur = trapezoid_sum(g, grid, h, r.min_value, exec);
    r.evaluations += grid.total_nodes();
    r.levels = level;
    r.error = std::abs(cur - prev);
    prev = cur;
    if (r.error <= std::max(c.abs_tol * std::exp(r.min_value / h), c.rel_tol * std::abs(cur))) {
      r.converged = true;
      break;
    }
  }
  r.grid = grid;
  const double scale = std::exp(-r.min_value / h);
  r.value = prev * scale;
  r.error *= scale;
  return r;
}

double integrate_on_grid(const ConvexPhase& g, double h, const QuadratureGrid& grid, Execution exec) {
  const double offset = g.value(locate_minimum(g));
  return trapezoid_sum(g, grid, h, offset, exec) * std::exp(-offset / h);
}

}  // namespace todalab::osc
