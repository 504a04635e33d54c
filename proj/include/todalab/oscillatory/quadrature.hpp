#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "todalab/parallel.hpp"

namespace todalab::osc {

/// g(s) = sum_t c_t exp(e_t . s) + sigma . s with every c_t > 0, which makes g
/// convex on R^d. The integrand is exp(-g/h) for h > 0.
struct ConvexPhase {
  struct Term {
    std::vector<int> exponent;
    double coefficient;
  };
  std::vector<Term> terms;
  Eigen::VectorXd sigma;

  int dim() const { return static_cast<int>(sigma.size()); }
  double value(const Eigen::VectorXd& s) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& s) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& s) const;
};

/// The integrand does not decay towards some face of the chart.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& face) : std::runtime_error("integrand does not decay towards " + face), face(face) {}
  std::string face;
};

struct QuadratureControls {
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  int max_levels = 7;          // step halvings after the initial step
  double initial_step = 0.5;
  double face_gap = 50.0;      // required (g - g_min)/h on every face of the box
  double max_extent = 400.0;   // box half-width beyond which a face counts as divergent
};

/// Axis-aligned box with a uniform node spacing.
struct QuadratureGrid {
  std::vector<double> lo, hi;
  double step = 0.5;
  std::vector<int> nodes() const;
  long total_nodes() const;
};

struct QuadratureResult {
  double value = 0;      // integral of exp(-(g - offset)/h) ds, times exp(-offset/h)
  double error = 0;      // |difference| between the last two levels
  long evaluations = 0;
  bool converged = false;
  int levels = 0;
  QuadratureGrid grid;   // finest grid used
  Eigen::VectorXd minimum;
  double min_value = 0;  // g at the minimum
};

/// Damped Newton for the minimum of a convex phase.
/// Throws DivergenceError when the iterates run off to infinity.
Eigen::VectorXd locate_minimum(const ConvexPhase& g, double max_extent = 80.0);

/// Smallest box, grown from the minimum in unit increments, whose faces all
/// satisfy (g - g_min)/h >= face_gap at the sampled nodes.
QuadratureGrid fit_box(const ConvexPhase& g, const Eigen::VectorXd& minimum, double h, const QuadratureControls& c);

/// Trapezoid sum of exp(-(g(s) - offset)/h) over the grid, times the cell volume.
/// Both versions sum the slices of the first axis in order, so they agree bitwise.
double trapezoid_sum(const ConvexPhase& g, const QuadratureGrid& grid, double h, double offset,
                     Execution exec = Execution::Parallel);

/// Step-doubling trapezoid on a fitted box.
QuadratureResult integrate(const ConvexPhase& g, double h, const QuadratureControls& c = {},
                           Execution exec = Execution::Parallel);

/// Trapezoid on a given grid without refinement; used for finite-difference
/// stencils so that every stencil point shares the same discretisation.
double integrate_on_grid(const ConvexPhase& g, double h, const QuadratureGrid& grid, Execution exec = Execution::Parallel);

}  // namespace todalab::osc
