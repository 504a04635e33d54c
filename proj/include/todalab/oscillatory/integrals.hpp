#pragma once

#include <optional>
#include <vector>

#include "todalab/mirror/chart.hpp"
#include "todalab/oscillatory/quadrature.hpp"

namespace todalab::osc {

/// Integral of exp(f_q / hbar) over the positive real torus of a chart, in
/// log coordinates. q_i = exp(t_i - t_{i-1}).
struct IntegralTask {
  int n = 1;
  std::vector<double> lambda;
  double hbar = -1.0;
  mirror::SigmaChart chart;
  std::vector<double> t;  // t_0..t_n
  QuadratureControls controls;
};

std::vector<double> q_from_t(const std::vector<double>& t);

/// Chart phase without its constant, as a convex function of s = ln w (q > 0).
ConvexPhase chart_phase(const mirror::SigmaChart& chart, const std::vector<double>& lambda,
                        const std::vector<double>& q);
/// sum rho_{1,i-1} ln q_i
double chart_constant(const mirror::SigmaChart& chart, const std::vector<double>& lambda, const std::vector<double>& q);

/// Throws std::invalid_argument for hbar >= 0, n outside 1..2, or malformed vectors.
void validate_task(const IntegralTask& task);

QuadratureResult evaluate(const IntegralTask& task, Execution exec = Execution::Parallel);

/// Same as evaluate but on a fixed grid, chart constant included.
double evaluate_on_grid(const IntegralTask& task, const QuadratureGrid& grid, Execution exec = Execution::Parallel);

/// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du, by step-doubling trapezoid.
double bessel_k(double nu, double x);

/// Closed form of the n = 1 integral: 2 K_{2 lambda_0 / h}(2 sqrt(q) / h), h = -hbar.
double n1_bessel_value(double lambda0, double q, double hbar);

struct EigenReport {
  int n = 0;
  std::vector<double> lambda, q;
  double hbar = 0, step = 0;
  double value = 0;                 // the integral at the base point
  std::vector<double> residuals;    // |D_i I - sigma_i I| / |I|, i = 1..n+1
  std::size_t stencil_points = 0;
  long evaluations = 0;
  QuadratureGrid grid;
};

/// Finite-difference check of D_i I = sigma_i I at the base point, in the
/// independent coordinates x_i = t_i - t_{i-1}. Central stencils with steps
/// h and h/2 combined by one Richardson level.
EigenReport eigen_residual(int n, const std::vector<double>& lambda, double hbar, const std::vector<double>& t_base,
                           double h_step = 1e-2, std::optional<mirror::SigmaChart> chart = std::nullopt,
                           const QuadratureControls& controls = {}, Execution exec = Execution::Parallel);

/// Central difference weights for the k-th derivative, k <= 4, as (offset, weight * h^k).
std::vector<std::pair<int, double>> central_stencil(int order);

class NoAdmissibleChart : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A chart in which every sigma(i,j)/hbar > 0, if one exists.
std::optional<mirror::SigmaChart> find_admissible_chart(int n, const std::vector<double>& lambda, double hbar);

struct FactorizationResult {
  double rescaled = 0;  // exp(-C/hbar) I at q_small
  double product = 0;   // prod Gamma(a) (-hbar)^a, a = sigma/hbar
  double mismatch = 0;  // |rescaled / product - 1|
};

/// Throws NoAdmissibleChart if the chart has a sigma(i,j)/hbar <= 0.
FactorizationResult q_to_zero_factorization(int n, const std::vector<double>& lambda, double hbar,
                                            const mirror::SigmaChart& chart, double q_small,
                                            const QuadratureControls& controls = {});

struct Cp1Report {
  double lambda0 = 0;
  std::vector<double> q_grid;
  /// max over grid and both points of |d/dt (u - F(p))|, F the closed form
  double closed_form_mismatch = 0;
  /// max |du/dt - p|
  double momentum_mismatch = 0;
  /// eigenvector and pairing residuals of the two-by-two frame Psi
  double psi_eigen_residual = 0;
  double psi_pairing_residual = 0;
  /// |p_+ p_- + lambda_0^2 + q| and |p_+ + p_-|
  double root_residual = 0;
};

/// The n = 1 example: p = +-sqrt(lambda_0^2 + q), t = ln q,
/// F(p) = 2p + lambda_0 ln(lambda_1 + p) + lambda_1 ln(lambda_0 + p).
Cp1Report cp1_example_check(double lambda0, const std::vector<double>& q_grid);

}  // namespace todalab::osc
