#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "todalab/critical/compiled_phase.hpp"
#include "todalab/parallel.hpp"

namespace todalab::critical {

class DegenerateLambdaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContinuationError : public std::runtime_error {
 public:
  ContinuationError(const std::string& what, double tau) : std::runtime_error(what), tau(tau) {}
  double tau;
};

/// The path Hessian became singular (the path crosses a caustic).
class CausticError : public ContinuationError {
 public:
  using ContinuationError::ContinuationError;
};

struct ContinuationOptions {
  int initial_steps = 16;
  double tol = 1e-12;
  int max_halvings = 40;
  int max_newton = 8;
  /// Imaginary bulge of the path z(tau) = tau + i gamma tau (1 - tau); 0 is the
  /// straight ray. For real data the straight ray can run into a fold where two
  /// real critical points merge, and the continued branch is then ambiguous.
  double detour = 0.25;
  /// |det| of the log-Hessian, relative to its value at q = 0, below which
  /// the path is declared singular.
  double caustic_threshold = 1e-10;
  /// |det| of the log-Hessian required for nondegeneracy. This determinant is
  /// the same in every chart up to sign, unlike the w-frame one.
  double nondegeneracy_threshold = 1e-8;
};

struct CriticalPointRecord {
  mirror::SigmaChart chart;
  std::vector<double> lambda;
  std::vector<cplx> q;
  VectorXc log_coordinates;  // s = ln w, on the branch continued from q = 0
  VectorXc coordinates;      // w
  cplx critical_value;       // f_q at the point, chart constant included
  double gradient_norm = 0;  // max |df/ds|
  MatrixXc hessian;          // d^2 f / dw dw
  cplx hessian_det;
  MatrixXc log_hessian;      // d^2 f / ds ds
  cplx log_hessian_det;
  /// sqrt(det log_hessian), branch continued along the path
  cplx sqrt_log_hessian_det;
  double scaled_det = 0;     // row-scaled |det hessian|
  bool nondegenerate = false;
  int steps = 0;
  bool detoured = false;     // the first path failed and a fallback arc was used
  std::vector<std::string> warnings;
  /// Every edge variable evaluated at the point.
  std::map<exact::Symbol, cplx> edges;

  /// sqrt(det hessian) consistent with sqrt_log_hessian_det.
  cplx sqrt_hessian_det() const;
};

/// w_{ij} = -sigma(i,j), the critical point of the q = 0 phase.
VectorXc start_point(const mirror::SigmaChart& chart, const std::vector<double>& lambda);

CriticalPointRecord continue_to(const mirror::SigmaChart& chart, const std::vector<double>& lambda,
                                const std::vector<cplx>& q_target, const ContinuationOptions& options = {});

struct CriticalCensus {
  std::vector<CriticalPointRecord> records;  // in chart order
  double min_pairwise_distance = 0;
  bool all_distinct = false;
  bool all_nondegenerate = false;
  std::vector<std::string> warnings;
};

/// Rejects lambda with repeated entries or nonzero sum.
void validate_lambda(const std::vector<double>& lambda);

/// One record per chart; a chart whose path fails is retried on the mirrored
/// and wider arcs and flagged.
CriticalCensus all_critical_points(int n, const std::vector<double>& lambda, const std::vector<cplx>& q,
                                   const ContinuationOptions& options = {}, Execution exec = Execution::Parallel);

/// max over edges of |a - b|
double edge_distance(const CriticalPointRecord& a, const CriticalPointRecord& b);

/// The matrix A_1 evaluated at the record (first-row edges).
MatrixXc numeric_a1(const CriticalPointRecord& r);

/// Coefficients c_1..c_N of det(M + xI) = x^N + c_1 x^{N-1} + ... (Faddeev-LeVerrier).
std::vector<cplx> char_poly_plus(const MatrixXc& m);

/// max_i |coeff_i det(A_1 - lambda_0 I + xI) - sigma_i(lambda)| / s^i, where
/// s = 1 + max |entry| keeps the test meaningful when edges are large.
double spectral_check(const CriticalPointRecord& r);

struct LagrangianPoint {
  std::vector<cplx> p;  // length n+1
  std::vector<cplx> q;  // length n
  std::vector<double> residuals;  // |D_i(p,q) - sigma_i|, scaled like spectral_check
};

/// p_i = (A_1)_{ii} - lambda_0, q_i = u_{1,i-1} v_{1,i-1}.
LagrangianPoint to_lagrangian(const CriticalPointRecord& r);

}  // namespace todalab::critical
