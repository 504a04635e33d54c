#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "todalab/mirror/chart.hpp"

namespace todalab::critical {

using cplx = std::complex<double>;
using VectorXc = Eigen::VectorXcd;
using MatrixXc = Eigen::MatrixXcd;

/// Chart phase specialised to numeric lambda and q, in log coordinates
/// s = ln w. With the path parameter z the q-dependence is q -> z q:
///   f(s; z) = C(z q) + sum_t c_t z^{deg t} exp(e_t . s) + sum_k sigma_k s_k
/// where C is the chart constant sum rho_{1,i-1} ln q_i.
class CompiledPhase {
 public:
  struct Term {
    Eigen::VectorXd exponent;  // integer exponents over chart variables
    cplx coefficient;          // value of the q-monomial at the target q
    int q_degree;
  };

  CompiledPhase(const mirror::SigmaChart& chart, const std::vector<double>& lambda, const std::vector<cplx>& q);

  int dim() const { return static_cast<int>(sigma_.size()); }
  const std::vector<Term>& terms() const { return terms_; }
  /// Numeric exponents sigma(i,j) in variable order.
  const Eigen::VectorXd& sigma() const { return sigma_; }
  /// sum rho_{1,i-1} ln q_i at the target q (principal logarithms).
  cplx chart_constant() const { return chart_constant_; }

  /// f without the chart constant.
  cplx regular_value(const VectorXc& s, cplx z = 1.0) const;
  /// df/ds
  VectorXc gradient(const VectorXc& s, cplx z = 1.0) const;
  /// d^2 f / ds ds
  MatrixXc log_hessian(const VectorXc& s, cplx z = 1.0) const;
  /// d/dz of the gradient
  VectorXc gradient_z(const VectorXc& s, cplx z) const;

 private:
  std::vector<Term> terms_;
  Eigen::VectorXd sigma_;
  cplx chart_constant_;
};

/// Numeric value of a lambda-linear form.
double evaluate_lambda_form(const exact::LaurentPolynomial& form, const std::vector<double>& lambda);

}  // namespace todalab::critical
