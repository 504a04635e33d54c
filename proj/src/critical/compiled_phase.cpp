#include "todalab/critical/compiled_phase.hpp"

#include <stdexcept>

namespace todalab::critical {

double evaluate_lambda_form(const exact::LaurentPolynomial& form, const std::vector<double>& lambda) {
  const std::function<double(exact::Symbol)> lookup = [&](exact::Symbol s) {
    for (std::size_t i = 0; i < lambda.size(); ++i)
      if (s == exact::lambda(static_cast<int>(i))) return lambda[i];
    throw std::invalid_argument("no value for " + s.name());
  };
  return form.evaluate(lookup);
}

CompiledPhase::CompiledPhase(const mirror::SigmaChart& chart, const std::vector<double>& lambda,
                             const std::vector<cplx>& q) {
  const int n = chart.n();
  if (static_cast<int>(lambda.size()) != n + 1) throw std::invalid_argument("lambda must have n+1 entries");
  if (static_cast<int>(q.size()) != n) throw std::invalid_argument("q must have n entries");
  const auto& vars = chart.variables();
  const int d = static_cast<int>(vars.size());
  std::map<exact::Symbol, int> pos;
  for (int k = 0; k < d; ++k) pos.emplace(vars[k].symbol, k);

  sigma_.resize(d);
  for (int k = 0; k < d; ++k) sigma_[k] = evaluate_lambda_form(chart.exponent(vars[k].i, vars[k].j), lambda);

  for (int k = 0; k < d; ++k) {
    Term t{Eigen::VectorXd::Zero(d), 1.0, 0};
    t.exponent[k] = 1;
    terms_.push_back(t);
  }
  for (const auto& e : chart.eliminated()) {
    Term t{Eigen::VectorXd::Zero(d), 1.0, 0};
    for (const auto& [s, p] : e.value.factors()) {
      if (auto it = pos.find(s); it != pos.end()) {
        t.exponent[it->second] = p;
        continue;
      }
      bool found = false;
      for (int i = 1; i <= n; ++i)
        if (s == exact::toda_q(i)) {
          t.coefficient *= std::pow(q[i - 1], p);
          t.q_degree += p;
          found = true;
        }
      if (!found) throw std::logic_error("unexpected symbol in eliminated edge: " + s.name());
    }
    terms_.push_back(t);
  }

  chart_constant_ = 0.0;
  for (int i = 1; i <= n; ++i) chart_constant_ += evaluate_lambda_form(chart.q_log_coefficient(i), lambda) * std::log(q[i - 1]);
}

namespace {

cplx term_value(const CompiledPhase::Term& t, const VectorXc& s, cplx z) {
  cplx arg = 0.0;
  for (int k = 0; k < s.size(); ++k)
    if (t.exponent[k] != 0) arg += t.exponent[k] * s[k];
  cplx c = t.coefficient;
  for (int i = 0; i < t.q_degree; ++i) c *= z;
  return c * std::exp(arg);
}

}  // namespace

cplx CompiledPhase::regular_value(const VectorXc& s, cplx z) const {
  cplx f = 0.0;
  for (const auto& t : terms_) f += term_value(t, s, z);
  for (int k = 0; k < dim(); ++k) f += sigma_[k] * s[k];
  return f;
}

VectorXc CompiledPhase::gradient(const VectorXc& s, cplx z) const {
  VectorXc g = sigma_.cast<cplx>();
  for (const auto& t : terms_) {
    const cplx v = term_value(t, s, z);
    if (v == 0.0) continue;
    g += t.exponent.cast<cplx>() * v;
  }
  return g;
}

MatrixXc CompiledPhase::log_hessian(const VectorXc& s, cplx z) const {
  MatrixXc h = MatrixXc::Zero(dim(), dim());
  for (const auto& t : terms_) {
    const cplx v = term_value(t, s, z);
    if (v == 0.0) continue;
    const Eigen::VectorXcd e = t.exponent.cast<cplx>();
    h += v * e * e.transpose();
  }
  return h;
}

VectorXc CompiledPhase::gradient_z(const VectorXc& s, cplx z) const {
  VectorXc g = VectorXc::Zero(dim());
  for (const auto& t : terms_) {
    if (t.q_degree == 0) continue;
    cplx c = t.coefficient * static_cast<double>(t.q_degree);
    for (int i = 0; i < t.q_degree - 1; ++i) c *= z;
    cplx arg = 0.0;
    for (int k = 0; k < s.size(); ++k) arg += t.exponent[k] * s[k];
    g += t.exponent.cast<cplx>() * (c * std::exp(arg));
  }
  return g;
}

}  // namespace todalab::critical
