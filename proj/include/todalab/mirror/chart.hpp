#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "todalab/mirror/graph.hpp"

namespace todalab::mirror {

class MonomialSolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A chart variable w_{i,j}, which is u_{i,j} when j < k_i and v_{i,j} otherwise.
struct ChartVariable {
  int i, j;
  EdgeKind kind;
  Symbol symbol;
};

/// Eliminated edge as a monomial in chart variables and q.
struct EliminatedEdge {
  std::size_t edge_index;
  Symbol symbol;
  Monomial value;
};

class SigmaChart {
 public:
  int n() const { return n_; }
  const std::vector<int>& k() const { return k_; }
  const std::vector<ChartVariable>& variables() const { return variables_; }
  const std::vector<EliminatedEdge>& eliminated() const { return eliminated_; }
  /// Every edge symbol mapped to its monomial in the chart (chart variables map to themselves).
  const std::map<Symbol, Monomial>& edge_monomials() const { return edge_monomials_; }

  /// rho_{i,j} for 1 <= i <= n+1, -1 <= j <= n-i+1, linear in lambda_0..lambda_n.
  const LaurentPolynomial& rho(int i, int j) const;
  /// One-line permutation: lambda_{sigma(j)} = rho_{1,j} - rho_{1,j-1}.
  const std::vector<int>& permutation() const { return permutation_; }
  /// Exponent sigma(i,j) of ln w_{i,j}, linear in lambda_0..lambda_n (unconstrained).
  const LaurentPolynomial& exponent(int i, int j) const;
  /// Exponents in the order of variables().
  std::vector<LaurentPolynomial> exponents() const;

  /// Coefficient of ln q_i in the chart constant, i.e. rho_{1,i-1}.
  const LaurentPolynomial& q_log_coefficient(int i) const { return rho(1, i - 1); }

  /// Determinant of d(ln w)/dT over the non-top vertices; always +-1.
  int jacobian_sign() const { return jacobian_sign_; }

  /// sum rho_{1,i-1} ln q_i + sum (w + r + sigma(i,j) ln w).
  PhaseExpression phase() const;

  std::string label() const;

 private:
  friend SigmaChart make_chart(const MirrorGraph& g, const std::vector<int>& k);
  int n_ = 0;
  std::vector<int> k_;
  std::vector<ChartVariable> variables_;
  std::vector<EliminatedEdge> eliminated_;
  std::map<Symbol, Monomial> edge_monomials_;
  std::vector<std::vector<LaurentPolynomial>> rho_;  // rho_[i-1][j+1]
  std::vector<int> permutation_;
  std::map<std::pair<int, int>, LaurentPolynomial> exponents_;
  int jacobian_sign_ = 0;
};

/// Throws std::invalid_argument on an invalid k-sequence and
/// MonomialSolveError if the relations do not solve over the integers.
SigmaChart make_chart(const MirrorGraph& g, const std::vector<int>& k);

/// All k-sequences with 0 <= k_i <= n-i+1, in lexicographic order.
std::vector<std::vector<int>> all_k_sequences(int n);
std::vector<SigmaChart> all_charts(const MirrorGraph& g);

}  // namespace todalab::mirror
