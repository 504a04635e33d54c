#pragma once

#include <map>
#include <string>
#include <vector>

#include "todalab/exact/laurent.hpp"

namespace todalab::mirror {

using exact::LaurentPolynomial;
using exact::Monomial;
using exact::Rational;
using exact::Symbol;

enum class EdgeKind { U, V };

/// Vertex (i, j) of the triangle: i is the diagonal index, j the position along it.
struct Vertex {
  int i = 0, j = 0;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// u_{i,j}: (i-1, j) -> (i, j);  v_{i,j}: (i, j) -> (i-1, j+1).
/// The edge variable is exp(T_head - T_tail).
struct Edge {
  EdgeKind kind;
  int i, j;
  Symbol symbol;
  Vertex tail, head;
};

/// v_{i,j} u_{i,j+1} = u_{i+1,j} v_{i+1,j}, stored as edge indices.
struct Box {
  std::size_t v_ij, u_ij1, u_i1j, v_i1j;
};

/// u_{1,j} v_{1,j} = q_{j+1}
struct Roof {
  std::size_t u, v;
  int q_index;
};

Symbol edge_symbol(EdgeKind kind, int i, int j);

/// lambda_n expressed through the others, -(lambda_0 + ... + lambda_{n-1}).
LaurentPolynomial lambda_n_constrained(int n);
/// Substitute lambda_n := -(lambda_0 + ... + lambda_{n-1}).
LaurentPolynomial impose_trace_zero(const LaurentPolynomial& p, int n);

/// Sum of exponential terms plus logarithmic terms c_s ln(s).
struct PhaseExpression {
  LaurentPolynomial exponential;
  std::map<Symbol, LaurentPolynomial> log_terms;

  /// Replace symbols by monomials (with coefficient 1) in both parts;
  /// ln of a monomial is expanded into its factors.
  PhaseExpression substitute(const std::map<Symbol, Monomial>& values) const;
  PhaseExpression with_trace_zero(int n) const;
  /// s d/ds of the expression.
  LaurentPolynomial log_derivative(Symbol s) const;

  /// Terms c ln q_i only (the chart constant).
  std::map<Symbol, LaurentPolynomial> q_log_terms(int n) const;

  friend bool operator==(const PhaseExpression&, const PhaseExpression&) = default;
  std::string to_string() const;
};

class MirrorGraph {
 public:
  explicit MirrorGraph(int n);

  int n() const { return n_; }
  int dimension() const { return n_ * (n_ + 1) / 2; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  const std::vector<Roof>& roofs() const { return roofs_; }

  /// Index of the edge, or -1 when it does not exist.
  int find_edge(EdgeKind kind, int i, int j) const;
  const Edge& edge(EdgeKind kind, int i, int j) const;
  LaurentPolynomial edge_variable(EdgeKind kind, int i, int j) const;

  LaurentPolynomial box_relation(const Box& b) const;
  LaurentPolynomial roof_relation(const Roof& r) const;

  /// Equivariant weight of an edge, linear in lambda_0..lambda_{n-1}.
  const LaurentPolynomial& weight(std::size_t edge_index) const { return weights_[edge_index]; }

  /// f_q = sum (eps + lambda_eps ln eps) over all edges.
  PhaseExpression phase() const;

  /// df/dT at a vertex: sum over incident edges of +-(eps + lambda_eps),
  /// plus at the head and minus at the tail. Vertex (0, j) gives df/dt_j.
  LaurentPolynomial vertex_derivative(int i, int j) const;

 private:
  int n_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<Box> boxes_;
  std::vector<Roof> roofs_;
  std::vector<LaurentPolynomial> weights_;
  std::map<std::tuple<EdgeKind, int, int>, std::size_t> index_;
};

}  // namespace todalab::mirror
