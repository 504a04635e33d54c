#include "todalab/mirror/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace todalab::mirror {

Symbol edge_symbol(EdgeKind kind, int i, int j) {
  return Symbol((kind == EdgeKind::U ? "u" : "v") + std::to_string(i) + "_" + std::to_string(j));
}

LaurentPolynomial lambda_n_constrained(int n) {
  LaurentPolynomial s;
  for (int j = 0; j < n; ++j) s -= LaurentPolynomial::variable(exact::lambda(j));
  return s;
}

LaurentPolynomial impose_trace_zero(const LaurentPolynomial& p, int n) {
  return p.substitute(exact::lambda(n), lambda_n_constrained(n));
}

PhaseExpression PhaseExpression::substitute(const std::map<Symbol, Monomial>& values) const {
  PhaseExpression out;
  std::map<Symbol, LaurentPolynomial> poly_values;
  for (const auto& [s, m] : values) poly_values.emplace(s, LaurentPolynomial::monomial(m));
  out.exponential = exponential.substitute(poly_values);
  auto add_log = [&out](Symbol s, const LaurentPolynomial& c) {
    auto& slot = out.log_terms[s];
    slot += c;
    if (slot.is_zero()) out.log_terms.erase(s);
  };
  for (const auto& [s, c] : log_terms) {
    auto it = values.find(s);
    if (it == values.end()) {
      add_log(s, c);
      continue;
    }
    for (const auto& [f, e] : it->second.factors()) add_log(f, c * Rational(e));
  }
  return out;
}

PhaseExpression PhaseExpression::with_trace_zero(int n) const {
  PhaseExpression out;
  out.exponential = impose_trace_zero(exponential, n);
  for (const auto& [s, c] : log_terms) {
    auto v = impose_trace_zero(c, n);
    if (!v.is_zero()) out.log_terms.emplace(s, v);
  }
  return out;
}

LaurentPolynomial PhaseExpression::log_derivative(Symbol s) const {
  LaurentPolynomial d = LaurentPolynomial::variable(s) * exponential.derivative(s);
  if (auto it = log_terms.find(s); it != log_terms.end()) d += it->second;
  return d;
}

std::map<Symbol, LaurentPolynomial> PhaseExpression::q_log_terms(int n) const {
  std::map<Symbol, LaurentPolynomial> out;
  for (int i = 1; i <= n; ++i)
    if (auto it = log_terms.find(exact::toda_q(i)); it != log_terms.end()) out.emplace(it->first, it->second);
  return out;
}

std::string PhaseExpression::to_string() const {
  std::string out = exponential.to_string();
  std::vector<Symbol> keys;
  for (const auto& [s, c] : log_terms) keys.push_back(s);
  std::sort(keys.begin(), keys.end(), exact::display_less);
  for (Symbol s : keys) out += " + (" + log_terms.at(s).to_string() + ")*ln(" + s.name() + ")";
  return out;
}

MirrorGraph::MirrorGraph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("MirrorGraph: n must be >= 1");
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) vertices_.push_back({i, j});

  auto add = [this](EdgeKind kind, int i, int j, Vertex tail, Vertex head) {
    index_[{kind, i, j}] = edges_.size();
    edges_.push_back({kind, i, j, edge_symbol(kind, i, j), tail, head});
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) add(EdgeKind::U, i, j, {i - 1, j}, {i, j});
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= n - i; ++j) add(EdgeKind::V, i, j, {i, j}, {i - 1, j + 1});

  for (int i = 1; i <= n; ++i)
    for (int j = 0; i + j <= n - 1; ++j)
      boxes_.push_back({index_.at({EdgeKind::V, i, j}), index_.at({EdgeKind::U, i, j + 1}),
                        index_.at({EdgeKind::U, i + 1, j}), index_.at({EdgeKind::V, i + 1, j})});
  for (int j = 0; j < n; ++j) roofs_.push_back({index_.at({EdgeKind::U, 1, j}), index_.at({EdgeKind::V, 1, j}), j + 1});

  // Weights: outer edges u_{i,0}, v_{i,n-i} carry lambda_{i-1} + (1/2) sum_{j<i-1} lambda_j
  // (negated for v); interior edges carry +-(1/2) lambda_{i-1}.
  const Rational half(1, 2);
  for (const auto& e : edges_) {
    const LaurentPolynomial li = LaurentPolynomial::variable(exact::lambda(e.i - 1));
    const bool outer = (e.kind == EdgeKind::U && e.j == 0) || (e.kind == EdgeKind::V && e.j == n - e.i);
    LaurentPolynomial w;
    if (outer) {
      w = li;
      for (int j = 0; j < e.i - 1; ++j) w += LaurentPolynomial::variable(exact::lambda(j)) * half;
    } else {
      w = li * half;
    }
    weights_.push_back(e.kind == EdgeKind::U ? w : -w);
  }
}

int MirrorGraph::find_edge(EdgeKind kind, int i, int j) const {
  auto it = index_.find({kind, i, j});
  return it == index_.end() ? -1 : static_cast<int>(it->second);
}

const Edge& MirrorGraph::edge(EdgeKind kind, int i, int j) const {
  const int k = find_edge(kind, i, j);
  if (k < 0) throw std::out_of_range("no such edge");
  return edges_[k];
}

LaurentPolynomial MirrorGraph::edge_variable(EdgeKind kind, int i, int j) const {
  const int k = find_edge(kind, i, j);
  return k < 0 ? LaurentPolynomial() : LaurentPolynomial::variable(edges_[k].symbol);
}

LaurentPolynomial MirrorGraph::box_relation(const Box& b) const {
  auto x = [this](std::size_t k) { return LaurentPolynomial::variable(edges_[k].symbol); };
  return x(b.v_ij) * x(b.u_ij1) - x(b.u_i1j) * x(b.v_i1j);
}

LaurentPolynomial MirrorGraph::roof_relation(const Roof& r) const {
  return LaurentPolynomial::variable(edges_[r.u].symbol) * LaurentPolynomial::variable(edges_[r.v].symbol) -
         LaurentPolynomial::variable(exact::toda_q(r.q_index));
}

PhaseExpression MirrorGraph::phase() const {
  PhaseExpression f;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    f.exponential += LaurentPolynomial::variable(edges_[k].symbol);
    if (!weights_[k].is_zero()) f.log_terms[edges_[k].symbol] = weights_[k];
  }
  return f;
}

LaurentPolynomial MirrorGraph::vertex_derivative(int i, int j) const {
  const Vertex v{i, j};
  LaurentPolynomial d;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const auto& e = edges_[k];
    const LaurentPolynomial term = LaurentPolynomial::variable(e.symbol) + weights_[k];
    if (e.head == v) d += term;
    if (e.tail == v) d -= term;
  }
  return d;
}

}  // namespace todalab::mirror
