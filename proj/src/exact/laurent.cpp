#include "todalab/exact/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace todalab::exact {

Monomial Monomial::of(Symbol s, int exponent) {
  Monomial m;
  if (exponent != 0) m.factors_.emplace_back(s, exponent);
  return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(), [](const Factor& a, const Factor& b) { return a.first < b.first; });
  Monomial m;
  for (const auto& [s, e] : factors) {
    if (!m.factors_.empty() && m.factors_.back().first == s)
      m.factors_.back().second += e;
    else
      m.factors_.emplace_back(s, e);
  }
  std::erase_if(m.factors_, [](const Factor& f) { return f.second == 0; });
  return m;
}

int Monomial::exponent(Symbol s) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), s,
                             [](const Factor& f, Symbol key) { return f.first < key; });
  return (it != factors_.end() && it->first == s) ? it->second : 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& f : factors_) d += f.second;
  return d;
}

Monomial Monomial::inverse() const {
  Monomial m = *this;
  for (auto& f : m.factors_) f.second = -f.second;
  return m;
}

Monomial Monomial::without(Symbol s) const {
  Monomial m = *this;
  std::erase_if(m.factors_, [s](const Factor& f) { return f.first == s; });
  return m;
}

Monomial Monomial::pow(int k) const {
  if (k == 0) return {};
  Monomial m = *this;
  for (auto& f : m.factors_) f.second *= k;
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin(), j = b.factors_.begin();
  while (i != a.factors_.end() || j != b.factors_.end()) {
    if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
      r.factors_.push_back(*i++);
    } else if (i == a.factors_.end() || j->first < i->first) {
      r.factors_.push_back(*j++);
    } else {
      const int e = i->second + j->second;
      if (e != 0) r.factors_.emplace_back(i->first, e);
      ++i;
      ++j;
    }
  }
  return r;
}

std::string Monomial::to_string() const {
  auto sorted = factors_;
  std::sort(sorted.begin(), sorted.end(), [](const Factor& a, const Factor& b) { return display_less(a.first, b.first); });
  std::string out;
  for (const auto& [s, e] : sorted) {
    if (!out.empty()) out += "*";
    out += s.name();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

LaurentPolynomial::LaurentPolynomial(const Rational& c) {
  if (!exact::is_zero(c)) terms_.emplace(Monomial{}, c);
}

LaurentPolynomial::LaurentPolynomial(long c) : LaurentPolynomial(Rational(c)) {}

LaurentPolynomial LaurentPolynomial::variable(Symbol s, int exponent) {
  return monomial(Monomial::of(s, exponent));
}

LaurentPolynomial LaurentPolynomial::monomial(const Monomial& m, const Rational& c) {
  LaurentPolynomial p;
  p.add_term(m, c);
  return p;
}

bool LaurentPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational LaurentPolynomial::constant_term() const { return coefficient_of(Monomial{}); }

Rational LaurentPolynomial::coefficient_of(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void LaurentPolynomial::add_term(const Monomial& m, const Rational& c) {
  if (exact::is_zero(c)) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (exact::is_zero(it->second)) terms_.erase(it);
  }
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
  LaurentPolynomial r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& o) {
  *this = *this * o;
  return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Rational& c) {
  if (exact::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
  LaurentPolynomial r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

LaurentPolynomial LaurentPolynomial::pow(int k) const {
  if (k < 0) return monomial_inverse().pow(-k);
  LaurentPolynomial result(1L), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

LaurentPolynomial LaurentPolynomial::monomial_inverse() const {
  if (!is_monomial()) throw std::domain_error("only monomials are invertible: " + to_string());
  const auto& [m, c] = *terms_.begin();
  return monomial(m.inverse(), 1 / c);
}

LaurentPolynomial LaurentPolynomial::derivative(Symbol s) const {
  LaurentPolynomial r;
  for (const auto& [m, c] : terms_) {
    const int e = m.exponent(s);
    if (e == 0) continue;
    r.add_term(m * Monomial::of(s, -1), c * e);
  }
  return r;
}

LaurentPolynomial LaurentPolynomial::substitute(Symbol s, const LaurentPolynomial& value) const {
  return substitute(std::map<Symbol, LaurentPolynomial>{{s, value}});
}

LaurentPolynomial LaurentPolynomial::substitute(const std::map<Symbol, LaurentPolynomial>& values) const {
  LaurentPolynomial r;
  // Cache powers per (symbol, exponent) since the same ones recur.
  std::map<std::pair<Symbol, int>, LaurentPolynomial> powers;
  for (const auto& [m, c] : terms_) {
    LaurentPolynomial term(c);
    std::vector<Monomial::Factor> kept;
    for (const auto& [s, e] : m.factors()) {
      auto it = values.find(s);
      if (it == values.end()) {
        kept.emplace_back(s, e);
        continue;
      }
      auto key = std::make_pair(s, e);
      auto pit = powers.find(key);
      if (pit == powers.end()) pit = powers.emplace(key, it->second.pow(e)).first;
      term *= pit->second;
    }
    if (!kept.empty()) term *= monomial(Monomial::from_factors(std::move(kept)));
    r += term;
  }
  return r;
}

int LaurentPolynomial::max_degree(Symbol s) const {
  if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
  int d = terms_.begin()->first.exponent(s);
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(s));
  return d;
}

int LaurentPolynomial::min_degree(Symbol s) const {
  if (terms_.empty()) throw std::domain_error("degree of zero polynomial");
  int d = terms_.begin()->first.exponent(s);
  for (const auto& [m, c] : terms_) d = std::min(d, m.exponent(s));
  return d;
}

LaurentPolynomial LaurentPolynomial::coefficient(Symbol s, int k) const {
  LaurentPolynomial r;
  for (const auto& [m, c] : terms_)
    if (m.exponent(s) == k) r.add_term(m.without(s), c);
  return r;
}

std::set<Symbol> LaurentPolynomial::symbols() const {
  std::set<Symbol> out;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) out.insert(f.first);
  return out;
}

Rational LaurentPolynomial::evaluate_exact(const std::map<Symbol, Rational>& values) const {
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (const auto& [s, e] : m.factors()) {
      auto it = values.find(s);
      if (it == values.end()) throw std::invalid_argument("no value for symbol " + s.name());
      Rational p(1);
      for (int i = 0; i < std::abs(e); ++i) p *= it->second;
      if (e < 0) {
        if (exact::is_zero(p)) throw std::domain_error("negative power of zero");
        p = 1 / p;
      }
      term *= p;
    }
    sum += term;
  }
  return sum;
}

std::vector<std::pair<Monomial, Rational>> graded_lex_terms(const LaurentPolynomial& p) {
  const auto symbol_set = p.symbols();
  std::vector<Symbol> vars(symbol_set.begin(), symbol_set.end());
  std::sort(vars.begin(), vars.end(), display_less);
  struct Row {
    int degree;
    std::vector<int> exps;
    const Monomial* m;
    const Rational* c;
  };
  std::vector<Row> rows;
  rows.reserve(p.size());
  for (const auto& [m, c] : p.terms()) {
    Row r{m.total_degree(), {}, &m, &c};
    r.exps.reserve(vars.size());
    for (Symbol s : vars) r.exps.push_back(m.exponent(s));
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.exps > b.exps;
  });
  std::vector<std::pair<Monomial, Rational>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.emplace_back(*r.m, *r.c);
  return out;
}

std::string LaurentPolynomial::to_string() const {
  if (terms_.empty()) return "0/1";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : graded_lex_terms(*this)) {
    if (!first) os << " + ";
    first = false;
    os << exact::to_string(c);
    if (!m.is_one()) os << "*" << m.to_string();
  }
  return os.str();
}

}  // namespace todalab::exact
