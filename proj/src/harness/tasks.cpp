#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "todalab/critical/critical.hpp"
#include "todalab/critical/uv_identity.hpp"
#include "todalab/harness/harness.hpp"
#include "todalab/mirror/chart.hpp"
#include "todalab/oscillatory/integrals.hpp"
#include "todalab/semiclassical/semiclassical.hpp"
#include "todalab/toda/toda.hpp"
#include "todalab/virasoro/quantization.hpp"

namespace todalab::harness {

namespace {

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json rationals_json(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& r : v) a.push_back(exact::to_string(r));
  return a;
}

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& r : v) out.push_back(exact::to_double(r));
  return out;
}

int default_n(const std::string& task) {
  if (task == "commute" || task == "mirror" || task == "classical-limit") return 3;
  if (task == "critical") return 2;
  return 1;
}

double default_tol(const std::string& task, int n) {
  if (task == "critical") return 1e-8;
  if (task == "eigen") return n == 1 ? 1e-6 : 1e-3;
  return 0.0;  // exact tasks
}

/// n+1 distinct multiples of 1/8 summing to zero.
std::vector<Rational> draw_lambda(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-16, 16);
  for (;;) {
    std::vector<Rational> l;
    Rational sum = 0;
    for (int i = 0; i < n; ++i) {
      l.push_back(exact::make_rational(dist(rng), 8));
      sum += l.back();
    }
    l.push_back(-sum);
    std::set<Rational> distinct(l.begin(), l.end());
    if (static_cast<int>(distinct.size()) == n + 1) return l;
  }
}

std::vector<Rational> default_lambda(const RunConfig& c, int n) {
  if (!c.lambda.empty()) return c.lambda;
  if (c.task == "eigen")
    return n == 1 ? std::vector<Rational>{exact::make_rational(1, 2), exact::make_rational(-1, 2)}
                  : std::vector<Rational>{exact::make_rational(1, 4), exact::make_rational(1, 8),
                                          exact::make_rational(-3, 8)};
  return draw_lambda(n, c.seed);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

void check_lambda(const std::vector<Rational>& lambda, int n, bool distinct) {
  require(static_cast<int>(lambda.size()) == n + 1, "lambda must have n+1 = " + std::to_string(n + 1) + " entries");
  Rational sum = 0;
  for (const auto& l : lambda) sum += l;
  require(sum == 0, "lambda must sum to zero (sum is " + exact::to_string(sum) + ")");
  if (distinct) {
    std::set<Rational> s(lambda.begin(), lambda.end());
    require(s.size() == lambda.size(), "lambda must have distinct entries");
  }
}

struct Context {
  const RunConfig& config;
  int n;
  double tol;
  Report& report;
};

std::optional<mirror::SigmaChart> selected_chart(const Context& c) {
  if (c.config.chart.empty()) return std::nullopt;
  try {
    return mirror::make_chart(mirror::MirrorGraph(c.n), c.config.chart);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(std::string("chart: ") + e.what());
  }
}

bool task_commute(Context& c) {
  const auto d = toda::toda_operators(c.n);
  const auto h = toda::build_hamiltonian(c.n);
  bool ok = true;
  auto record = [&](const std::string& label, const toda::DifferentialOperator& op) {
    const auto terms = op.terms().size();
    c.report.results.push_back({{"commutator", label}, {"nonzero_terms", terms}});
    c.report.residuals.push_back(static_cast<double>(terms));
    ok = ok && terms == 0;
  };
  for (int i = 0; i <= c.n; ++i)
    for (int j = i + 1; j <= c.n; ++j)
      record("[D" + std::to_string(i + 1) + ",D" + std::to_string(j + 1) + "]", toda::commutator(d[i], d[j]));
  for (int i = 0; i <= c.n; ++i) record("[H,D" + std::to_string(i + 1) + "]", toda::commutator(h, d[i]));
  return ok;
}

bool task_mirror(Context& c) {
  const mirror::MirrorGraph g(c.n);
  const auto charts = mirror::all_charts(g);
  long fact = 1;
  for (int i = 2; i <= c.n + 1; ++i) fact *= i;
  bool ok = static_cast<long>(charts.size()) == fact;
  std::set<std::vector<int>> perms;
  const auto lam = [](int i) { return exact::LaurentPolynomial::variable(exact::lambda(i)); };
  for (const auto& chart : charts) {
    std::map<exact::Symbol, exact::LaurentPolynomial> subs;
    for (const auto& [s, m] : chart.edge_monomials()) subs.emplace(s, exact::LaurentPolynomial::monomial(m));
    bool relations = true;
    for (const auto& b : g.boxes()) relations = relations && g.box_relation(b).substitute(subs).is_zero();
    for (const auto& r : g.roofs()) relations = relations && g.roof_relation(r).substitute(subs).is_zero();
    std::multiset<std::string> got, want;
    for (const auto& e : chart.exponents()) got.insert(mirror::impose_trace_zero(e, c.n).to_string());
    const auto& p = chart.permutation();
    for (int i = 0; i <= c.n; ++i)
      for (int j = 0; j < i; ++j) want.insert(mirror::impose_trace_zero(lam(p[i]) - lam(p[j]), c.n).to_string());
    const bool exponents = got == want;
    const bool unimodular = std::abs(chart.jacobian_sign()) == 1;
    perms.insert(p);
    const bool chart_ok = relations && exponents && unimodular;
    c.report.results.push_back({{"chart", chart.label()},
                                {"permutation", p},
                                {"relations_hold", relations},
                                {"exponents_match_permutation", exponents},
                                {"jacobian_sign", chart.jacobian_sign()}});
    c.report.residuals.push_back(chart_ok ? 0.0 : 1.0);
    ok = ok && chart_ok;
  }
  ok = ok && static_cast<long>(perms.size()) == fact;
  c.report.results.push_back({{"chart_count", charts.size()}, {"expected", fact}, {"distinct_permutations", perms.size()}});
  if (c.n <= 4) {
    const auto uv = critical::uv_identity_report(c.n);
    c.report.results.push_back({{"uv_identity", uv.ok()}, {"checks", uv.checks}, {"failures", uv.failures.size()}});
    c.report.residuals.push_back(static_cast<double>(uv.failures.size()));
    ok = ok && uv.ok();
  }
  return ok;
}

std::vector<double> q_values(const Context& c) {
  if (c.config.q.empty()) return std::vector<double>(c.n, 1.0);
  return c.config.q;
}

bool task_critical(Context& c, const std::vector<Rational>& lambda) {
  const auto l = to_doubles(lambda);
  std::vector<critical::cplx> q;
  for (double x : q_values(c)) q.emplace_back(x, 0.0);
  const auto census = critical::all_critical_points(c.n, l, q);
  long fact = 1;
  for (int i = 2; i <= c.n + 1; ++i) fact *= i;
  const auto only = selected_chart(c);
  bool ok = static_cast<long>(census.records.size()) == fact && census.all_distinct && census.all_nondegenerate;
  for (const auto& w : census.warnings) c.report.warnings.push_back(w);
  for (const auto& r : census.records) {
    const double spectral = critical::spectral_check(r);
    const auto lag = critical::to_lagrangian(r);
    const double lagr = lag.residuals.empty() ? 0.0 : *std::max_element(lag.residuals.begin(), lag.residuals.end());
    ok = ok && spectral < c.tol && lagr < c.tol && r.nondegenerate;
    c.report.residuals.push_back(spectral);
    c.report.residuals.push_back(lagr);
    if (only && only->k() != r.chart.k()) continue;
    c.report.results.push_back({{"chart", r.chart.label()},
                                {"permutation", r.chart.permutation()},
                                {"critical_value", complex_json(r.critical_value)},
                                {"log_hessian_det", complex_json(r.log_hessian_det)},
                                {"nondegenerate", r.nondegenerate},
                                {"spectral_residual", spectral},
                                {"lagrangian_residual", lagr},
                                {"detoured", r.detoured}});
  }
  c.report.results.push_back({{"records", census.records.size()},
                              {"expected", fact},
                              {"all_distinct", census.all_distinct},
                              {"all_nondegenerate", census.all_nondegenerate},
                              {"min_pairwise_distance", census.min_pairwise_distance}});
  return ok;
}

bool task_eigen(Context& c, const std::vector<Rational>& lambda) {
  const auto l = to_doubles(lambda);
  const auto q = q_values(c);
  std::vector<double> t{0.0};
  for (double x : q) t.push_back(t.back() + std::log(x));
  const auto rep = osc::eigen_residual(c.n, l, c.config.hbar, t, 1e-2, selected_chart(c));
  bool ok = true;
  for (std::size_t i = 0; i < rep.residuals.size(); ++i) {
    c.report.results.push_back({{"operator", "D" + std::to_string(i + 1)}, {"relative_residual", rep.residuals[i]}});
    c.report.residuals.push_back(rep.residuals[i]);
    ok = ok && rep.residuals[i] < c.tol;
  }
  json summary{{"integral", rep.value}, {"evaluations", rep.evaluations}, {"stencil_points", rep.stencil_points}};
  if (c.n == 1) {
    const double oracle = osc::n1_bessel_value(l[0], q[0], c.config.hbar);
    const double agreement = std::abs(rep.value / oracle - 1.0);
    summary["bessel_oracle"] = oracle;
    summary["oracle_relative_mismatch"] = agreement;
    c.report.residuals.push_back(agreement);
    ok = ok && agreement < 1e-8;
  }
  c.report.results.push_back(summary);
  return ok;
}

bool task_classical(Context& c) {
  const auto reps = semiclassical::verify_all_classical_limits(c.n, c.config.order);
  bool ok = !reps.empty();
  for (const auto& r : reps) {
    json entry{{"permutation", r.permutation},
               {"K", r.K},
               {"matches", r.matches},
               {"orthogonal", r.orthogonal},
               {"homogeneous", r.homogeneous}};
    if (r.first_mismatch) entry["first_mismatch_hbar_power"] = *r.first_mismatch;
    c.report.results.push_back(entry);
    c.report.residuals.push_back(r.pass() ? 0.0 : 1.0);
    ok = ok && r.pass();
  }
  return ok;
}

bool task_virasoro(Context& c) {
  using namespace virasoro;
  const int M = c.config.window;
  bool ok = true;
  const auto space = LoopSpace::standard(1);
  for (int m = -1; m <= 2; ++m) {
    const bool same = quantize(space, point_operator(1, m), M + 2) == point_virasoro(m, M + 2).restricted(M + 2);
    c.report.results.push_back({{"quantize_matches_explicit", same}, {"m", m}});
    c.report.residuals.push_back(same ? 0.0 : 1.0);
    ok = ok && same;
  }
  for (int m = -1; m <= 2; ++m)
    for (int mp = -1; mp <= 2; ++mp) {
      if (m + mp < -1 || m + mp > 2) continue;
      const auto r = commutation_check(m, mp, M);
      const Rational forced = m + mp == 0 ? exact::make_rational(m - mp, 16) : Rational(0);
      const bool pass = r.window_stable && r.kind != CommutatorResidual::Kind::Operator && r.scalar == forced;
      json entry{{"pair", json::array({m, mp})},
                 {"window", r.window},
                 {"monomials", r.tested},
                 {"residual", kind_name(r.kind)},
                 {"scalar", exact::to_string(r.scalar)},
                 {"forced_scalar", exact::to_string(forced)},
                 {"window_stable", r.window_stable}};
      if (r.kind == CommutatorResidual::Kind::Operator) {
        entry["mismatch_norm"] = r.mismatch_norm;
        entry["mismatch"] = r.mismatch;
      }
      c.report.results.push_back(entry);
      c.report.residuals.push_back(std::abs(exact::to_double(r.scalar - forced)) + r.mismatch_norm);
      ok = ok && pass;
    }
  std::mt19937_64 rng(c.config.seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int N = 1; N <= 3; ++N) {
    auto mu = exact::rational_zero(N, N), rho = exact::rational_zero(N, N);
    for (int i = 0; i < N; ++i) {
      mu[i][i] = exact::make_rational(num(rng), den(rng));
      for (int j = 0; j < i; ++j) rho[i][j] = exact::make_rational(num(rng), den(rng));
    }
    bool holds = true;
    for (int m = -1; m <= 2; ++m)
      for (int mp = -1; mp <= 2; ++mp)
        if (m + mp >= -1) holds = holds && family_bracket_holds(mu, rho, m, mp, Rational(mp - m), 6);
    c.report.results.push_back({{"family_bracket", holds}, {"N", N}, {"window", 6}});
    c.report.residuals.push_back(holds ? 0.0 : 1.0);
    ok = ok && holds;
  }
  return ok;
}

}  // namespace

const std::vector<std::string>& known_tasks() {
  static const std::vector<std::string> tasks{"commute", "mirror", "critical", "eigen", "classical-limit", "virasoro",
                                              "all"};
  return tasks;
}

void validate(const RunConfig& c) {
  const auto& tasks = known_tasks();
  require(std::find(tasks.begin(), tasks.end(), c.task) != tasks.end(), "unknown task '" + c.task + "'");
  require(c.format == "json" || c.format == "text", "format must be json or text");
  require(!c.tol || *c.tol > 0, "tolerance must be positive");
  if (c.task == "all") return;
  const int n = c.n == 0 ? default_n(c.task) : c.n;
  if (c.task == "commute") require(n >= 1 && n <= 4, "commute supports 1 <= n <= 4");
  if (c.task == "mirror") require(n >= 1 && n <= 5, "mirror supports 1 <= n <= 5");
  if (c.task == "critical") require(n >= 1 && n <= 4, "critical supports 1 <= n <= 4");
  if (c.task == "eigen") require(n == 1 || n == 2, "eigen supports n = 1, 2");
  if (c.task == "classical-limit") {
    require(n >= 1 && n <= 4, "classical-limit supports 1 <= n <= 4");
    require(c.order >= 1 && c.order <= 8, "order must lie in 1..8");
  }
  if (c.task == "virasoro") require(c.window >= 1 && c.window <= 6, "window must lie in 1..6");
  if (c.task == "critical" || c.task == "eigen") {
    if (!c.lambda.empty()) check_lambda(c.lambda, n, c.task == "critical");
    if (!c.q.empty()) {
      require(static_cast<int>(c.q.size()) == n, "q must have n entries");
      for (double x : c.q) require(std::isfinite(x) && x > 0, "q entries must be positive");
    }
    if (!c.chart.empty()) require(static_cast<int>(c.chart.size()) == n, "chart k-sequence must have n entries");
  }
  if (c.task == "eigen") require(std::isfinite(c.hbar) && c.hbar < 0, "hbar must be negative");
}

void finalize(Report& r) {
  if (r.results.empty()) {
    r.pass = true;
    r.warnings.push_back("no results; pass holds vacuously");
  }
}

Report run(const RunConfig& config) {
  validate(config);
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.task = config.task;
  report.command = config.command;
  const int n = config.n == 0 ? default_n(config.task) : config.n;

  if (config.task == "all") {
    report.pass = true;
    report.params = {{"seed", config.seed}};
    for (const auto& t : known_tasks()) {
      if (t == "all") continue;
      RunConfig sub;
      sub.task = t;
      sub.seed = config.seed;
      sub.order = config.order;
      sub.window = config.window;
      sub.deterministic = config.deterministic;
      Report r = run(sub);
      json entry = to_json(r);
      entry.erase("command");
      entry.erase("version");
      entry.erase("runtime_ms");
      report.results.push_back(entry);
      report.residuals.insert(report.residuals.end(), r.residuals.begin(), r.residuals.end());
      for (const auto& w : r.warnings) report.warnings.push_back(t + ": " + w);
      report.pass = report.pass && r.pass;
    }
  } else {
    const double tol = config.tol.value_or(default_tol(config.task, n));
    report.params = {{"n", n}, {"seed", config.seed}, {"tolerance", tol}};
    Context ctx{config, n, tol, report};
    if (config.task == "commute") {
      report.pass = task_commute(ctx);
    } else if (config.task == "mirror") {
      report.pass = task_mirror(ctx);
    } else if (config.task == "critical" || config.task == "eigen") {
      const auto lambda = default_lambda(config, n);
      check_lambda(lambda, n, config.task == "critical");
      report.params["lambda"] = rationals_json(lambda);
      report.params["q"] = q_values(ctx);
      if (!config.chart.empty()) report.params["chart"] = config.chart;
      if (config.task == "eigen") report.params["hbar"] = config.hbar;
      try {
        report.pass = config.task == "critical" ? task_critical(ctx, lambda) : task_eigen(ctx, lambda);
      } catch (const critical::DegenerateLambdaError& e) {
        throw InvalidInput(e.what());
      }
    } else if (config.task == "classical-limit") {
      report.params["order"] = config.order;
      report.pass = task_classical(ctx);
    } else if (config.task == "virasoro") {
      report.params["window"] = config.window;
      report.params["degree"] = 3;
      report.pass = task_virasoro(ctx);
    }
  }
  finalize(report);
  if (!config.deterministic)
    report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace todalab::harness
