#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "todalab/harness/harness.hpp"

namespace todalab::harness {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

json residual_summary(std::vector<double> r) {
  if (r.empty()) return {{"count", 0}, {"max", 0.0}, {"median", 0.0}};
  std::sort(r.begin(), r.end());
  const std::size_t k = r.size();
  const double median = k % 2 ? r[k / 2] : 0.5 * (r[k / 2 - 1] + r[k / 2]);
  return {{"count", k}, {"max", r.back()}, {"median", median}};
}

std::string escape_token(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~')
      out += "~0";
    else if (ch == '/')
      out += "~1";
    else
      out += ch;
  }
  return out;
}

void flatten(const json& j, const std::string& path, std::ostringstream& os) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, path + "/" + escape_token(k), os);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), os);
  } else {
    os << path << " = " << j.dump() << "\n";
  }
}

std::string join_command(int argc, const char* const* argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    std::string a = argv[i];
    if (i) s += ' ';
    if (a.find_first_of(" \t\"'") != std::string::npos) {
      std::string q = "'";
      for (char ch : a) q += ch == '\'' ? std::string("'\\''") : std::string(1, ch);
      s += q + "'";
    } else {
      s += a;
    }
  }
  return s;
}

}  // namespace

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) {
    try {
      out.push_back(exact::parse_rational(trim(item)));
    } catch (const std::invalid_argument&) {
      throw InvalidInput("not a rational number: '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& r : parse_rational_list(text)) out.push_back(exact::to_double(r));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    const auto t = trim(item);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (t.empty() || used != t.size()) throw InvalidInput("not an integer: '" + item + "'");
    out.push_back(v);
  }
  return out;
}

json to_json(const Report& r) {
  return {{"task", r.task},
          {"params", r.params},
          {"results", r.results},
          {"residuals", residual_summary(r.residuals)},
          {"pass", r.pass},
          {"runtime_ms", r.runtime_ms},
          {"version", kVersion},
          {"command", r.command},
          {"warnings", r.warnings}};
}

std::string to_text(const json& document) {
  std::ostringstream os;
  flatten(document, "", os);
  return os.str();
}

json from_text(const std::string& text) {
  json doc;
  std::istringstream is(text);
  std::string line;
  int number = 0;
  while (std::getline(is, line)) {
    ++number;
    if (trim(line).empty()) continue;
    const auto eq = line.find(" = ");
    if (eq == std::string::npos) throw InvalidInput("line " + std::to_string(number) + ": missing ' = '");
    const std::string path = line.substr(0, eq);
    json leaf;
    try {
      leaf = json::parse(line.substr(eq + 3));
    } catch (const json::parse_error&) {
      throw InvalidInput("line " + std::to_string(number) + ": malformed value");
    }
    if (path.empty())
      doc = leaf;
    else
      doc[json::json_pointer(path)] = leaf;
  }
  return doc;
}

std::string emit_report(const Report& report, const std::string& format) {
  const json j = to_json(report);
  if (format == "json") return j.dump(2) + "\n";
  if (format == "text") return to_text(j);
  throw InvalidInput("format must be json or text");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification runs for the quantum Toda lattice and its mirror"};
  RunConfig cfg;
  std::string lambda_text, q_text, chart_text;
  double tol = 0;
  app.add_option("task", cfg.task, "commute | mirror | critical | eigen | classical-limit | virasoro | all")
      ->required()
      ->check(CLI::IsMember(known_tasks()));
  app.add_option("--n", cfg.n, "lattice size (task default when omitted)");
  app.add_option("--lambda", lambda_text, "comma-separated rationals summing to zero");
  app.add_option("--q", q_text, "comma-separated positive q_1..q_n");
  app.add_option("--hbar", cfg.hbar, "negative hbar for the integrals");
  app.add_option("--order", cfg.order, "Stirling order K for classical-limit");
  app.add_option("--window", cfg.window, "monomial window M for virasoro");
  auto* tol_opt = app.add_option("--tol", tol, "residual tolerance");
  app.add_option("--chart", chart_text, "chart k-sequence, e.g. 1,0");
  app.add_option("--output", cfg.output, "write the report to this file");
  app.add_option("--format", cfg.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--seed", cfg.seed, "seed for sampled parameters");
  app.add_flag("--deterministic", cfg.deterministic, "report runtime_ms = 0");
  app.set_config("--config", "", "key=value file; flags override it");
  app.set_version_flag("--version", kVersion);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    if (!lambda_text.empty()) cfg.lambda = parse_rational_list(lambda_text);
    if (!q_text.empty()) cfg.q = parse_double_list(q_text);
    if (!chart_text.empty()) cfg.chart = parse_int_list(chart_text);
    if (tol_opt->count() > 0) cfg.tol = tol;
    cfg.command = join_command(argc, argv);
    const Report report = run(cfg);
    const std::string doc = emit_report(report, cfg.format);
    if (cfg.output.empty()) {
      out << doc;
    } else {
      std::ofstream f(cfg.output);
      f << doc;
      if (!f) {
        err << "error: cannot write " << cfg.output << "\n";
        return 2;
      }
    }
    return report.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace todalab::harness
