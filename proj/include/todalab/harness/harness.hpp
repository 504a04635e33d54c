#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "todalab/exact/rational.hpp"

namespace todalab::harness {

using json = nlohmann::json;
using exact::Rational;

inline constexpr const char* kVersion = "0.1.0";

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tasks accepted by run(), in dispatch order for "all".
const std::vector<std::string>& known_tasks();

struct RunConfig {
  std::string task;
  int n = 0;                        // 0 selects the task default
  std::vector<Rational> lambda;     // empty selects a default or a seeded draw
  std::vector<double> q;            // empty selects q_i = 1
  double hbar = -1.0;
  int order = 4;                    // Stirling order K for classical-limit
  int window = 4;                   // monomial window M for virasoro
  std::optional<double> tol;        // task default when unset
  std::vector<int> chart;           // k-sequence; empty means every chart
  std::string output;               // empty writes to the given stream
  std::string format = "json";
  std::uint64_t seed = 1;
  bool deterministic = false;       // pins runtime_ms to 0
  std::string command;              // command line echoed in the report
};

struct Report {
  std::string task;
  json params = json::object();
  json results = json::array();
  std::vector<double> residuals;
  bool pass = false;
  double runtime_ms = 0;
  std::string command;
  std::vector<std::string> warnings;
};

/// Parses "1/2,-1/2" or "0.5,-0.5"; throws InvalidInput.
std::vector<Rational> parse_rational_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// Checks ranges and the lambda constraints of the task. Throws InvalidInput.
void validate(const RunConfig& config);

/// Runs one task. Throws InvalidInput for bad configurations.
Report run(const RunConfig& config);

/// Applies the report invariants: an empty result list passes vacuously
/// with a warning.
void finalize(Report& report);

json to_json(const Report& report);
/// Deterministic serialization: "json" (indented, sorted keys) or "text".
std::string emit_report(const Report& report, const std::string& format);

/// One "pointer = leaf" line per JSON leaf, with [] and {} kept as leaves.
std::string to_text(const json& document);
json from_text(const std::string& text);

/// Full command-line entry point; returns the process exit code
/// (0 pass, 1 fail, 2 invalid input).
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace todalab::harness
