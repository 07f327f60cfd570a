#pragma once

// Command-line workflows: integrate, bound, converge, verify-identity,
// minimize-norm and corpus-report, with text or JSON reports.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace certquad::cli {

enum class OutputFormat { text, json };

inline constexpr int exit_success = 0;
inline constexpr int exit_certificate_violation = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

struct RunConfig {
  std::string command;
  std::string function = "poly22";
  std::array<double, 4> rect{0.0, 1.0, 0.0, 1.0};
  std::string p = "inf";
  std::string rule = "trapezoid";
  int m = 1;
  int n = 1;
  int resolution = 256;
  OutputFormat format = OutputFormat::text;
  double tol = 1e-12;
  std::string weight = "trapezoid";
  std::string q = "2";
  int levels = 5;
  int restarts = 8;
};

struct OracleField {
  double value;
  double err;
  bool operator==(const OracleField&) const = default;
};

struct BoundField {
  double total;
  double fx_term;
  double fy_term;
  double fxy_term;
  bool operator==(const BoundField&) const = default;
};

struct ProvenanceEntry {
  std::string name;
  std::string source;
  bool operator==(const ProvenanceEntry&) const = default;
};

struct Report {
  std::string command;
  nlohmann::json inputs = nlohmann::json::object();
  std::optional<double> estimate;
  std::optional<OracleField> oracle;
  std::optional<BoundField> bound;
  std::vector<ProvenanceEntry> provenance;
  bool pass = true;
  nlohmann::json details = nlohmann::json::object();

  bool operator==(const Report&) const = default;
};

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

/// Runs one workflow. Library errors propagate.
Report execute(const RunConfig& config);

std::string render_text(const Report& report);

/// Parses argv, executes, writes the report to `out` and diagnostics to
/// `err`. Returns one of the exit_* codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace certquad::cli
