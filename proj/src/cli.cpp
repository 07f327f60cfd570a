#include "certquad/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "certquad/minimizer.hpp"
#include "certquad/oracle.hpp"
#include "certquad/registry.hpp"
#include "certquad/rules.hpp"

namespace certquad::cli {

using nlohmann::json;

namespace {

constexpr double identity_threshold = 1e-8;
constexpr double minimum_tolerance = 1e-6;
constexpr double coefficient_tolerance = 1e-4;

class UsageError : public Error {
public:
  using Error::Error;
};

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

Rectangle rect_of(const RunConfig& c) {
  return Rectangle(c.rect[0], c.rect[1], c.rect[2], c.rect[3]);
}

json rect_json(const RunConfig& c) { return json::array({c.rect[0], c.rect[1], c.rect[2], c.rect[3]}); }

RuleId rule_of(const RunConfig& c) {
  const RuleId r = parse_rule_id(c.rule);
  if (r == RuleId::custom_phi) throw UsageError("custom-phi needs a programmatic weight");
  return r;
}

RuleId composite_of(RuleId r) {
  if (r == RuleId::trapezoid) return RuleId::composite_trapezoid;
  if (r == RuleId::midpoint) return RuleId::composite_midpoint;
  return r;
}

NormOptions norm_options(const RunConfig& c) {
  NormOptions o;
  o.resolution = c.resolution;
  return o;
}

BoundField bound_field(const QuadratureReport& r) {
  return {r.bound, r.components.fx_term, r.components.fy_term, r.components.fxy_term};
}

std::vector<ProvenanceEntry> provenance_of(const DerivativeNorms& n) {
  std::vector<ProvenanceEntry> out;
  for (const auto& [name, source] : n.provenance) out.push_back({name, to_string(source)});
  return out;
}

json norms_json(const DerivativeNorms& n) {
  json j;
  j["family"] = to_string(n.family);
  j["p"] = n.p.to_string();
  j["fx_bottom"] = n.fx_bottom;
  j["fx_top"] = n.fx_top;
  j["fy_left"] = n.fy_left;
  j["fy_right"] = n.fy_right;
  j["fxy"] = n.fxy;
  j["interior_x_lines"] = n.interior_x_lines;
  j["interior_y_lines"] = n.interior_y_lines;
  return j;
}

json quadrature_inputs(const RunConfig& c, const Exponent& p, RuleId rule) {
  json in;
  in["function"] = c.function;
  in["rect"] = rect_json(c);
  in["p"] = p.to_string();
  in["rule"] = to_string(rule);
  in["m"] = is_composite(rule) ? c.m : 1;
  in["n"] = is_composite(rule) ? c.n : 1;
  in["resolution"] = c.resolution;
  return in;
}

// ---------------------------------------------------------------------------

Report do_quadrature(const RunConfig& c, bool with_oracle) {
  const Rectangle rect = rect_of(c);
  const Exponent p = Exponent::parse(c.p);
  const RuleId rule = rule_of(c);
  const Integrand f = make_integrand(c.function, rect);
  const auto qr = apply_rule(rule, f, rect, p, PartitionSpec(c.m, c.n), norm_options(c));

  Report r;
  r.command = c.command;
  r.inputs = quadrature_inputs(c, p, rule);
  r.estimate = qr.estimate;
  r.bound = bound_field(qr);
  r.provenance = provenance_of(qr.norms_used);
  r.details["notes"] = qr.notes;
  r.details["norms"] = norms_json(qr.norms_used);
  if (with_oracle) {
    r.inputs["tol"] = c.tol;
    const auto o = oracle_integrate(f, rect, c.tol);
    const double error = qr.estimate - o.value;
    r.oracle = OracleField{o.value, o.error_estimate};
    r.details["error"] = error;
    r.details["bound_over_error"] = finite_or_null(qr.bound / std::abs(error));
    r.pass = certificate_holds(error, qr.bound, o.value);
  }
  return r;
}

double slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Report do_converge(const RunConfig& c) {
  if (c.levels < 0 || c.levels > 12) throw UsageError("--levels must lie in [0, 12]");
  const Rectangle rect = rect_of(c);
  const Exponent p = Exponent::parse(c.p);
  const RuleId rule = composite_of(rule_of(c));
  const Integrand f = make_integrand(c.function, rect);
  const auto o = oracle_integrate(f, rect, c.tol);
  DerivativeNormCalculator calc(f, rect, norm_options(c));

  Report r;
  r.command = c.command;
  r.inputs = {{"function", c.function}, {"rect", rect_json(c)}, {"p", p.to_string()},
              {"rule", to_string(rule)}, {"levels", c.levels}, {"resolution", c.resolution},
              {"tol", c.tol}};
  r.oracle = OracleField{o.value, o.error_estimate};
  json rows = json::array();
  std::vector<double> log_n, log_bound;
  for (int k = 0; k <= c.levels; ++k) {
    const int n = 1 << k;
    const auto qr = apply_rule(rule, calc, f, rect, p, PartitionSpec(n, n));
    const double error = qr.estimate - o.value;
    const bool ok = certificate_holds(error, qr.bound, o.value);
    r.pass = r.pass && ok;
    rows.push_back({{"n", n}, {"estimate", qr.estimate}, {"error", error}, {"bound", qr.bound},
                    {"bound_over_error", finite_or_null(qr.bound / std::abs(error))}, {"pass", ok}});
    if (k > 0 && qr.bound > 0) {
      log_n.push_back(std::log(n));
      log_bound.push_back(std::log(qr.bound));
    }
    if (k == c.levels) {
      r.estimate = qr.estimate;
      r.bound = bound_field(qr);
      r.provenance = provenance_of(qr.norms_used);
    }
  }
  r.details["rows"] = rows;
  r.details["bound_slope"] = log_n.size() >= 2 ? finite_or_null(slope(log_n, log_bound)) : json(nullptr);
  return r;
}

WeightFunction weight_of(const RunConfig& c, const Rectangle& rect) {
  const PartitionSpec part(c.m, c.n);
  if (c.weight == "trapezoid") return TrapezoidPhi{rect};
  if (c.weight == "midpoint") return MidpointPhi{rect};
  if (c.weight == "composite-trapezoid") return CompositeTrapezoidPhi{rect, part};
  if (c.weight == "composite-midpoint") return CompositeMidpointPhi{rect, part};
  throw UsageError("unknown weight '" + c.weight +
                   "'; available: trapezoid, midpoint, composite-trapezoid, composite-midpoint");
}

Report do_identity(const RunConfig& c) {
  const Rectangle rect = rect_of(c);
  const Integrand f = make_integrand(c.function, rect);
  const WeightFunction w = weight_of(c, rect);
  const auto t = parts_identity_terms(f, w, std::max(1, c.resolution / 4));
  const double threshold = identity_threshold * (1.0 + std::abs(t.lhs));

  Report r;
  r.command = c.command;
  r.inputs = {{"function", c.function}, {"rect", rect_json(c)}, {"weight", c.weight},
              {"m", c.m}, {"n", c.n}, {"resolution", c.resolution}};
  r.details = {{"lhs", t.lhs},         {"rhs", t.rhs()},       {"corners", t.corners},
               {"edge_x", t.edge_x},   {"edge_y", t.edge_y},   {"area", t.area},
               {"residual", t.residual()}, {"threshold", threshold}};
  r.pass = t.residual() <= threshold;
  return r;
}

Report do_minimize(const RunConfig& c) {
  const Exponent q = Exponent::parse(c.q);
  if (c.restarts < 1) throw UsageError("--restarts must be >= 1");
  SearchOptions opts;
  opts.restarts = c.restarts;
  const auto basis = AlphaBetaBasis::default_basis();
  const auto res = search_min(q, basis, opts);
  const double target = min_phi_norm_value(q);
  double max_coef = 0.0;
  for (double v : res.coefficients) max_coef = std::max(max_coef, std::abs(v));

  Report r;
  r.command = c.command;
  r.inputs = {{"q", q.to_string()}, {"restarts", c.restarts}, {"basis", "even {1,s^2,s^4}, odd {s,s^3,s^5}"}};
  r.details["closed_form_minimum"] = target;
  r.details["achieved_norm"] = res.achieved_norm;
  r.details["objective"] = res.objective;
  r.details["coefficients"] = res.coefficients;
  r.details["max_abs_coefficient"] = max_coef;
  json restarts = json::array();
  for (const auto& o : res.restarts)
    restarts.push_back({{"objective", o.objective}, {"evaluations", o.evaluations}});
  r.details["restarts"] = restarts;

  const bool above = res.achieved_norm >= target - minimum_tolerance;
  if (q.is_one()) {
    r.pass = above;
    r.details["note"] = "q=1: minimum value only; uniqueness not asserted";
  } else if (q.is_infinite()) {
    const double psi = phi_norm_numeric(AlphaBetaBasis::default_basis().to_custom_phi(), q, c.resolution);
    const double alt = phi_norm_numeric(sup_norm_alternative(), q, c.resolution);
    r.details["psi_norm"] = psi;
    r.details["alternative_norm"] = alt;
    r.details["alternative"] = "st - |s| + |t|";
    r.pass = above && std::abs(psi - 1.0) <= minimum_tolerance && std::abs(alt - 1.0) <= minimum_tolerance;
  } else {
    r.pass = std::abs(res.achieved_norm - target) <= minimum_tolerance && max_coef <= coefficient_tolerance;
  }
  return r;
}

Report do_corpus(const RunConfig& c) {
  const Rectangle rect = rect_of(c);
  const std::vector<RuleId> rules{RuleId::trapezoid, RuleId::midpoint, RuleId::composite_trapezoid,
                                  RuleId::composite_midpoint};
  const std::vector<Exponent> ps{Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0),
                                 Exponent::infinity()};
  const std::vector<int> sizes{1, 2, 4, 8};

  Report r;
  r.command = c.command;
  r.inputs = {{"rect", rect_json(c)}, {"resolution", c.resolution}, {"tol", c.tol}};
  json rows = json::array();
  json violations = json::array();
  int cases = 0;
  double worst = 0.0;
  for (const auto& name : registry_names()) {
    const Integrand f = make_integrand(name, rect);
    const double exact = oracle_integrate(f, rect, c.tol).value;
    DerivativeNormCalculator calc(f, rect, norm_options(c));
    for (RuleId rule : rules) {
      for (const Exponent& p : ps) {
        for (int k : sizes) {
          const auto qr = apply_rule(rule, calc, f, rect, p, PartitionSpec(k, k));
          const double error = qr.estimate - exact;
          const bool ok = certificate_holds(error, qr.bound, exact);
          ++cases;
          if (qr.bound > 0) worst = std::max(worst, std::abs(error) / qr.bound);
          json row = {{"function", name}, {"rule", to_string(rule)}, {"p", p.to_string()},
                      {"n", k},           {"error", error},          {"bound", qr.bound},
                      {"pass", ok}};
          if (!ok) violations.push_back(row);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  r.pass = violations.empty();
  r.details = {{"cases", cases}, {"violations", violations}, {"worst_error_over_bound", worst},
               {"rows", rows}};
  return r;
}

// ---------------------------------------------------------------------------

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string num(const json& v) { return v.is_number() ? num(v.get<double>()) : std::string("-"); }

}  // namespace

json to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["inputs"] = r.inputs;
  j["estimate"] = r.estimate ? json(*r.estimate) : json(nullptr);
  j["oracle"] = r.oracle ? json{{"value", r.oracle->value}, {"err", r.oracle->err}} : json(nullptr);
  j["bound"] = r.bound ? json{{"total", r.bound->total},
                              {"fx_term", r.bound->fx_term},
                              {"fy_term", r.bound->fy_term},
                              {"fxy_term", r.bound->fxy_term}}
                       : json(nullptr);
  json prov = json::array();
  for (const auto& e : r.provenance) prov.push_back({{"name", e.name}, {"source", e.source}});
  j["provenance"] = prov;
  j["pass"] = r.pass;
  j["details"] = r.details;
  return j;
}

Report report_from_json(const json& j) {
  Report r;
  r.command = j.at("command").get<std::string>();
  r.inputs = j.at("inputs");
  if (!j.at("estimate").is_null()) r.estimate = j.at("estimate").get<double>();
  if (const auto& o = j.at("oracle"); !o.is_null())
    r.oracle = OracleField{o.at("value").get<double>(), o.at("err").get<double>()};
  if (const auto& b = j.at("bound"); !b.is_null())
    r.bound = BoundField{b.at("total").get<double>(), b.at("fx_term").get<double>(),
                         b.at("fy_term").get<double>(), b.at("fxy_term").get<double>()};
  for (const auto& e : j.at("provenance"))
    r.provenance.push_back({e.at("name").get<std::string>(), e.at("source").get<std::string>()});
  r.pass = j.at("pass").get<bool>();
  r.details = j.at("details");
  return r;
}

Report execute(const RunConfig& c) {
  if (c.m < 1 || c.n < 1) throw UsageError("--m and --n must be >= 1");
  if (c.resolution < 16) throw UsageError("--resolution must be >= 16");
  if (c.command == "integrate") return do_quadrature(c, true);
  if (c.command == "bound") return do_quadrature(c, false);
  if (c.command == "converge") return do_converge(c);
  if (c.command == "verify-identity") return do_identity(c);
  if (c.command == "minimize-norm") return do_minimize(c);
  if (c.command == "corpus-report") return do_corpus(c);
  throw UsageError("unknown command '" + c.command + "'");
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "command: " << r.command << "\n";
  for (const auto& [k, v] : r.inputs.items()) os << "  " << k << ": " << v.dump() << "\n";
  if (r.estimate) os << "estimate:  " << num(*r.estimate) << "\n";
  if (r.oracle) os << "oracle:    " << num(r.oracle->value) << "  (err " << num(r.oracle->err) << ")\n";
  if (r.bound)
    os << "bound:     " << num(r.bound->total) << "  = fx " << num(r.bound->fx_term) << " + fy "
       << num(r.bound->fy_term) << " + fxy " << num(r.bound->fxy_term) << "\n";
  if (r.details.contains("error")) os << "error:     " << num(r.details["error"]) << "\n";

  if (r.command == "converge") {
    os << std::setw(6) << "n" << std::setw(20) << "estimate" << std::setw(20) << "error"
       << std::setw(20) << "bound" << std::setw(16) << "bound/error" << "\n";
    for (const auto& row : r.details["rows"])
      os << std::setw(6) << row["n"].get<int>() << std::setw(20) << num(row["estimate"])
         << std::setw(20) << num(row["error"]) << std::setw(20) << num(row["bound"])
         << std::setw(16) << num(row["bound_over_error"]) << "\n";
    os << "bound slope (log-log): " << num(r.details["bound_slope"]) << "\n";
  } else if (r.command == "corpus-report") {
    os << "cases: " << r.details["cases"].get<int>()
       << "  violations: " << r.details["violations"].size()
       << "  worst error/bound: " << num(r.details["worst_error_over_bound"]) << "\n";
    for (const auto& v : r.details["violations"])
      os << "  VIOLATION " << v["function"].get<std::string>() << " " << v["rule"].get<std::string>()
         << " p=" << v["p"].get<std::string>() << " n=" << v["n"].get<int>() << "\n";
  } else if (r.command == "verify-identity" || r.command == "minimize-norm") {
    for (const auto& [k, v] : r.details.items())
      if (k != "restarts") os << k << ": " << (v.is_number() ? num(v) : v.dump()) << "\n";
  } else if (r.details.contains("notes")) {
    for (const auto& note : r.details["notes"]) os << "note: " << note.get<std::string>() << "\n";
  }
  if (!r.provenance.empty()) {
    os << "provenance:";
    for (const auto& e : r.provenance) os << " " << e.name << "=" << e.source;
    os << "\n";
  }
  os << "pass: " << (r.pass ? "yes" : "NO") << "\n";
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified-error quadrature on rectangles", "certquad"};
  app.require_subcommand(1);
  RunConfig config;
  std::vector<double> rect(config.rect.begin(), config.rect.end());
  std::string format = "text";

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--rect", rect, "a b c d")->expected(4);
    sub->add_option("--resolution", config.resolution, "Panels per axis for norms");
    sub->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  };
  const auto add_quadrature = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--function", config.function, "Registry integrand");
    sub->add_option("--p", config.p, "Exponent: decimal or inf");
    sub->add_option("--rule", config.rule,
                    "trapezoid | midpoint | composite-trapezoid | composite-midpoint");
    sub->add_option("--m", config.m);
    sub->add_option("--n", config.n);
    sub->add_option("--tol", config.tol, "Oracle tolerance");
  };

  add_quadrature(app.add_subcommand("integrate", "Estimate, certificate and oracle comparison"));
  add_quadrature(app.add_subcommand("bound", "Estimate and certificate only"));
  auto* converge = app.add_subcommand("converge", "Sweep m = n = 1, 2, 4, ..., 2^levels");
  add_quadrature(converge);
  converge->add_option("--levels", config.levels);
  auto* identity = app.add_subcommand("verify-identity", "Integration-by-parts residual");
  add_common(identity);
  identity->add_option("--function", config.function);
  identity->add_option("--weight", config.weight);
  identity->add_option("--m", config.m);
  identity->add_option("--n", config.n);
  auto* minimize = app.add_subcommand("minimize-norm", "Search for the least-norm weight");
  add_common(minimize);
  minimize->add_option("--q", config.q, "Exponent of the weight norm");
  minimize->add_option("--restarts", config.restarts);
  auto* corpus = app.add_subcommand("corpus-report", "Certificate matrix over the registry");
  add_common(corpus);
  corpus->add_option("--tol", config.tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_success : exit_usage;
  }

  config.command = app.get_subcommands().front()->get_name();
  std::copy(rect.begin(), rect.end(), config.rect.begin());
  config.format = format == "json" ? OutputFormat::json : OutputFormat::text;

  try {
    const Report report = execute(config);
    if (config.format == OutputFormat::json)
      out << to_json(report).dump(2) << "\n";
    else
      out << render_text(report);
    return report.pass ? exit_success : exit_certificate_violation;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_usage;
  } catch (const RegistryError& e) {
    err << "registry error: " << e.what() << "\n";
    return exit_usage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return exit_usage;
  } catch (const ConfigurationError& e) {
    err << "configuration error: " << e.what() << "\n";
    return exit_usage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical;
  }
}

}  // namespace certquad::cli
