// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "certquad/minimizer.hpp"
#include "certquad/oracle.hpp"
#include "certquad/registry.hpp"
#include "certquad/rules.hpp"

using namespace certquad;

namespace {

const std::vector<RuleId> rules{RuleId::trapezoid, RuleId::midpoint, RuleId::composite_trapezoid,
                                RuleId::composite_midpoint};
const std::vector<Exponent> exponents{Exponent(1.0), Exponent(1.5), Exponent(2.0), Exponent(3.0),
                                      Exponent::infinity()};

struct Verdict {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

std::string p_label(Exponent p) { return p.is_infinite() ? "inf" : fmt(p.value()); }

double oracle_value(std::string_view name, const Rectangle& r) {
  auto f = make_integrand(name, r);
  f.exact_integral.reset();
  return oracle_integrate(f, r).value;
}

// 1. certificate validity matrix
Verdict certificate_matrix() {
  const auto t0 = Clock::now();
  const Rectangle r(0, 1, 0, 1);
  int cases = 0;
  int violations = 0;
  double worst = 0.0;
  std::string first;
  for (const auto& name : registry_names()) {
    const auto f = make_integrand(name, r);
    const double truth = oracle_value(name, r);
    DerivativeNormCalculator calc(f, r);
    for (RuleId rule : rules)
      for (const Exponent& p : exponents)
        for (int k : {1, 2, 4, 8}) {
          const auto rep = apply_rule(rule, calc, f, r, p, PartitionSpec(k, k));
          const double err = rep.estimate - truth;
          ++cases;
          if (rep.bound > 0) worst = std::max(worst, std::abs(err) / rep.bound);
          if (!certificate_holds(err, rep.bound, truth)) {
            if (violations++ == 0)
              first = name + " " + to_string(rule) + " p=" + p_label(p) + " m=n=" + std::to_string(k);
          }
        }
  }
  const double elapsed = seconds_since(t0);
  Verdict v;
  v.pass = cases == 640 && violations == 0 && elapsed < 60.0;
  v.detail = std::to_string(cases) + " cases, " + std::to_string(violations) + " violations, worst |E|/bound " +
             fmt(worst) + ", " + fmt(elapsed) + " s";
  if (!first.empty()) v.detail += ", first violation: " + first;
  return v;
}

// 2. exactness on span{1, x, y, xy}
Verdict exactness() {
  const std::vector<std::pair<std::string, Function2D>> basis{
      {"1", [](double, double) { return 1.0; }},
      {"x", [](double x, double) { return x; }},
      {"y", [](double, double y) { return y; }},
      {"xy", [](double x, double y) { return x * y; }}};
  double worst = 0.0;
  int checks = 0;
  for (const Rectangle& r : {Rectangle(0, 1, 0, 1), Rectangle(-2, 3, 1, 4)}) {
    for (const auto& [label, g] : basis) {
      const Integrand f{g, {}, {}, {}, {}, label};
      const double truth = oracle_integrate(f, r).value;
      const double scale = std::max(1.0, std::abs(truth));
      std::vector<double> estimates{trapezoid_estimate(f, r), midpoint_estimate(f, r)};
      for (int m : {1, 2, 3, 8})
        for (int n : {1, 2, 5}) {
          estimates.push_back(composite_trapezoid_estimate(f, r, PartitionSpec(m, n)));
          estimates.push_back(composite_midpoint_estimate(f, r, PartitionSpec(m, n)));
        }
      for (double e : estimates) {
        worst = std::max(worst, std::abs(e - truth) / scale);
        ++checks;
      }
    }
  }
  return {worst <= 1e-12, std::to_string(checks) + " estimates, worst relative error " + fmt(worst)};
}

// 3. closed-form vs numeric weight norms
Verdict weight_norm_audit() {
  double worst = 0.0;
  int checks = 0;
  std::string where;
  for (const Rectangle& r : {Rectangle(0, 1, 0, 1), Rectangle(-2, 3, 1, 4)}) {
    for (int m : {1, 2, 4})
      for (int n : {1, 2, 4}) {
        std::vector<WeightFunction> ws{CompositeTrapezoidPhi{r, PartitionSpec(m, n)},
                                       CompositeMidpointPhi{r, PartitionSpec(m, n)}};
        if (m == 1 && n == 1) {
          ws.push_back(TrapezoidPhi{r});
          ws.push_back(MidpointPhi{r});
        }
        for (const auto& w : ws)
          for (const Exponent& q : exponents) {
            const double closed = phi_norm_closed(w, q);
            const double numeric = phi_norm_numeric(w, q, 64);
            const double rel = std::abs(closed - numeric) / closed;
            ++checks;
            if (rel > worst) {
              worst = rel;
              where = variant_name(w) + " " + std::to_string(m) + "x" + std::to_string(n) + " q=" + p_label(q);
            }
          }
      }
  }
  return {worst <= 1e-6, std::to_string(checks) + " norms, worst relative gap " + fmt(worst) + " (" + where + ")"};
}

// 4. worked bound values for x^2 y^2 on the unit square at p = inf
Verdict worked_values() {
  const Rectangle r(0, 1, 0, 1);
  const auto f = make_integrand("poly22", r);
  const double truth = oracle_value("poly22", r);
  const auto t = apply_rule(RuleId::trapezoid, f, r, Exponent::infinity());
  const auto m = apply_rule(RuleId::midpoint, f, r, Exponent::infinity());
  const double et = std::abs(t.estimate - truth);
  const double em = std::abs(m.estimate - truth);
  const bool ok = std::abs(truth - 1.0 / 9.0) <= 1e-9 && std::abs(t.bound - 0.75) <= 1e-9 &&
                  std::abs(et - 5.0 / 36.0) <= 1e-9 && std::abs(m.bound - 0.5) <= 1e-9 &&
                  std::abs(em - 7.0 / 144.0) <= 1e-9 && et <= t.bound && em <= m.bound;
  return {ok, "trapezoid bound " + fmt(t.bound) + " error " + fmt(et) + "; midpoint bound " + fmt(m.bound) +
                  " error " + fmt(em)};
}

// 5. least-norm weight search
Verdict minimizer() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (double qv : {1.5, 2.0, 3.0}) {
    const Exponent q(qv);
    const auto r = search_min(q, AlphaBetaBasis::default_basis());
    double coeff = 0.0;
    for (double c : r.coefficients) coeff = std::max(coeff, std::abs(c));
    const double gap = std::abs(r.achieved_norm - min_phi_norm_value(q));
    ok = ok && gap <= 1e-6 && coeff <= 1e-4;
    detail += "q=" + fmt(qv) + " gap " + fmt(gap) + " max|c| " + fmt(coeff) + "; ";
  }
  const Exponent inf = Exponent::infinity();
  const double psi = phi_norm_numeric(AlphaBetaBasis::empty().to_custom_phi(), inf, 128);
  const double alt = phi_norm_numeric(sup_norm_alternative(), inf, 128);
  ok = ok && std::abs(psi - 1.0) <= 1e-6 && std::abs(alt - 1.0) <= 1e-6;
  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < 120.0;
  detail += "q=inf psi " + fmt(psi) + " st-|s|+|t| " + fmt(alt) + "; " + fmt(elapsed) + " s";
  return {ok, detail};
}

// 6. integration-by-parts identity
Verdict identity() {
  double worst = 0.0;
  int checks = 0;
  for (const Rectangle& r : {Rectangle(0, 1, 0, 1), Rectangle(-0.5, 1.5, 0.25, 2)}) {
    for (const auto& name : smooth_corpus_names()) {
      const auto f = make_integrand(name, r);
      for (const WeightFunction& w : std::vector<WeightFunction>{
               TrapezoidPhi{r}, MidpointPhi{r}, CompositeTrapezoidPhi{r, PartitionSpec(2, 2)}}) {
        const auto t = parts_identity_terms(f, w);
        worst = std::max(worst, t.residual() / (1 + std::abs(t.lhs)));
        ++checks;
      }
    }
  }
  return {worst <= 1e-8, std::to_string(checks) + " cases, worst residual/(1+|I|) " + fmt(worst)};
}

double loglog_slope(const std::vector<double>& n, const std::vector<double>& v) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double k = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

// 7. convergence rates under refinement
Verdict rates() {
  const double pi = std::numbers::pi;
  const Rectangle r(0, pi, 0, pi);
  const UniformBounds ub(1, 1);
  const std::vector<int> ks{2, 4, 8, 16, 32};
  std::vector<double> ns, trap, mid, fxy;
  const auto f = make_integrand("sinsin", r);
  DerivativeNormCalculator calc(f, r);
  for (int k : ks) {
    ns.push_back(k);
    trap.push_back(uniform_bound(RuleId::composite_trapezoid, ub, r, PartitionSpec(k, k)));
    mid.push_back(uniform_bound(RuleId::composite_midpoint, ub, r, PartitionSpec(k, k)));
    fxy.push_back(apply_rule(RuleId::composite_midpoint, calc, f, r, Exponent::infinity(), PartitionSpec(k, k))
                      .components.fxy_term);
  }
  const double st = loglog_slope(ns, trap);
  const double sm = loglog_slope(ns, mid);
  double worst_ratio = 0.0;
  for (std::size_t i = 1; i < fxy.size(); ++i) worst_ratio = std::max(worst_ratio, std::abs(fxy[i - 1] / fxy[i] - 4.0));
  const bool ok = st >= -1.15 && st <= -0.85 && sm >= -1.15 && sm <= -0.85 && worst_ratio <= 1e-9;
  return {ok, "slopes: composite-trapezoid " + fmt(st) + ", composite-midpoint " + fmt(sm) +
                  "; f_xy term ratio off 4 by " + fmt(worst_ratio)};
}

// 8. branch continuity at p -> inf and p -> 1
Verdict continuity() {
  const Rectangle r(0, 1, 0, 1);
  double worst_inf = 0.0;
  double worst_one = 0.0;
  std::string where;
  for (const auto& name : registry_names()) {
    const auto f = make_integrand(name, r);
    DerivativeNormCalculator calc(f, r);
    for (RuleId rule : rules) {
      const PartitionSpec part = is_composite(rule) ? PartitionSpec(2, 2) : PartitionSpec(1, 1);
      auto bound = [&](Exponent p) { return apply_rule(rule, calc, f, r, p, part).bound; };
      auto rel = [](double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); };
      const double di = rel(bound(Exponent(1e6)), bound(Exponent::infinity()));
      const double d1 = rel(bound(Exponent(1.0 + 1e-6)), bound(Exponent(1.0)));
      if (std::max(di, d1) > std::max(worst_inf, worst_one)) where = name + " " + to_string(rule);
      worst_inf = std::max(worst_inf, di);
      worst_one = std::max(worst_one, d1);
    }
  }
  return {worst_inf <= 1e-3 && worst_one <= 1e-3,
          "worst relative gap p=1e6 vs inf " + fmt(worst_inf) + ", p=1+1e-6 vs 1 " + fmt(worst_one) + " (" + where + ")"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"certificate validity matrix", certificate_matrix},
      {"exactness on span{1,x,y,xy}", exactness},
      {"weight-norm audit", weight_norm_audit},
      {"worked bound values", worked_values},
      {"least-norm weight search", minimizer},
      {"integration-by-parts identity", identity},
      {"convergence rates", rates},
      {"branch continuity", continuity},
  };
  const auto t0 = Clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::printf("criterion %zu: %s  %s: %s\n", i + 1, v.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed in %.1f s\n", static_cast<int>(criteria.size()) - failures,
              criteria.size(), seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
