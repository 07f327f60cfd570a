#include "certquad/rules.hpp"

#include <cmath>
#include <sstream>

namespace certquad {

namespace {

double sample(const Integrand& f, double x, double y) {
  const double v = f(x, y);
  if (!std::isfinite(v)) throw EvaluationError("integrand is not finite", x, y);
  return v;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void require(const DerivativeNorms& norms, RuleFamily family, const PartitionSpec& part) {
  if (norms.family != family)
    throw MismatchError("derivative norms were built for the " + to_string(norms.family) +
                        " family, not " + to_string(family));
  if (!(norms.partition == part))
    throw MismatchError("derivative norms were built for another partition");
  norms.validate();
}

// Shared m x n kernel. line_k is 1/4 for the trapezoid family and 1/2 for
// the midpoint family.
BoundComponents kernel(Exponent p, double W, double H, int m, int n, double sx, double sy,
                       double fxy, double line_k) {
  const double Wp = length_power(W, p);
  const double Hp = length_power(H, p);
  const double C = holder_coefficient(p);
  const double mn = static_cast<double>(m) * static_cast<double>(n);
  BoundComponents b;
  b.fx_term = sx * H * Wp * C * line_k / mn;
  b.fy_term = sy * W * Hp * C * line_k / mn;
  b.fxy_term = fxy * Wp * Hp * C * C / (4.0 * mn);
  return b;
}

BoundComponents trapezoid_kernel(const DerivativeNorms& norms, const Rectangle& rect) {
  const double sx = norms.fx_bottom + 2.0 * sum(norms.interior_x_lines) + norms.fx_top;
  const double sy = norms.fy_left + 2.0 * sum(norms.interior_y_lines) + norms.fy_right;
  return kernel(norms.p, rect.width(), rect.height(), norms.partition.m(), norms.partition.n(),
                sx, sy, norms.fxy, 0.25);
}

BoundComponents midpoint_kernel(const DerivativeNorms& norms, const Rectangle& rect) {
  return kernel(norms.p, rect.width(), rect.height(), norms.partition.m(), norms.partition.n(),
                sum(norms.interior_x_lines), sum(norms.interior_y_lines), norms.fxy, 0.5);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

double trapezoid_estimate(const Integrand& f, const Rectangle& rect) {
  return composite_trapezoid_estimate(f, rect, PartitionSpec(1, 1));
}

double midpoint_estimate(const Integrand& f, const Rectangle& rect) {
  return composite_midpoint_estimate(f, rect, PartitionSpec(1, 1));
}

double composite_trapezoid_estimate(const Integrand& f, const Rectangle& rect,
                                    const PartitionSpec& part) {
  const auto xs = part.x_nodes(rect);
  const auto ys = part.y_nodes(rect);
  double total = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double wx = (i == 0 || i + 1 == xs.size()) ? 1.0 : 2.0;
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double wy = (j == 0 || j + 1 == ys.size()) ? 1.0 : 2.0;
      total += wx * wy * sample(f, xs[i], ys[j]);
    }
  }
  return total * rect.area() / (4.0 * part.m() * part.n());
}

double composite_trapezoid_estimate_boundary_only(const Integrand& f, const Rectangle& rect,
                                                  const PartitionSpec& part) {
  const auto xs = part.x_nodes(rect);
  const auto ys = part.y_nodes(rect);
  const double a = rect.a(), b = rect.b(), c = rect.c(), d = rect.d();
  double total = sample(f, a, c) + sample(f, b, d) + sample(f, a, d) + sample(f, b, c);
  for (std::size_t j = 1; j + 1 < ys.size(); ++j)
    total += 2.0 * (sample(f, a, ys[j]) + sample(f, b, ys[j]));
  for (std::size_t i = 1; i + 1 < xs.size(); ++i)
    total += 2.0 * (sample(f, xs[i], c) + sample(f, xs[i], d));
  return total * rect.area() / (4.0 * part.m() * part.n());
}

double composite_midpoint_estimate(const Integrand& f, const Rectangle& rect,
                                   const PartitionSpec& part) {
  const auto mx = part.x_midpoints(rect);
  const auto ny = part.y_midpoints(rect);
  double total = 0.0;
  for (double x : mx)
    for (double y : ny) total += sample(f, x, y);
  return total * rect.area() / (static_cast<double>(part.m()) * part.n());
}

// ---------------------------------------------------------------------------

BoundComponents trapezoid_bound(const DerivativeNorms& norms, const Rectangle& rect) {
  require(norms, RuleFamily::trapezoid, PartitionSpec(1, 1));
  return trapezoid_kernel(norms, rect);
}

BoundComponents midpoint_bound(const DerivativeNorms& norms, const Rectangle& rect) {
  require(norms, RuleFamily::midpoint, PartitionSpec(1, 1));
  return midpoint_kernel(norms, rect);
}

BoundComponents composite_trapezoid_bound(const DerivativeNorms& norms, const Rectangle& rect,
                                          const PartitionSpec& part) {
  require(norms, RuleFamily::trapezoid, part);
  return trapezoid_kernel(norms, rect);
}

BoundComponents composite_midpoint_bound(const DerivativeNorms& norms, const Rectangle& rect,
                                         const PartitionSpec& part) {
  require(norms, RuleFamily::midpoint, part);
  return midpoint_kernel(norms, rect);
}

BoundComponents composite_midpoint_bound_printed(const DerivativeNorms& norms,
                                                 const Rectangle& rect, const PartitionSpec& part) {
  require(norms, RuleFamily::midpoint, part);
  const double W = rect.width();
  const double H = rect.height();
  const double m = part.m();
  const double n = part.n();
  const double sx = sum(norms.interior_x_lines);
  const double sy = sum(norms.interior_y_lines);
  const Exponent p = norms.p;
  BoundComponents b;
  if (p.is_one()) {
    b.fx_term = sx * W * H / (2.0 * n);
    b.fy_term = sy * W * H / (2.0 * m);
    b.fxy_term = norms.fxy * W * H / 4.0;
  } else if (p.is_infinite()) {
    b.fx_term = sx * W * W * H / (4.0 * m * n);
    b.fy_term = sy * W * H * H / (4.0 * m * n);
    b.fxy_term = norms.fxy * W * W * H * H / (4.0 * m * n);
  } else {
    const double e = 1.0 - 1.0 / p.value();
    const double C = holder_coefficient(p);
    b.fx_term = sx * length_power(W, p) * H / (2.0 * std::pow(m, e) * n);
    b.fy_term = sy * W * length_power(H, p) / (2.0 * m * std::pow(n, e));
    b.fxy_term = norms.fxy * length_power(W, p) * length_power(H, p) * C * C /
                 (4.0 * std::pow(m * n, e));
  }
  return b;
}

double uniform_bound(RuleId rule, const UniformBounds& ub, const Rectangle& rect,
                     const PartitionSpec& part) {
  const double W = rect.width();
  const double H = rect.height();
  const double M = ub.M;
  const double N = ub.N;
  const double m = part.m();
  const double n = part.n();
  switch (rule) {
    case RuleId::trapezoid:
      return M * W * W * H / 4.0 + M * W * H * H / 4.0 + N * W * W * H * H / 16.0;
    case RuleId::midpoint:
      return M * W * W * H / 4.0 + M * W * H * H / 4.0 + N * W * W * H * H / 16.0;
    case RuleId::composite_trapezoid:
      return M * (2.0 * n + 1.0) * H * W * W / (8.0 * m * n) +
             M * (2.0 * m + 1.0) * W * H * H / (8.0 * m * n) + N * W * W * H * H / (16.0 * m * n);
    case RuleId::composite_midpoint:
      return M * W * W * H / (4.0 * m) + M * W * H * H / (4.0 * n) +
             N * W * W * H * H / (16.0 * m * n);
    case RuleId::custom_phi:
      break;
  }
  throw UnsupportedVariantError("no uniform bound for the custom-phi rule");
}

// ---------------------------------------------------------------------------

QuadratureReport make_report(RuleId rule, const Integrand& f, const Rectangle& rect,
                             const DerivativeNorms& norms) {
  const PartitionSpec& part = norms.partition;
  double estimate = 0.0;
  BoundComponents comp;
  std::vector<std::string> notes;
  switch (rule) {
    case RuleId::trapezoid:
      estimate = trapezoid_estimate(f, rect);
      comp = trapezoid_bound(norms, rect);
      break;
    case RuleId::midpoint:
      estimate = midpoint_estimate(f, rect);
      comp = midpoint_bound(norms, rect);
      if (norms.p.is_one())
        notes.emplace_back("p=1 fy term uses the midline norm |f_y(m1,.)|_1");
      break;
    case RuleId::composite_trapezoid: {
      estimate = composite_trapezoid_estimate(f, rect, part);
      comp = composite_trapezoid_bound(norms, rect, part);
      notes.emplace_back("estimate: cell-wise corner rule (interior nodes weight 4)");
      if (part.m() > 1 && part.n() > 1)
        notes.emplace_back("boundary-only sum (not exact for constants): " +
                           fmt(composite_trapezoid_estimate_boundary_only(f, rect, part)));
      notes.emplace_back("interior line sums run over j=1..n-1, i=1..m-1");
      break;
    }
    case RuleId::composite_midpoint: {
      estimate = composite_midpoint_estimate(f, rect, part);
      comp = composite_midpoint_bound(norms, rect, part);
      const auto printed = composite_midpoint_bound_printed(norms, rect, part);
      notes.emplace_back("bound: unified coefficients (2mn line terms with C(p), f_xy over 4mn)");
      notes.emplace_back("printed-coefficient bound: " + fmt(printed.total()) + " (fx " +
                         fmt(printed.fx_term) + ", fy " + fmt(printed.fy_term) + ", fxy " +
                         fmt(printed.fxy_term) + ")");
      break;
    }
    case RuleId::custom_phi:
      throw UnsupportedVariantError("use custom_phi_rule for custom weights");
  }
  QuadratureReport r{rule,    estimate, comp, comp.total(), norms.p,
                     is_composite(rule) ? std::optional<PartitionSpec>(part) : std::nullopt,
                     norms,   std::move(notes)};
  return r;
}

QuadratureReport apply_rule(RuleId rule, DerivativeNormCalculator& calc, const Integrand& f,
                            const Rectangle& rect, Exponent p, const PartitionSpec& part) {
  if (rule == RuleId::custom_phi)
    throw UnsupportedVariantError("use custom_phi_rule for custom weights");
  const PartitionSpec used = is_composite(rule) ? part : PartitionSpec(1, 1);
  return make_report(rule, f, rect, calc.compute(p, family_of(rule), used));
}

QuadratureReport apply_rule(RuleId rule, const Integrand& f, const Rectangle& rect, Exponent p,
                            const PartitionSpec& part, NormOptions options) {
  DerivativeNormCalculator calc(f, rect, options);
  return apply_rule(rule, calc, f, rect, p, part);
}

QuadratureReport custom_phi_rule(const Integrand& f, const CustomPhi& w, Exponent p,
                                 NormOptions options, int phi_resolution) {
  const Rectangle& r = w.rect;
  const WeightFunction wf = w;
  const double a = r.a(), b = r.b(), c = r.c(), d = r.d();
  const double estimate = sample(f, a, c) * eval_phi(wf, a, c) + sample(f, b, d) * eval_phi(wf, b, d) -
                          sample(f, a, d) * eval_phi(wf, a, d) - sample(f, b, c) * eval_phi(wf, b, c);

  DerivativeNormCalculator calc(f, r, options);
  const DerivativeNorms norms = calc.compute(p, RuleFamily::trapezoid, PartitionSpec(1, 1));
  const Exponent q = conjugate(p);
  const double phi_c = phi_line_norm_numeric(wf, q, Axis::x, c, phi_resolution);
  const double phi_d = phi_line_norm_numeric(wf, q, Axis::x, d, phi_resolution);
  const double phi_a = phi_line_norm_numeric(wf, q, Axis::y, a, phi_resolution);
  const double phi_b = phi_line_norm_numeric(wf, q, Axis::y, b, phi_resolution);
  const double phi_2d = phi_norm_numeric(wf, q, phi_resolution);

  BoundComponents comp;
  comp.fx_term = norms.fx_bottom * phi_c + norms.fx_top * phi_d;
  comp.fy_term = norms.fy_left * phi_a + norms.fy_right * phi_b;
  comp.fxy_term = norms.fxy * phi_2d;
  std::vector<std::string> notes{"phi norms computed numerically at resolution " +
                                 std::to_string(phi_resolution)};
  return QuadratureReport{RuleId::custom_phi, estimate, comp, comp.total(), p, std::nullopt, norms,
                          std::move(notes)};
}

// ---------------------------------------------------------------------------

namespace {

void check_interval(const Interval& iv, double norm_gprime) {
  if (!(std::isfinite(iv.lo) && std::isfinite(iv.hi) && iv.lo < iv.hi))
    throw DomainError("interval must satisfy lo < hi with finite ends");
  if (!(std::isfinite(norm_gprime) && norm_gprime >= 0.0))
    throw DomainError("derivative norm must be finite and >= 0");
}

double sample_1d(const Function1D& g, double x) {
  const double v = g(x);
  if (!std::isfinite(v)) throw EvaluationError("function is not finite", x, 0.0);
  return v;
}

}  // namespace

OneDimResult trapezoid_1d(const Function1D& g, Interval iv, Exponent p, double norm_gprime) {
  check_interval(iv, norm_gprime);
  const double L = iv.hi - iv.lo;
  return {(sample_1d(g, iv.lo) + sample_1d(g, iv.hi)) * L / 2.0,
          norm_gprime * sawtooth_norm_closed(L, 1, conjugate(p))};
}

OneDimResult midpoint_1d(const Function1D& g, Interval iv, Exponent p, double norm_gprime) {
  check_interval(iv, norm_gprime);
  const double L = iv.hi - iv.lo;
  return {sample_1d(g, 0.5 * (iv.lo + iv.hi)) * L,
          norm_gprime * sawtooth_norm_closed(L, 1, conjugate(p))};
}

}  // namespace certquad
