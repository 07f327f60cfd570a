#include "certquad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "certquad/gauss_legendre.hpp"

namespace certquad {

namespace {

constexpr int oracle_points = 16;
constexpr int identity_points = 16;
constexpr long long panel_budget = 1LL << 20;

double checked(const Function2D& f, double x, double y) {
  const double v = f(x, y);
  if (!std::isfinite(v)) throw EvaluationError("integrand is not finite", x, y);
  return v;
}

double tensor_sum(const Function2D& f, const CompositeRule& cx, const CompositeRule& cy) {
  double total = 0.0;
  for (std::size_t i = 0; i < cx.nodes.size(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < cy.nodes.size(); ++j)
      row += cy.weights[j] * checked(f, cx.nodes[i], cy.nodes[j]);
    total += cx.weights[i] * row;
  }
  return total;
}

double line_sum(const Function1D& g, const CompositeRule& c) {
  double total = 0.0;
  for (std::size_t i = 0; i < c.nodes.size(); ++i) total += c.weights[i] * g(c.nodes[i]);
  return total;
}

}  // namespace

OracleResult oracle_integrate(const Integrand& f, const Rectangle& rect, double target_tol) {
  if (!(target_tol >= 1e-13)) throw DomainError("oracle target tolerance must be >= 1e-13");
  if (f.exact_integral) return {*f.exact_integral, 0.0};

  const auto& rule = GaussLegendre::get(oracle_points);
  auto level = [&](int panels) {
    return tensor_sum(f.f, composite_gauss(rect.a(), rect.b(), panels, rule),
                      composite_gauss(rect.c(), rect.d(), panels, rule));
  };
  double previous = level(1);
  double delta = std::numeric_limits<double>::infinity();
  for (int panels = 2; static_cast<long long>(panels) * panels <= panel_budget; panels *= 2) {
    const double current = level(panels);
    delta = std::abs(current - previous);
    const double tol = std::max(target_tol, 64.0 * std::numeric_limits<double>::epsilon() * std::abs(current));
    if (delta < tol) return {current, delta};
    previous = current;
  }
  throw ConvergenceError("oracle refinement budget of 2^20 panels exhausted", previous, delta);
}

double IdentityTerms::residual() const noexcept { return std::abs(lhs - rhs()); }

IdentityTerms parts_identity_terms(const Integrand& f, const WeightFunction& w, int resolution) {
  if (!f.has_partials())
    throw ConfigurationError("the integration-by-parts identity needs analytic f_x, f_y, f_xy");
  if (resolution < 1) throw DomainError("identity resolution must be >= 1");

  const Rectangle& rect = domain(w);
  const auto& rule = GaussLegendre::get(identity_points);
  const auto& fx = *f.fx;
  const auto& fy = *f.fy;
  const auto& fxy = *f.fxy;
  const auto pieces = weight_pieces(w);
  const auto cols = seams(w, Axis::x).size() + 1;
  const auto rows = seams(w, Axis::y).size() + 1;
  const int px = std::max(1, resolution / static_cast<int>(cols));
  const int py = std::max(1, resolution / static_cast<int>(rows));

  IdentityTerms t;
  t.lhs = oracle_integrate(f, rect).value;
  for (const auto& piece : pieces) {
    const auto& cell = piece.cell;
    const auto& phi = piece.phi;
    const double x0 = cell.a(), x1 = cell.b(), y0 = cell.c(), y1 = cell.d();
    t.corners += checked(f.f, x0, y0) * phi(x0, y0) + checked(f.f, x1, y1) * phi(x1, y1) -
                 checked(f.f, x0, y1) * phi(x0, y1) - checked(f.f, x1, y0) * phi(x1, y0);
    const auto cx = composite_gauss(x0, x1, px, rule);
    const auto cy = composite_gauss(y0, y1, py, rule);
    t.edge_x += line_sum([&](double x) { return fx(x, y0) * phi(x, y0) - fx(x, y1) * phi(x, y1); }, cx);
    t.edge_y += line_sum([&](double y) { return fy(x0, y) * phi(x0, y) - fy(x1, y) * phi(x1, y); }, cy);
    t.area += tensor_sum([&](double x, double y) { return fxy(x, y) * phi(x, y); }, cx, cy);
  }
  return t;
}

double parts_identity_residual(const Integrand& f, const WeightFunction& w, int resolution) {
  return parts_identity_terms(f, w, resolution).residual();
}

}  // namespace certquad
