#include "certquad/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/roots.hpp>

#include "certquad/gauss_legendre.hpp"

namespace certquad {

namespace {

constexpr int line_gauss_points = 8;
constexpr int area_gauss_points = 4;
constexpr double roundoff_floor = 1e-13;

// Golden-section maximisation of h on [lo, hi]; returns (argmax, value).
template <typename F>
std::pair<double, double> golden_max(F&& h, double lo, double hi, int iterations) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = h(x1);
  double f2 = h(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = h(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = h(x1);
    }
  }
  return f1 > f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

std::string describe(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// Three-point first-derivative stencil at t on [lo, hi]: centered where
// possible, second-order one-sided otherwise. Offsets are multiples of h.
struct Stencil {
  std::array<double, 3> offsets;
  std::array<double, 3> weights;
};

// Zeros of g on [lo, hi] found from sign changes on a `samples` grid. |g|^p
// has kinks there, so quadrature panels are split at them.
template <typename F>
std::vector<double> sign_changes(F&& g, double lo, double hi, int samples) {
  const auto grid = uniform_nodes(lo, hi, samples);
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = g(grid[k]);
  std::vector<double> roots;
  for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
    if (values[k] == 0.0 && k > 0) roots.push_back(grid[k]);
    if (values[k] * values[k + 1] >= 0.0) continue;
    std::uintmax_t iterations = 100;
    const auto [r0, r1] = boost::math::tools::toms748_solve(
        g, grid[k], grid[k + 1], values[k], values[k + 1],
        boost::math::tools::eps_tolerance<double>(52), iterations);
    roots.push_back(0.5 * (r0 + r1));
  }
  return roots;
}

Stencil derivative_stencil(double t, double lo, double hi, double h) {
  if (t - h >= lo && t + h <= hi) return {{-h, 0.0, h}, {-0.5 / h, 0.0, 0.5 / h}};
  if (t + 2.0 * h <= hi) return {{0.0, h, 2.0 * h}, {-1.5 / h, 2.0 / h, -0.5 / h}};
  return {{0.0, -h, -2.0 * h}, {1.5 / h, -2.0 / h, 0.5 / h}};
}

}  // namespace

LineSegment::LineSegment(Axis axis_, double fixed, double lo_, double hi_)
    : axis(axis_), fixed_coordinate(fixed), lo(lo_), hi(hi_) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi) || !std::isfinite(fixed))
    throw DomainError("line segment requires finite lo < hi");
}

double LineSegment::x_at(double t) const noexcept { return axis == Axis::x ? t : fixed_coordinate; }
double LineSegment::y_at(double t) const noexcept { return axis == Axis::x ? fixed_coordinate : t; }

double discrete_lp_norm(std::span<const double> values, std::span<const double> weights,
                        double p) {
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  // Neumaier-compensated sum.
  double sum = 0.0;
  double carry = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double term = weights[i] * abs_pow(values[i] / scale, p);
    const double t = sum + term;
    carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
  }
  return scale * std::pow(sum + carry, 1.0 / p);
}

double abs_pow(double v, double p) noexcept {
  const double a = std::abs(v);
  if (p == 1.0) return a;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 1.5) return a * std::sqrt(a);
  if (p == 4.0) return (a * a) * (a * a);
  return std::pow(a, p);
}

std::pair<double, double> max_abs_1d(const Function1D& g, double lo, double hi, int samples) {
  const auto grid = uniform_nodes(lo, hi, samples);
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double v = std::abs(g(grid[k]));
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double left = grid[best == 0 ? 0 : best - 1];
  const double right = grid[std::min(best + 1, grid.size() - 1)];
  auto [arg, value] = golden_max([&](double t) { return std::abs(g(t)); }, left, right, 60);
  if (value > best_value) return {arg, value};
  return {grid[best], best_value};
}

double max_abs_2d(const Function2D& g, const Rectangle& rect, int samples) {
  const auto xs = uniform_nodes(rect.a(), rect.b(), samples);
  const auto ys = uniform_nodes(rect.c(), rect.d(), samples);
  std::size_t bi = 0, bj = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      const double v = std::abs(g(xs[i], ys[j]));
      if (v > best_value) {
        best_value = v;
        bi = i;
        bj = j;
      }
    }
  }
  const double x_lo = xs[bi == 0 ? 0 : bi - 1];
  const double x_hi = xs[std::min(bi + 1, xs.size() - 1)];
  const double y_lo = ys[bj == 0 ? 0 : bj - 1];
  const double y_hi = ys[std::min(bj + 1, ys.size() - 1)];
  auto inner = [&](double x) {
    return golden_max([&](double y) { return std::abs(g(x, y)); }, y_lo, y_hi, 40).second;
  };
  const double refined = golden_max(inner, x_lo, x_hi, 40).second;
  return std::max(best_value, refined);
}

NormEstimate line_norm(const Function1D& g, const LineSegment& seg, Exponent p, int resolution) {
  if (resolution < 16) throw DomainError("line_norm requires resolution >= 16");
  auto sample = [&](double t) {
    const double v = g(t);
    if (!std::isfinite(v))
      throw EvaluationError("non-finite sample " + describe(v) + " in line norm", seg.x_at(t),
                            seg.y_at(t));
    return v;
  };

  if (p.is_infinite()) {
    const double fine = max_abs_1d(sample, seg.lo, seg.hi, 8 * resolution).second;
    const double coarse = max_abs_1d(sample, seg.lo, seg.hi, 4 * resolution).second;
    return {fine, std::abs(fine - coarse) + roundoff_floor * fine};
  }

  const auto& rule = GaussLegendre::get(line_gauss_points);
  const auto kinks = sign_changes(sample, seg.lo, seg.hi, resolution);
  auto evaluate = [&](int panels) {
    const auto cr = composite_gauss_split(seg.lo, seg.hi, kinks, panels, rule);
    std::vector<double> values(cr.nodes.size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = sample(cr.nodes[i]);
    return discrete_lp_norm(values, cr.weights, p.value());
  };
  const double fine = evaluate(resolution);
  const double coarse = evaluate(resolution / 2);
  return {fine, std::abs(fine - coarse) + roundoff_floor * fine};
}

NormEstimate area_norm(const Function2D& g, const Rectangle& rect, Exponent p, int resolution) {
  if (resolution < 16) throw DomainError("area_norm requires resolution >= 16");
  auto sample = [&](double x, double y) {
    const double v = g(x, y);
    if (!std::isfinite(v))
      throw EvaluationError("non-finite sample " + describe(v) + " in area norm", x, y);
    return v;
  };

  if (p.is_infinite()) {
    const double fine = max_abs_2d(sample, rect, resolution);
    const double coarse = max_abs_2d(sample, rect, resolution / 2);
    return {fine, std::abs(fine - coarse) + roundoff_floor * fine};
  }

  const auto& rule = GaussLegendre::get(area_gauss_points);
  auto evaluate = [&](int panels) {
    const auto cx = composite_gauss(rect.a(), rect.b(), panels, rule);
    const auto cy = composite_gauss(rect.c(), rect.d(), panels, rule);
    std::vector<double> values;
    std::vector<double> weights;
    values.reserve(cx.nodes.size() * cy.nodes.size());
    weights.reserve(values.capacity());
    for (std::size_t i = 0; i < cx.nodes.size(); ++i) {
      for (std::size_t j = 0; j < cy.nodes.size(); ++j) {
        values.push_back(sample(cx.nodes[i], cy.nodes[j]));
        weights.push_back(cx.weights[i] * cy.weights[j]);
      }
    }
    return discrete_lp_norm(values, weights, p.value());
  };
  const double fine = evaluate(resolution);
  const double coarse = evaluate(resolution / 2);
  return {fine, std::abs(fine - coarse) + roundoff_floor * fine};
}

// ---------------------------------------------------------------------------

Function2D fd_partial_x(Function2D f, const Rectangle& rect) {
  const double h = rect.width() * 1e-5;
  return [f = std::move(f), rect, h](double x, double y) {
    const auto s = derivative_stencil(x, rect.a(), rect.b(), h);
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
      if (s.weights[k] != 0.0) sum += s.weights[k] * f(x + s.offsets[k], y);
    return sum;
  };
}

Function2D fd_partial_y(Function2D f, const Rectangle& rect) {
  const double h = rect.height() * 1e-5;
  return [f = std::move(f), rect, h](double x, double y) {
    const auto s = derivative_stencil(y, rect.c(), rect.d(), h);
    double sum = 0.0;
    for (std::size_t k = 0; k < 3; ++k)
      if (s.weights[k] != 0.0) sum += s.weights[k] * f(x, y + s.offsets[k]);
    return sum;
  };
}

Function2D fd_partial_xy(Function2D f, const Rectangle& rect) {
  const double hx = rect.width() * 1e-5;
  const double hy = rect.height() * 1e-5;
  return [f = std::move(f), rect, hx, hy](double x, double y) {
    const auto sx = derivative_stencil(x, rect.a(), rect.b(), hx);
    const auto sy = derivative_stencil(y, rect.c(), rect.d(), hy);
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (sx.weights[i] == 0.0) continue;
      for (std::size_t j = 0; j < 3; ++j) {
        if (sy.weights[j] == 0.0) continue;
        sum += sx.weights[i] * sy.weights[j] * f(x + sx.offsets[i], y + sy.offsets[j]);
      }
    }
    return sum;
  };
}

// ---------------------------------------------------------------------------

DerivativeNormCalculator::DerivativeNormCalculator(Integrand f, Rectangle rect, NormOptions options)
    : f_(std::move(f)), rect_(rect), options_(options) {
  auto pick = [&](const std::optional<Function2D>& analytic, auto fd_builder, Function2D& out,
                  NormSource& source, const char* name) {
    if (analytic) {
      out = *analytic;
      source = NormSource::analytic;
    } else if (options_.allow_finite_differences) {
      out = fd_builder(f_.f, rect_);
      source = NormSource::numeric;
    } else {
      throw ConfigurationError(std::string("integrand '") + f_.label + "' has no analytic " + name +
                               " and finite differences are disabled");
    }
  };
  pick(f_.fx, fd_partial_x, fx_, fx_source_, "f_x");
  pick(f_.fy, fd_partial_y, fy_, fy_source_, "f_y");
  pick(f_.fxy, fd_partial_xy, fxy_, fxy_source_, "f_xy");
}

double DerivativeNormCalculator::fxy_norm(Exponent p) {
  const double key = p.value();
  if (auto it = area_cache_.find(key); it != area_cache_.end()) return it->second;
  const double v = area_norm(fxy_, rect_, p, options_.resolution).value;
  area_cache_.emplace(key, v);
  return v;
}

double DerivativeNormCalculator::fx_line_norm(Exponent p, double y) {
  const auto key = std::tuple{p.value(), 0, y};
  if (auto it = line_cache_.find(key); it != line_cache_.end()) return it->second;
  const LineSegment seg(Axis::x, y, rect_.a(), rect_.b());
  const double v = line_norm([&](double x) { return fx_(x, y); }, seg, p, options_.resolution).value;
  line_cache_.emplace(key, v);
  return v;
}

double DerivativeNormCalculator::fy_line_norm(Exponent p, double x) {
  const auto key = std::tuple{p.value(), 1, x};
  if (auto it = line_cache_.find(key); it != line_cache_.end()) return it->second;
  const LineSegment seg(Axis::y, x, rect_.c(), rect_.d());
  const double v = line_norm([&](double y) { return fy_(x, y); }, seg, p, options_.resolution).value;
  line_cache_.emplace(key, v);
  return v;
}

DerivativeNorms DerivativeNormCalculator::compute(Exponent p, RuleFamily family,
                                                  PartitionSpec partition) {
  DerivativeNorms dn(p, family, partition);
  auto& prov = dn.provenance;
  if (family == RuleFamily::trapezoid) {
    const auto ys = partition.y_nodes(rect_);
    const auto xs = partition.x_nodes(rect_);
    dn.fx_bottom = fx_line_norm(p, ys.front());
    dn.fx_top = fx_line_norm(p, ys.back());
    dn.fy_left = fy_line_norm(p, xs.front());
    dn.fy_right = fy_line_norm(p, xs.back());
    prov.emplace_back("fx(.,c)", fx_source_);
    prov.emplace_back("fx(.,d)", fx_source_);
    prov.emplace_back("fy(a,.)", fy_source_);
    prov.emplace_back("fy(b,.)", fy_source_);
    for (std::size_t j = 1; j + 1 < ys.size(); ++j) {
      dn.interior_x_lines.push_back(fx_line_norm(p, ys[j]));
      prov.emplace_back("fx(.,y_" + std::to_string(j) + ")", fx_source_);
    }
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
      dn.interior_y_lines.push_back(fy_line_norm(p, xs[i]));
      prov.emplace_back("fy(x_" + std::to_string(i) + ",.)", fy_source_);
    }
  } else {
    const auto ny = partition.y_midpoints(rect_);
    const auto mx = partition.x_midpoints(rect_);
    for (std::size_t j = 0; j < ny.size(); ++j) {
      dn.interior_x_lines.push_back(fx_line_norm(p, ny[j]));
      prov.emplace_back("fx(.,n_" + std::to_string(j + 1) + ")", fx_source_);
    }
    for (std::size_t i = 0; i < mx.size(); ++i) {
      dn.interior_y_lines.push_back(fy_line_norm(p, mx[i]));
      prov.emplace_back("fy(m_" + std::to_string(i + 1) + ",.)", fy_source_);
    }
  }
  dn.fxy = fxy_norm(p);
  prov.emplace_back("fxy", fxy_source_);
  dn.validate();
  return dn;
}

DerivativeNorms derivative_norms(const Integrand& f, const Rectangle& rect, Exponent p,
                                 std::optional<PartitionSpec> partition, RuleFamily family,
                                 NormOptions options) {
  DerivativeNormCalculator calc(f, rect, options);
  return calc.compute(p, family, partition.value_or(PartitionSpec(1, 1)));
}

}  // namespace certquad
