#include "certquad/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "certquad/gauss_legendre.hpp"
#include "certquad/norms.hpp"

namespace certquad {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr int weight_gauss_points = 8;

// Piecewise-linear factor of slope 1 over a row of equal cells. Centred
// factors vanish at cell centres (x - u_i); edge-anchored ones vanish on cell
// edges and jump at the centre (gamma_i).
struct Sawtooth {
  std::vector<double> nodes;
  bool edge_anchored;

  int cells() const noexcept { return static_cast<int>(nodes.size()) - 1; }
  double length() const noexcept { return nodes.back() - nodes.front(); }

  // Interior nodes <= t; ties go to the cell on the right.
  std::size_t cell_of(double t) const {
    const auto first = nodes.begin() + 1;
    const auto last = nodes.end() - 1;
    return static_cast<std::size_t>(std::upper_bound(first, last, t) - first);
  }

  double eval(double t) const {
    const std::size_t k = cell_of(t);
    const double lo = nodes[k];
    const double hi = nodes[k + 1];
    const double mid = 0.5 * (lo + hi);
    if (!edge_anchored) return t - mid;
    return t < mid ? t - lo : t - hi;
  }

  std::vector<double> seams() const {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      if (k > 0) out.push_back(nodes[k]);
      out.push_back(0.5 * (nodes[k] + nodes[k + 1]));
    }
    return out;
  }
};

struct Factors {
  Sawtooth x;
  Sawtooth y;
};

std::optional<Factors> factors(const WeightFunction& w) {
  return std::visit(
      overloaded{
          [](const TrapezoidPhi& t) -> std::optional<Factors> {
            const auto& r = t.rect;
            return Factors{{{r.a(), r.b()}, false}, {{r.c(), r.d()}, false}};
          },
          [](const MidpointPhi& t) -> std::optional<Factors> {
            const auto& r = t.rect;
            return Factors{{{r.a(), r.b()}, true}, {{r.c(), r.d()}, true}};
          },
          [](const CompositeTrapezoidPhi& t) -> std::optional<Factors> {
            return Factors{{t.partition.x_nodes(t.rect), false}, {t.partition.y_nodes(t.rect), false}};
          },
          [](const CompositeMidpointPhi& t) -> std::optional<Factors> {
            return Factors{{t.partition.x_nodes(t.rect), true}, {t.partition.y_nodes(t.rect), true}};
          },
          [](const CustomPhi&) -> std::optional<Factors> { return std::nullopt; },
      },
      w);
}

const Factors& require_factors(const std::optional<Factors>& f) {
  if (!f) throw UnsupportedVariantError("closed-form norms exist only for built-in weights; use the numeric norm");
  return *f;
}

void check_point(const Rectangle& r, double x, double y) {
  if (!r.contains(x, y)) throw DomainError("point outside the weight's rectangle");
}

// Segment boundaries along one axis: domain ends plus interior seams.
std::vector<double> cuts(double lo, double hi, std::vector<double> interior) {
  std::vector<double> out{lo};
  for (double s : interior)
    if (s > lo && s < hi) out.push_back(s);
  out.push_back(hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Sample coordinates for sup-norms: every segment is sampled on its closure,
// with its right end nudged inside so one-sided limits at seams are seen.
std::vector<double> sup_samples(double lo, double hi, const std::vector<double>& interior,
                                int resolution) {
  const auto c = cuts(lo, hi, interior);
  std::vector<double> out;
  const double total = hi - lo;
  for (std::size_t s = 0; s + 1 < c.size(); ++s) {
    const double len = c[s + 1] - c[s];
    const int count = std::max(2, static_cast<int>(std::ceil(resolution * len / total)));
    const auto pts = uniform_nodes(c[s], c[s + 1], count);
    out.insert(out.end(), pts.begin(), pts.end() - 1);
    out.push_back(std::nextafter(c[s + 1], c[s]));
  }
  out.push_back(hi);
  return out;
}

// phi without per-call domain checks or factor construction, for inner loops.
Function2D evaluator(const WeightFunction& w) {
  if (const auto* custom = std::get_if<CustomPhi>(&w))
    return [alpha = custom->alpha, beta = custom->beta](double x, double y) {
      return x * y + alpha(x) + beta(y);
    };
  return [fac = *factors(w)](double x, double y) { return fac.x.eval(x) * fac.y.eval(y); };
}

double line_extent_lo(const Rectangle& r, Axis along) { return along == Axis::x ? r.a() : r.c(); }
double line_extent_hi(const Rectangle& r, Axis along) { return along == Axis::x ? r.b() : r.d(); }

void check_line(const Rectangle& r, Axis along, double coordinate) {
  const double lo = along == Axis::x ? r.c() : r.a();
  const double hi = along == Axis::x ? r.d() : r.b();
  if (!(coordinate >= lo && coordinate <= hi))
    throw DomainError("line coordinate outside the weight's rectangle");
}

}  // namespace

const Rectangle& domain(const WeightFunction& w) {
  return std::visit([](const auto& v) -> const Rectangle& { return v.rect; }, w);
}

bool is_builtin(const WeightFunction& w) { return !std::holds_alternative<CustomPhi>(w); }

std::string variant_name(const WeightFunction& w) {
  return std::visit(overloaded{
                        [](const TrapezoidPhi&) { return std::string("trapezoid"); },
                        [](const MidpointPhi&) { return std::string("midpoint"); },
                        [](const CompositeTrapezoidPhi&) { return std::string("composite-trapezoid"); },
                        [](const CompositeMidpointPhi&) { return std::string("composite-midpoint"); },
                        [](const CustomPhi&) { return std::string("custom"); },
                    },
                    w);
}

double eval_phi(const WeightFunction& w, double x, double y) {
  check_point(domain(w), x, y);
  if (const auto* custom = std::get_if<CustomPhi>(&w)) return x * y + custom->alpha(x) + custom->beta(y);
  const auto f = factors(w);
  return f->x.eval(x) * f->y.eval(y);
}

std::vector<double> seams(const WeightFunction& w, Axis axis) {
  if (const auto* custom = std::get_if<CustomPhi>(&w)) {
    auto out = axis == Axis::x ? custom->x_breaks : custom->y_breaks;
    std::sort(out.begin(), out.end());
    return out;
  }
  const auto f = factors(w);
  return axis == Axis::x ? f->x.seams() : f->y.seams();
}

std::vector<WeightPiece> weight_pieces(const WeightFunction& w) {
  const auto& r = domain(w);
  const auto xc = cuts(r.a(), r.b(), seams(w, Axis::x));
  const auto yc = cuts(r.c(), r.d(), seams(w, Axis::y));
  const auto f = factors(w);
  std::vector<WeightPiece> pieces;
  for (std::size_t i = 0; i + 1 < xc.size(); ++i) {
    for (std::size_t j = 0; j + 1 < yc.size(); ++j) {
      Rectangle cell(xc[i], xc[i + 1], yc[j], yc[j + 1]);
      if (!f) {
        const auto& custom = std::get<CustomPhi>(w);
        pieces.push_back({cell, [alpha = custom.alpha, beta = custom.beta](double x, double y) {
                            return x * y + alpha(x) + beta(y);
                          }});
        continue;
      }
      // Within a cell each factor is t - anchor for a fixed anchor.
      const double xm = cell.mid_x();
      const double ym = cell.mid_y();
      const double ax = xm - f->x.eval(xm);
      const double ay = ym - f->y.eval(ym);
      pieces.push_back({cell, [ax, ay](double x, double y) { return (x - ax) * (y - ay); }});
    }
  }
  return pieces;
}

// ---------------------------------------------------------------------------

double sawtooth_norm_closed(double length, int cells, Exponent q) {
  const Exponent p = conjugate(q);
  return length_power(length, p) * holder_coefficient(p) / (2.0 * cells);
}

double phi_norm_closed(const WeightFunction& w, Exponent q) {
  const auto f = factors(w);
  const auto& fac = require_factors(f);
  return sawtooth_norm_closed(fac.x.length(), fac.x.cells(), q) *
         sawtooth_norm_closed(fac.y.length(), fac.y.cells(), q);
}

double phi_line_norm_closed(const WeightFunction& w, Exponent q, Axis along, double coordinate) {
  const auto f = factors(w);
  const auto& fac = require_factors(f);
  check_line(domain(w), along, coordinate);
  const Sawtooth& running = along == Axis::x ? fac.x : fac.y;
  const Sawtooth& transverse = along == Axis::x ? fac.y : fac.x;
  return std::abs(transverse.eval(coordinate)) *
         sawtooth_norm_closed(running.length(), running.cells(), q);
}

double phi_norm_numeric(const WeightFunction& w, Exponent q, int resolution) {
  if (resolution < 8) throw DomainError("phi_norm_numeric requires resolution >= 8");
  const auto& r = domain(w);
  const auto sx = seams(w, Axis::x);
  const auto sy = seams(w, Axis::y);
  const auto phi = evaluator(w);

  if (q.is_infinite()) {
    const auto xs = sup_samples(r.a(), r.b(), sx, resolution);
    const auto ys = sup_samples(r.c(), r.d(), sy, resolution);
    double best = 0.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        const double v = std::abs(phi(xs[i], ys[j]));
        if (v > best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    if (is_builtin(w)) return best;  // bilinear pieces peak at sampled corners
    Rectangle box(xs[bi == 0 ? 0 : bi - 1], xs[std::min(bi + 1, xs.size() - 1)],
                  ys[bj == 0 ? 0 : bj - 1], ys[std::min(bj + 1, ys.size() - 1)]);
    return std::max(best, max_abs_2d(phi, box, 4));
  }

  const auto& rule = GaussLegendre::get(weight_gauss_points);
  const auto cx = composite_gauss_split(r.a(), r.b(), sx, resolution, rule, 2);
  const auto cy = composite_gauss_split(r.c(), r.d(), sy, resolution, rule, 2);
  std::vector<double> values;
  std::vector<double> weights;
  values.reserve(cx.nodes.size() * cy.nodes.size());
  weights.reserve(values.capacity());
  for (std::size_t i = 0; i < cx.nodes.size(); ++i) {
    for (std::size_t j = 0; j < cy.nodes.size(); ++j) {
      values.push_back(phi(cx.nodes[i], cy.nodes[j]));
      weights.push_back(cx.weights[i] * cy.weights[j]);
    }
  }
  return discrete_lp_norm(values, weights, q.value());
}

double phi_line_norm_numeric(const WeightFunction& w, Exponent q, Axis along, double coordinate,
                             int resolution) {
  if (resolution < 8) throw DomainError("phi_line_norm_numeric requires resolution >= 8");
  const auto& r = domain(w);
  check_line(r, along, coordinate);
  const double lo = line_extent_lo(r, along);
  const double hi = line_extent_hi(r, along);
  const auto s = seams(w, along);
  const auto phi = evaluator(w);
  auto g = [&](double t) { return along == Axis::x ? phi(t, coordinate) : phi(coordinate, t); };

  if (q.is_infinite()) {
    double best = 0.0;
    for (double t : sup_samples(lo, hi, s, resolution)) best = std::max(best, std::abs(g(t)));
    if (is_builtin(w)) return best;
    return std::max(best, max_abs_1d(g, lo, hi, 8 * resolution).second);
  }

  const auto cr = composite_gauss_split(lo, hi, s, resolution, GaussLegendre::get(weight_gauss_points), 2);
  std::vector<double> values(cr.nodes.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = g(cr.nodes[i]);
  return discrete_lp_norm(values, cr.weights, q.value());
}

}  // namespace certquad
