#pragma once

// L^p norms of the partial derivatives of an integrand along lines and over
// the rectangle. Analytic partials are used when the integrand carries them,
// otherwise finite differences (when allowed).

#include <map>
#include <optional>
#include <span>
#include <tuple>

#include "certquad/core.hpp"

namespace certquad {

/// A segment running along `axis` from lo to hi; fixed_coordinate is the
/// transverse coordinate (y for axis x, x for axis y).
struct LineSegment {
  LineSegment(Axis axis, double fixed_coordinate, double lo, double hi);

  Axis axis;
  double fixed_coordinate;
  double lo;
  double hi;

  double x_at(double t) const noexcept;
  double y_at(double t) const noexcept;
};

/// A norm value with the change observed under one halving of the panel
/// width. For p = inf the value is a sampled maximum (a lower bound of the
/// essential supremum) and the error is the gain from local refinement.
struct NormEstimate {
  double value;
  double error;
};

/// |v|^p with fast paths for the common exponents.
double abs_pow(double v, double p) noexcept;

/// (sum w_i |v_i|^p)^(1/p), scaled by max |v_i| so that large p neither
/// overflows nor underflows. Finite p only.
double discrete_lp_norm(std::span<const double> values, std::span<const double> weights, double p);

/// (int |g|^p)^(1/p) over seg via composite Gauss–Legendre with `resolution`
/// panels, checked against resolution/2. resolution >= 16.
NormEstimate line_norm(const Function1D& g, const LineSegment& seg, Exponent p,
                       int resolution = 256);

/// Tensor-product counterpart of line_norm over rect.
NormEstimate area_norm(const Function2D& g, const Rectangle& rect, Exponent p,
                       int resolution = 256);

/// Largest |g| on [lo, hi]: `samples`+1 equispaced points and a golden-section
/// refinement around the best one. Returns (argmax, value).
std::pair<double, double> max_abs_1d(const Function1D& g, double lo, double hi, int samples);

/// 2D analogue of max_abs_1d on rect. Returns the value only.
double max_abs_2d(const Function2D& g, const Rectangle& rect, int samples);

// ---------------------------------------------------------------------------
// Finite-difference partials
// ---------------------------------------------------------------------------

/// Centered differences with h = extent * 1e-5, second-order one-sided near
/// the edges of rect; f_xy is the tensor product of the two stencils.
Function2D fd_partial_x(Function2D f, const Rectangle& rect);
Function2D fd_partial_y(Function2D f, const Rectangle& rect);
Function2D fd_partial_xy(Function2D f, const Rectangle& rect);

// ---------------------------------------------------------------------------
// Derivative norms
// ---------------------------------------------------------------------------

struct NormOptions {
  int resolution = 256;
  bool allow_finite_differences = true;
};

/// Computes DerivativeNorms for one integrand on one rectangle, caching line
/// and area norms across (family, p, partition) requests.
class DerivativeNormCalculator {
public:
  DerivativeNormCalculator(Integrand f, Rectangle rect, NormOptions options = {});

  DerivativeNorms compute(Exponent p, RuleFamily family, PartitionSpec partition);

  /// |f_xy|_p over rect.
  double fxy_norm(Exponent p);
  /// |f_x(., y)|_p over [a, b].
  double fx_line_norm(Exponent p, double y);
  /// |f_y(x, .)|_p over [c, d].
  double fy_line_norm(Exponent p, double x);

  NormSource fx_source() const noexcept { return fx_source_; }
  NormSource fy_source() const noexcept { return fy_source_; }
  NormSource fxy_source() const noexcept { return fxy_source_; }

private:
  Integrand f_;
  Rectangle rect_;
  NormOptions options_;
  Function2D fx_, fy_, fxy_;
  NormSource fx_source_, fy_source_, fxy_source_;
  std::map<std::tuple<double, int, double>, double> line_cache_;
  std::map<double, double> area_cache_;
};

DerivativeNorms derivative_norms(const Integrand& f, const Rectangle& rect, Exponent p,
                                 std::optional<PartitionSpec> partition, RuleFamily family,
                                 NormOptions options = {});

}  // namespace certquad
