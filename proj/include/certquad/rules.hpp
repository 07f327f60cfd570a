#pragma once

// Trapezoidal and midpoint cubature on a rectangle, simple and composite,
// with a-priori error certificates built from L^p norms of f_x, f_y, f_xy.
//
// With W = b - a, H = d - c, C = holder_coefficient(p) and L^(2-1/p)
// written W', H', every certificate has the shape
//
//   |E| <= S_x H W' C k_x + S_y W H' C k_y + |f_xy|_p W' H' C^2 / (4 m n)
//
// where S_x, S_y are weighted sums of line norms and k_x = k_y = 1/(4mn)
// (trapezoid) or 1/(2mn) (midpoint). The p = 1 and p = inf cases are the
// C(1) = 1 and C(inf) = 1/2 specialisations.

#include "certquad/core.hpp"
#include "certquad/norms.hpp"
#include "certquad/weights.hpp"

namespace certquad {

// ---------------------------------------------------------------------------
// Estimates
// ---------------------------------------------------------------------------

/// Corner average times area.
double trapezoid_estimate(const Integrand& f, const Rectangle& rect);

/// f(m1, m2) times area.
double midpoint_estimate(const Integrand& f, const Rectangle& rect);

/// The trapezoid rule summed over the cells of `part`: corner weight 1,
/// boundary-edge nodes weight 2, interior nodes weight 4, times WH/(4mn).
double composite_trapezoid_estimate(const Integrand& f, const Rectangle& rect,
                                    const PartitionSpec& part);

/// The boundary-only sum (corners weight 1, boundary-edge nodes weight 2, no
/// interior nodes) times WH/(4mn). Agrees with composite_trapezoid_estimate
/// only when m = 1 or n = 1 ... and is not exact for constants otherwise.
/// Kept for reporting.
double composite_trapezoid_estimate_boundary_only(const Integrand& f, const Rectangle& rect,
                                                  const PartitionSpec& part);

/// Mean of the cell-midpoint values times area.
double composite_midpoint_estimate(const Integrand& f, const Rectangle& rect,
                                   const PartitionSpec& part);

// ---------------------------------------------------------------------------
// Certificates
// ---------------------------------------------------------------------------

BoundComponents trapezoid_bound(const DerivativeNorms& norms, const Rectangle& rect);
BoundComponents midpoint_bound(const DerivativeNorms& norms, const Rectangle& rect);

/// Interior line sums run over j = 1..n-1 and i = 1..m-1, each counted twice.
BoundComponents composite_trapezoid_bound(const DerivativeNorms& norms, const Rectangle& rect,
                                          const PartitionSpec& part);

/// S_x = sum_j |f_x(., n_j)|_p, S_y = sum_i |f_y(m_i, .)|_p with the unified
/// coefficients above; m = n = 1 reproduces midpoint_bound.
BoundComponents composite_midpoint_bound(const DerivativeNorms& norms, const Rectangle& rect,
                                         const PartitionSpec& part);

/// The composite-midpoint bound with the historically printed coefficients
/// (m^(1-1/p), (mn)^(1-1/p) denominators, no C(p) on the line terms,
/// 1/(4mn) for f_xy at p = inf). Emitted only as a comparison note.
BoundComponents composite_midpoint_bound_printed(const DerivativeNorms& norms,
                                                 const Rectangle& rect, const PartitionSpec& part);

/// Bound from |grad f| <= M and |f_xy| <= N for the given rule. Composite
/// trapezoid uses the (2n+1), (2m+1) counts; composite midpoint uses
/// N W^2 H^2 / (16 m n). Partition is ignored for the simple rules.
double uniform_bound(RuleId rule, const UniformBounds& ub, const Rectangle& rect,
                     const PartitionSpec& part);

// ---------------------------------------------------------------------------
// Full reports
// ---------------------------------------------------------------------------

/// Estimate plus certificate from already computed norms.
QuadratureReport make_report(RuleId rule, const Integrand& f, const Rectangle& rect,
                             const DerivativeNorms& norms);

/// Computes the derivative norms and builds the report. Simple rules ignore
/// `part`.
QuadratureReport apply_rule(RuleId rule, const Integrand& f, const Rectangle& rect, Exponent p,
                            const PartitionSpec& part = PartitionSpec(1, 1),
                            NormOptions options = {});

/// Same as apply_rule with a caller-owned calculator so norms are shared
/// across rules, exponents and partitions.
QuadratureReport apply_rule(RuleId rule, DerivativeNormCalculator& calc, const Integrand& f,
                            const Rectangle& rect, Exponent p, const PartitionSpec& part);

/// The generic weighted rule for phi = xy + alpha(x) + beta(y):
/// estimate f(a,c)phi(a,c) + f(b,d)phi(b,d) - f(a,d)phi(a,d) - f(b,c)phi(b,c);
/// bound is the five-term Hölder sum with numerically computed phi norms.
QuadratureReport custom_phi_rule(const Integrand& f, const CustomPhi& w, Exponent p,
                                 NormOptions options = {}, int phi_resolution = 256);

// ---------------------------------------------------------------------------
// One-variable rules
// ---------------------------------------------------------------------------

struct Interval {
  double lo;
  double hi;
};

struct OneDimResult {
  double estimate;
  double bound;
};

/// [g(a) + g(b)](b - a)/2 with |E| <= |g'|_p (b-a)^(2-1/p) C(p) / 2.
OneDimResult trapezoid_1d(const Function1D& g, Interval interval, Exponent p, double norm_gprime);

/// g(m)(b - a) with |E| <= |g'|_p |omega|_q, |omega|_q = (b-a)^(2-1/p) C(p) / 2.
OneDimResult midpoint_1d(const Function1D& g, Interval interval, Exponent p, double norm_gprime);

}  // namespace certquad
