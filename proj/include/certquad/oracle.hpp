#pragma once

// Reference integration and the integration-by-parts identity behind every
// rule, evaluated numerically.

#include "certquad/core.hpp"
#include "certquad/weights.hpp"

namespace certquad {

struct OracleResult {
  double value;
  /// Last refinement delta; 0 when the integrand carries its exact integral.
  double error_estimate;
};

/// Tensor Gauss–Legendre with dyadic panel refinement until two successive
/// levels differ by less than max(target_tol, 64 eps |value|). A set
/// exact_integral short-circuits the computation. Throws ConvergenceError
/// once 2^20 panels are exceeded and DomainError for target_tol < 1e-13.
OracleResult oracle_integrate(const Integrand& f, const Rectangle& rect, double target_tol = 1e-12);

/// Both sides of
///
///   int int f = f(a,c)phi(a,c) + f(b,d)phi(b,d) - f(a,d)phi(a,d) - f(b,c)phi(b,c)
///             + int [f_x phi](x,c) - [f_x phi](x,d) dx
///             + int [f_y phi](a,y) - [f_y phi](b,y) dy
///             + int int f_xy phi
///
/// accumulated over the smooth pieces of phi.
struct IdentityTerms {
  double lhs = 0.0;
  double corners = 0.0;
  double edge_x = 0.0;
  double edge_y = 0.0;
  double area = 0.0;

  double rhs() const noexcept { return corners + edge_x + edge_y + area; }
  double residual() const noexcept;
};

/// Requires analytic f_x, f_y, f_xy (ConfigurationError otherwise). The
/// rectangle is the weight's own. `resolution` is the panel count per axis
/// per piece row, at least 1.
IdentityTerms parts_identity_terms(const Integrand& f, const WeightFunction& w, int resolution = 64);

/// |lhs - rhs| of parts_identity_terms.
double parts_identity_residual(const Integrand& f, const WeightFunction& w, int resolution = 64);

}  // namespace certquad
