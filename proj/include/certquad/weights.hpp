#pragma once

// Weight functions phi with phi_xy = 1 almost everywhere. Every rule in the
// library is one choice of phi(x,y) = xy + alpha(x) + beta(y); its Hölder
// error coefficients are L^q norms of phi and of its restrictions to lines.

#include <variant>
#include <vector>

#include "certquad/core.hpp"

namespace certquad {

/// phi(x,y) = (x - m1)(y - m2).
struct TrapezoidPhi {
  Rectangle rect;
};

/// The four-piece weight vanishing on the boundary of rect:
/// phi = (x - a|b)(y - c|d), choosing the nearer edge in each coordinate.
struct MidpointPhi {
  Rectangle rect;
};

/// phi = U_i(x) V_j(y) with U_i(x) = x - u_i on the i-th column and
/// V_j(y) = y - v_j on the j-th row (u_i, v_j the cell centres).
struct CompositeTrapezoidPhi {
  Rectangle rect;
  PartitionSpec partition;
};

/// Gamma = gamma_i(x) delta_j(y): the midpoint weight replicated in every
/// cell, vanishing on all cell edges.
struct CompositeMidpointPhi {
  Rectangle rect;
  PartitionSpec partition;
};

/// phi(x,y) = xy + alpha(x) + beta(y) with user-supplied absolutely
/// continuous alpha, beta. Kinks of alpha/beta may be listed in
/// x_breaks/y_breaks so numeric quadrature does not straddle them.
struct CustomPhi {
  Function1D alpha;
  Function1D beta;
  Rectangle rect;
  std::vector<double> x_breaks;
  std::vector<double> y_breaks;
};

using WeightFunction =
    std::variant<TrapezoidPhi, MidpointPhi, CompositeTrapezoidPhi, CompositeMidpointPhi, CustomPhi>;

/// A sub-rectangle on which phi is smooth, with phi's extension to the
/// closed cell (one-sided values on the cell edges).
struct WeightPiece {
  Rectangle cell;
  Function2D phi;
};

const Rectangle& domain(const WeightFunction& w);
bool is_builtin(const WeightFunction& w);
std::string variant_name(const WeightFunction& w);

/// Value of phi at (x, y). On a piece boundary the piece with the larger
/// coordinate wins (limit from above); the top/right edges of rect belong to
/// the last piece. Throws DomainError outside rect.
double eval_phi(const WeightFunction& w, double x, double y);

/// Interior coordinates along `axis` where phi or |phi| is not smooth: piece
/// seams and zero lines of the built-in weights, user breaks for CustomPhi.
std::vector<double> seams(const WeightFunction& w, Axis axis);

/// Smooth pieces covering rect (cells of the seam grid).
std::vector<WeightPiece> weight_pieces(const WeightFunction& w);

/// q-norm of a one-cell-per-`cells` sawtooth of slope 1 over an interval of
/// `length`: length^(2-1/p) C(p) / (2 cells), p = conjugate(q).
/// Covers |x - m| over [a,b] (cells = 1), the composite ramps U and gamma.
double sawtooth_norm_closed(double length, int cells, Exponent q);

/// Exact L^q norm of phi over rect. Built-in variants only.
double phi_norm_closed(const WeightFunction& w, Exponent q);

/// Exact L^q norm of phi restricted to the line {coordinate} x [extent]
/// running along `along` (e.g. along x at y = c gives |phi(., c)|_q).
double phi_line_norm_closed(const WeightFunction& w, Exponent q, Axis along, double coordinate);

/// Quadrature counterpart of phi_norm_closed; works for every variant.
/// Panels never straddle a seam. For q = inf the maximum of |phi| over a
/// grid that includes one-sided values at every seam, refined locally.
double phi_norm_numeric(const WeightFunction& w, Exponent q, int resolution = 256);

double phi_line_norm_numeric(const WeightFunction& w, Exponent q, Axis along, double coordinate,
                             int resolution = 256);

}  // namespace certquad
