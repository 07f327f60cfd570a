#pragma once

// Domain types shared by every certquad module: the integration rectangle,
// L^p exponents, uniform partitions, integrands and the derivative-norm /
// report records that tie rules to their certificates.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace certquad {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid domain object (degenerate rectangle, p < 1, point outside rect).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Unparseable user input (exponent strings, rule names).
class ParseError : public Error {
public:
  using Error::Error;
};

/// Requested computation is impossible with the supplied inputs, e.g.
/// analytic partials missing and finite differences disabled.
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// Derivative norms built for another (family, p, partition) than the
/// bound they are fed into.
class MismatchError : public Error {
public:
  using Error::Error;
};

class UnsupportedVariantError : public Error {
public:
  using Error::Error;
};

/// A sampled function value was NaN or infinite.
class EvaluationError : public Error {
public:
  EvaluationError(const std::string& what, double x, double y);
  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }

private:
  double x_;
  double y_;
};

/// Iterative refinement ran out of budget. Carries the best value seen.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& what, double best_value, double last_delta);
  double best_value() const noexcept { return best_value_; }
  double last_delta() const noexcept { return last_delta_; }

private:
  double best_value_;
  double last_delta_;
};

// ---------------------------------------------------------------------------
// Rectangle
// ---------------------------------------------------------------------------

/// The closed rectangle [a,b] x [c,d] with a < b, c < d, all finite.
class Rectangle {
public:
  Rectangle(double a, double b, double c, double d);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double c() const noexcept { return c_; }
  double d() const noexcept { return d_; }

  double width() const noexcept { return b_ - a_; }
  double height() const noexcept { return d_ - c_; }
  double area() const noexcept { return width() * height(); }
  double mid_x() const noexcept { return 0.5 * (a_ + b_); }
  double mid_y() const noexcept { return 0.5 * (c_ + d_); }

  bool contains(double x, double y) const noexcept;

  bool operator==(const Rectangle&) const = default;

private:
  double a_, b_, c_, d_;
};

// ---------------------------------------------------------------------------
// Exponent
// ---------------------------------------------------------------------------

/// A Lebesgue exponent p in [1, inf]. Infinity is its own variant, never a
/// floating sentinel, so branch selection is exact.
class Exponent {
public:
  enum class Kind { one, finite, infinite };

  /// Values within this distance of 1 take the p = 1 branch.
  static constexpr double one_threshold = 1e-12;

  /// Finite p >= 1. Passing +inf yields the infinite exponent.
  explicit Exponent(double p);

  static Exponent infinity() noexcept;

  /// Accepts decimal strings and "inf" / "infinity" (case-insensitive).
  static Exponent parse(std::string_view text);

  Kind kind() const noexcept;
  bool is_one() const noexcept { return kind() == Kind::one; }
  bool is_infinite() const noexcept { return infinite_; }

  /// The numeric value; +inf for the infinite exponent.
  double value() const noexcept;

  std::string to_string() const;

  bool operator==(const Exponent&) const = default;

private:
  Exponent() = default;
  double value_ = 1.0;
  bool infinite_ = false;
};

/// The q with 1/p + 1/q = 1; conjugate(1) = inf and conjugate(inf) = 1.
Exponent conjugate(Exponent p);

/// C(p) = ((p-1)/(2p-1))^(1-1/p), with C(1) = 1 and C(inf) = 1/2.
double holder_coefficient(Exponent p);

/// length^(2 - 1/p), the scale factor carried by every Hölder term.
double length_power(double length, Exponent p);

// ---------------------------------------------------------------------------
// Uniform partition
// ---------------------------------------------------------------------------

/// m x n uniform partition. Grid coordinates are generated against a
/// rectangle with the last node pinned to the right/top edge exactly.
class PartitionSpec {
public:
  PartitionSpec(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  double dx(const Rectangle& r) const noexcept { return r.width() / m_; }
  double dy(const Rectangle& r) const noexcept { return r.height() / n_; }

  /// x_0 = a, ..., x_m = b.
  std::vector<double> x_nodes(const Rectangle& r) const;
  /// y_0 = c, ..., y_n = d.
  std::vector<double> y_nodes(const Rectangle& r) const;
  /// Cell midpoints m_1..m_m (x) and n_1..n_n (y).
  std::vector<double> x_midpoints(const Rectangle& r) const;
  std::vector<double> y_midpoints(const Rectangle& r) const;

  bool operator==(const PartitionSpec&) const = default;

private:
  int m_;
  int n_;
};

/// lo + i (hi - lo) / count for i = 0..count with the final node equal to hi.
std::vector<double> uniform_nodes(double lo, double hi, int count);

// ---------------------------------------------------------------------------
// Integrand
// ---------------------------------------------------------------------------

using Function2D = std::function<double(double, double)>;
using Function1D = std::function<double(double)>;

/// f together with optional analytic partials and an optional known value of
/// its integral over the rectangle it is paired with.
///
/// Preconditions the library cannot check: f_xy = f_yx almost everywhere and
/// the absolute-continuity conditions along lines that make the
/// integration-by-parts formula valid. Every built-in integrand is smooth.
struct Integrand {
  Function2D f;
  std::optional<Function2D> fx;
  std::optional<Function2D> fy;
  std::optional<Function2D> fxy;
  std::optional<double> exact_integral;
  std::string label;

  double operator()(double x, double y) const { return f(x, y); }
  bool has_partials() const noexcept { return fx && fy && fxy; }
};

// ---------------------------------------------------------------------------
// Derivative norms, bounds and reports
// ---------------------------------------------------------------------------

enum class Axis { x, y };

enum class RuleFamily { trapezoid, midpoint };

enum class NormSource { analytic, numeric, user_asserted };

enum class RuleId {
  trapezoid,
  midpoint,
  composite_trapezoid,
  composite_midpoint,
  custom_phi
};

std::string to_string(RuleFamily f);
std::string to_string(NormSource s);
std::string to_string(RuleId r);
RuleId parse_rule_id(std::string_view text);
RuleFamily family_of(RuleId r);
bool is_composite(RuleId r);

/// The L^p norms of f_x, f_y along lines and of f_xy over the rectangle that
/// a bound consumes. A value is bound to (family, p, partition):
///
///  - trapezoid family: fx_bottom = |f_x(.,c)|, fx_top = |f_x(.,d)|,
///    fy_left = |f_y(a,.)|, fy_right = |f_y(b,.)|; interior_x_lines holds
///    |f_x(.,y_j)| for j = 1..n-1 and interior_y_lines |f_y(x_i,.)| for
///    i = 1..m-1.
///  - midpoint family: the edge fields are unused (zero); interior_x_lines
///    holds the midline norms |f_x(.,n_j)| for j = 1..n and
///    interior_y_lines |f_y(m_i,.)| for i = 1..m.
struct DerivativeNorms {
  DerivativeNorms(Exponent p, RuleFamily family, PartitionSpec partition);

  Exponent p;
  RuleFamily family;
  PartitionSpec partition;

  double fx_bottom = 0.0;
  double fx_top = 0.0;
  double fy_left = 0.0;
  double fy_right = 0.0;
  double fxy = 0.0;
  std::vector<double> interior_x_lines;
  std::vector<double> interior_y_lines;

  /// One entry per populated norm, e.g. {"fx(.,y_1)", numeric}.
  std::vector<std::pair<std::string, NormSource>> provenance;

  std::size_t expected_x_lines() const noexcept;
  std::size_t expected_y_lines() const noexcept;

  /// Throws DomainError on negative / non-finite values or list lengths that
  /// do not match the partition.
  void validate() const;

  /// Build from literal values with user_asserted provenance.
  static DerivativeNorms trapezoid(Exponent p, double fx_bottom, double fx_top,
                                   double fy_left, double fy_right, double fxy);
  static DerivativeNorms midpoint(Exponent p, double fx_mid, double fy_mid, double fxy);
};

/// |grad f| <= M and |f_xy| <= N on the rectangle.
struct UniformBounds {
  UniformBounds(double M, double N);
  double M;
  double N;
};

struct BoundComponents {
  double fx_term = 0.0;
  double fy_term = 0.0;
  double fxy_term = 0.0;

  double total() const noexcept { return fx_term + fy_term + fxy_term; }
};

/// An estimate with its certificate. bound == components.total() exactly.
struct QuadratureReport {
  RuleId rule;
  double estimate;
  BoundComponents components;
  double bound;
  Exponent p;
  std::optional<PartitionSpec> partition;
  DerivativeNorms norms_used;
  std::vector<std::string> notes;
};

/// Fold a tolerance for double-precision bound arithmetic into the
/// certificate comparison: |error| <= bound + 1e-12 * max(1, |reference|).
bool certificate_holds(double error, double bound, double reference) noexcept;

}  // namespace certquad
