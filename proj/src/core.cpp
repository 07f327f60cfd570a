#include "certquad/core.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace certquad {

namespace {

std::string format_point(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << " at (" << x << ", " << y << ")";
  return os.str();
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

EvaluationError::EvaluationError(const std::string& what, double x, double y)
    : Error(what + format_point(x, y)), x_(x), y_(y) {}

ConvergenceError::ConvergenceError(const std::string& what, double best_value,
                                   double last_delta)
    : Error(what), best_value_(best_value), last_delta_(last_delta) {}

// ---------------------------------------------------------------------------

Rectangle::Rectangle(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c) && std::isfinite(d)))
    throw DomainError("rectangle coordinates must be finite");
  if (!(a < b) || !(c < d))
    throw DomainError("rectangle requires a < b and c < d");
}

bool Rectangle::contains(double x, double y) const noexcept {
  return x >= a_ && x <= b_ && y >= c_ && y <= d_;
}

// ---------------------------------------------------------------------------

Exponent::Exponent(double p) {
  if (std::isnan(p) || p < 1.0) throw DomainError("exponent must satisfy p >= 1");
  if (std::isinf(p)) {
    infinite_ = true;
    value_ = std::numeric_limits<double>::infinity();
    return;
  }
  value_ = (p - 1.0 <= one_threshold) ? 1.0 : p;
}

Exponent Exponent::infinity() noexcept {
  Exponent e;
  e.infinite_ = true;
  e.value_ = std::numeric_limits<double>::infinity();
  return e;
}

Exponent Exponent::parse(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (s == "inf" || s == "infinity" || s == "+inf") return infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("invalid exponent '" + std::string(text) + "' (expected a number >= 1 or 'inf')");
  try {
    return Exponent(v);
  } catch (const DomainError&) {
    throw ParseError("invalid exponent '" + std::string(text) + "': p must be >= 1");
  }
}

Exponent::Kind Exponent::kind() const noexcept {
  if (infinite_) return Kind::infinite;
  if (value_ == 1.0) return Kind::one;
  return Kind::finite;
}

double Exponent::value() const noexcept { return value_; }

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

Exponent conjugate(Exponent p) {
  switch (p.kind()) {
    case Exponent::Kind::one:
      return Exponent::infinity();
    case Exponent::Kind::infinite:
      return Exponent(1.0);
    case Exponent::Kind::finite:
      break;
  }
  const double v = p.value();
  return Exponent(v / (v - 1.0));
}

double holder_coefficient(Exponent p) {
  switch (p.kind()) {
    case Exponent::Kind::one:
      return 1.0;
    case Exponent::Kind::infinite:
      return 0.5;
    case Exponent::Kind::finite:
      break;
  }
  const double v = p.value();
  return std::pow((v - 1.0) / (2.0 * v - 1.0), 1.0 - 1.0 / v);
}

double length_power(double length, Exponent p) {
  switch (p.kind()) {
    case Exponent::Kind::one:
      return length;
    case Exponent::Kind::infinite:
      return length * length;
    case Exponent::Kind::finite:
      break;
  }
  return std::pow(length, 2.0 - 1.0 / p.value());
}

// ---------------------------------------------------------------------------

std::vector<double> uniform_nodes(double lo, double hi, int count) {
  std::vector<double> nodes(static_cast<std::size_t>(count) + 1);
  const double step = (hi - lo) / count;
  for (int i = 0; i < count; ++i) nodes[static_cast<std::size_t>(i)] = lo + i * step;
  nodes.back() = hi;
  return nodes;
}

PartitionSpec::PartitionSpec(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) throw DomainError("partition requires m >= 1 and n >= 1");
}

std::vector<double> PartitionSpec::x_nodes(const Rectangle& r) const {
  return uniform_nodes(r.a(), r.b(), m_);
}

std::vector<double> PartitionSpec::y_nodes(const Rectangle& r) const {
  return uniform_nodes(r.c(), r.d(), n_);
}

namespace {
std::vector<double> midpoints(const std::vector<double>& nodes) {
  std::vector<double> mids(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) mids[i] = 0.5 * (nodes[i] + nodes[i + 1]);
  return mids;
}
}  // namespace

std::vector<double> PartitionSpec::x_midpoints(const Rectangle& r) const {
  return midpoints(x_nodes(r));
}

std::vector<double> PartitionSpec::y_midpoints(const Rectangle& r) const {
  return midpoints(y_nodes(r));
}

// ---------------------------------------------------------------------------

std::string to_string(RuleFamily f) {
  return f == RuleFamily::trapezoid ? "trapezoid" : "midpoint";
}

std::string to_string(NormSource s) {
  switch (s) {
    case NormSource::analytic:
      return "analytic";
    case NormSource::numeric:
      return "numeric";
    case NormSource::user_asserted:
      return "user-asserted";
  }
  return "unknown";
}

std::string to_string(RuleId r) {
  switch (r) {
    case RuleId::trapezoid:
      return "trapezoid";
    case RuleId::midpoint:
      return "midpoint";
    case RuleId::composite_trapezoid:
      return "composite-trapezoid";
    case RuleId::composite_midpoint:
      return "composite-midpoint";
    case RuleId::custom_phi:
      return "custom-phi";
  }
  return "unknown";
}

RuleId parse_rule_id(std::string_view text) {
  for (RuleId r : {RuleId::trapezoid, RuleId::midpoint, RuleId::composite_trapezoid,
                   RuleId::composite_midpoint, RuleId::custom_phi}) {
    if (text == to_string(r)) return r;
  }
  throw ParseError("unknown rule '" + std::string(text) +
                   "' (expected trapezoid, midpoint, composite-trapezoid, composite-midpoint, custom-phi)");
}

RuleFamily family_of(RuleId r) {
  switch (r) {
    case RuleId::midpoint:
    case RuleId::composite_midpoint:
      return RuleFamily::midpoint;
    default:
      return RuleFamily::trapezoid;
  }
}

bool is_composite(RuleId r) {
  return r == RuleId::composite_trapezoid || r == RuleId::composite_midpoint;
}

// ---------------------------------------------------------------------------

DerivativeNorms::DerivativeNorms(Exponent p_, RuleFamily family_, PartitionSpec partition_)
    : p(p_), family(family_), partition(partition_) {}

std::size_t DerivativeNorms::expected_x_lines() const noexcept {
  const auto n = static_cast<std::size_t>(partition.n());
  return family == RuleFamily::trapezoid ? n - 1 : n;
}

std::size_t DerivativeNorms::expected_y_lines() const noexcept {
  const auto m = static_cast<std::size_t>(partition.m());
  return family == RuleFamily::trapezoid ? m - 1 : m;
}

void DerivativeNorms::validate() const {
  for (double v : {fx_bottom, fx_top, fy_left, fy_right, fxy})
    if (!finite_nonneg(v)) throw DomainError("derivative norms must be finite and >= 0");
  for (const auto* lines : {&interior_x_lines, &interior_y_lines})
    for (double v : *lines)
      if (!finite_nonneg(v)) throw DomainError("derivative line norms must be finite and >= 0");
  if (interior_x_lines.size() != expected_x_lines() || interior_y_lines.size() != expected_y_lines())
    throw DomainError("derivative line-norm counts do not match the partition");
}

DerivativeNorms DerivativeNorms::trapezoid(Exponent p, double fx_bottom, double fx_top,
                                           double fy_left, double fy_right, double fxy) {
  DerivativeNorms dn(p, RuleFamily::trapezoid, PartitionSpec(1, 1));
  dn.fx_bottom = fx_bottom;
  dn.fx_top = fx_top;
  dn.fy_left = fy_left;
  dn.fy_right = fy_right;
  dn.fxy = fxy;
  for (const char* name : {"fx(.,c)", "fx(.,d)", "fy(a,.)", "fy(b,.)", "fxy"})
    dn.provenance.emplace_back(name, NormSource::user_asserted);
  dn.validate();
  return dn;
}

DerivativeNorms DerivativeNorms::midpoint(Exponent p, double fx_mid, double fy_mid, double fxy) {
  DerivativeNorms dn(p, RuleFamily::midpoint, PartitionSpec(1, 1));
  dn.interior_x_lines = {fx_mid};
  dn.interior_y_lines = {fy_mid};
  dn.fxy = fxy;
  for (const char* name : {"fx(.,n_1)", "fy(m_1,.)", "fxy"})
    dn.provenance.emplace_back(name, NormSource::user_asserted);
  dn.validate();
  return dn;
}

UniformBounds::UniformBounds(double M_, double N_) : M(M_), N(N_) {
  if (!finite_nonneg(M) || !finite_nonneg(N))
    throw DomainError("uniform bounds M, N must be finite and >= 0");
}

bool certificate_holds(double error, double bound, double reference) noexcept {
  return std::abs(error) <= bound + 1e-12 * std::max(1.0, std::abs(reference));
}

}  // namespace certquad
