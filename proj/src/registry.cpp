#include "certquad/registry.hpp"

#include <cmath>
#include <numbers>

namespace certquad {

namespace {

double cube(double v) { return v * v * v; }

// u ln u - u, an antiderivative of ln u.
double log_antiderivative(double u) { return u * std::log(u) - u; }

Integrand build(std::string_view name, const Rectangle& r) {
  const double a = r.a(), b = r.b(), c = r.c(), d = r.d();
  Integrand f;
  f.label = std::string(name);
  if (name == "const") {
    f.f = [](double, double) { return 1.0; };
    f.fx = [](double, double) { return 0.0; };
    f.fy = [](double, double) { return 0.0; };
    f.fxy = [](double, double) { return 0.0; };
    f.exact_integral = r.area();
  } else if (name == "bilinear") {
    f.f = [](double x, double y) { return x * y; };
    f.fx = [](double, double y) { return y; };
    f.fy = [](double x, double) { return x; };
    f.fxy = [](double, double) { return 1.0; };
    f.exact_integral = (b * b - a * a) * (d * d - c * c) / 4.0;
  } else if (name == "poly22") {
    f.f = [](double x, double y) { return x * x * y * y; };
    f.fx = [](double x, double y) { return 2.0 * x * y * y; };
    f.fy = [](double x, double y) { return 2.0 * x * x * y; };
    f.fxy = [](double x, double y) { return 4.0 * x * y; };
    f.exact_integral = (cube(b) - cube(a)) * (cube(d) - cube(c)) / 9.0;
  } else if (name == "cubic") {
    f.f = [](double x, double y) { return cube(x) + cube(y); };
    f.fx = [](double x, double) { return 3.0 * x * x; };
    f.fy = [](double, double y) { return 3.0 * y * y; };
    f.fxy = [](double, double) { return 0.0; };
    f.exact_integral = (std::pow(b, 4) - std::pow(a, 4)) / 4.0 * r.height() +
                       (std::pow(d, 4) - std::pow(c, 4)) / 4.0 * r.width();
  } else if (name == "sinsin") {
    f.f = [](double x, double y) { return std::sin(x) * std::sin(y); };
    f.fx = [](double x, double y) { return std::cos(x) * std::sin(y); };
    f.fy = [](double x, double y) { return std::sin(x) * std::cos(y); };
    f.fxy = [](double x, double y) { return std::cos(x) * std::cos(y); };
    f.exact_integral = (std::cos(a) - std::cos(b)) * (std::cos(c) - std::cos(d));
  } else if (name == "expsum") {
    const auto e = [](double x, double y) { return std::exp(x + y); };
    f.f = e;
    f.fx = e;
    f.fy = e;
    f.fxy = e;
    f.exact_integral = (std::exp(b) - std::exp(a)) * (std::exp(d) - std::exp(c));
  } else if (name == "recip") {
    if (!(1.0 + a + c > 0.0)) throw DomainError("recip needs 1 + x + y > 0 on the rectangle");
    f.f = [](double x, double y) { return 1.0 / (1.0 + x + y); };
    f.fx = [](double x, double y) { return -1.0 / ((1.0 + x + y) * (1.0 + x + y)); };
    f.fy = *f.fx;
    f.fxy = [](double x, double y) { return 2.0 / cube(1.0 + x + y); };
    f.exact_integral = log_antiderivative(1 + b + d) - log_antiderivative(1 + a + d) -
                       log_antiderivative(1 + b + c) + log_antiderivative(1 + a + c);
  } else if (name == "gauss") {
    f.f = [](double x, double y) { return std::exp(-x * x - y * y); };
    f.fx = [](double x, double y) { return -2.0 * x * std::exp(-x * x - y * y); };
    f.fy = [](double x, double y) { return -2.0 * y * std::exp(-x * x - y * y); };
    f.fxy = [](double x, double y) { return 4.0 * x * y * std::exp(-x * x - y * y); };
    f.exact_integral = std::numbers::pi / 4.0 * (std::erf(b) - std::erf(a)) * (std::erf(d) - std::erf(c));
  } else {
    std::string names;
    for (const auto& n : registry_names()) names += (names.empty() ? "" : ", ") + n;
    throw RegistryError("unknown function '" + std::string(name) + "'; available: " + names);
  }
  return f;
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries{
      {"const", "1"},
      {"bilinear", "x*y"},
      {"poly22", "x^2*y^2"},
      {"cubic", "x^3+y^3"},
      {"sinsin", "sin(x)*sin(y)"},
      {"expsum", "exp(x+y)"},
      {"recip", "1/(1+x+y)"},
      {"gauss", "exp(-x^2-y^2)"},
  };
  return entries;
}

std::vector<std::string> registry_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.push_back(e.name);
  return out;
}

Integrand make_integrand(std::string_view name, const Rectangle& rect) { return build(name, rect); }

std::vector<std::string> smooth_corpus_names() {
  return {"poly22", "cubic", "sinsin", "expsum", "recip", "gauss"};
}

}  // namespace certquad
