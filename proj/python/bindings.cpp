#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "certquad/cli.hpp"
#include "certquad/minimizer.hpp"
#include "certquad/oracle.hpp"
#include "certquad/registry.hpp"
#include "certquad/rules.hpp"

namespace py = pybind11;
using namespace certquad;

namespace {

Exponent to_exponent(const py::object& p) {
  if (py::isinstance<py::str>(p)) return Exponent::parse(p.cast<std::string>());
  return Exponent(p.cast<double>());
}

WeightFunction make_weight(const std::string& name, const Rectangle& rect, int m, int n) {
  if (name == "trapezoid") return TrapezoidPhi{rect};
  if (name == "midpoint") return MidpointPhi{rect};
  if (name == "composite-trapezoid") return CompositeTrapezoidPhi{rect, PartitionSpec(m, n)};
  if (name == "composite-midpoint") return CompositeMidpointPhi{rect, PartitionSpec(m, n)};
  throw DomainError("unknown weight '" + name + "'");
}

py::dict report_dict(const QuadratureReport& r) {
  py::dict d;
  d["rule"] = to_string(r.rule);
  d["estimate"] = r.estimate;
  d["bound"] = r.bound;
  d["fx_term"] = r.components.fx_term;
  d["fy_term"] = r.components.fy_term;
  d["fxy_term"] = r.components.fxy_term;
  d["p"] = r.p.to_string();
  d["notes"] = r.notes;
  py::list prov;
  for (const auto& [name, source] : r.norms_used.provenance) prov.append(py::make_tuple(name, to_string(source)));
  d["provenance"] = prov;
  return d;
}

}  // namespace

PYBIND11_MODULE(_certquad, m) {
  m.doc() = "Certified-error quadrature on rectangles";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<ConfigurationError>(m, "ConfigurationError", base.ptr());
  py::register_exception<MismatchError>(m, "MismatchError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<RegistryError>(m, "RegistryError", base.ptr());

  py::class_<Rectangle>(m, "Rectangle")
      .def(py::init<double, double, double, double>(), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_property_readonly("a", &Rectangle::a)
      .def_property_readonly("b", &Rectangle::b)
      .def_property_readonly("c", &Rectangle::c)
      .def_property_readonly("d", &Rectangle::d)
      .def_property_readonly("area", &Rectangle::area)
      .def("__repr__", [](const Rectangle& r) {
        std::ostringstream os;
        os << "Rectangle(" << r.a() << ", " << r.b() << ", " << r.c() << ", " << r.d() << ")";
        return os.str();
      });

  py::class_<Integrand>(m, "Integrand")
      .def(py::init([](Function2D f, std::optional<Function2D> fx, std::optional<Function2D> fy,
                       std::optional<Function2D> fxy, std::optional<double> exact, std::string label) {
             return Integrand{std::move(f), std::move(fx), std::move(fy), std::move(fxy), exact, std::move(label)};
           }),
           py::arg("f"), py::arg("fx") = py::none(), py::arg("fy") = py::none(), py::arg("fxy") = py::none(),
           py::arg("exact_integral") = py::none(), py::arg("label") = "")
      .def("__call__", &Integrand::operator())
      .def_readonly("label", &Integrand::label)
      .def_readonly("exact_integral", &Integrand::exact_integral)
      .def("has_partials", &Integrand::has_partials);

  m.def("conjugate", [](const py::object& p) { return conjugate(to_exponent(p)).value(); }, py::arg("p"));
  m.def("holder_coefficient", [](const py::object& p) { return holder_coefficient(to_exponent(p)); }, py::arg("p"));

  m.def("registry_names", &registry_names);
  m.def("make_integrand", [](const std::string& name, const Rectangle& r) { return make_integrand(name, r); },
        py::arg("name"), py::arg("rect"));

  m.def(
      "apply_rule",
      [](const std::string& rule, const Integrand& f, const Rectangle& rect, const py::object& p, int m_,
         int n_, int resolution) {
        NormOptions o;
        o.resolution = resolution;
        return report_dict(apply_rule(parse_rule_id(rule), f, rect, to_exponent(p), PartitionSpec(m_, n_), o));
      },
      py::arg("rule"), py::arg("f"), py::arg("rect"), py::arg("p"), py::arg("m") = 1, py::arg("n") = 1,
      py::arg("resolution") = 256);

  m.def(
      "uniform_bound",
      [](const std::string& rule, double M, double N, const Rectangle& rect, int m_, int n_) {
        return uniform_bound(parse_rule_id(rule), UniformBounds(M, N), rect, PartitionSpec(m_, n_));
      },
      py::arg("rule"), py::arg("M"), py::arg("N"), py::arg("rect"), py::arg("m") = 1, py::arg("n") = 1);

  m.def(
      "oracle_integrate",
      [](const Integrand& f, const Rectangle& rect, double tol) {
        const auto r = oracle_integrate(f, rect, tol);
        return py::make_tuple(r.value, r.error_estimate);
      },
      py::arg("f"), py::arg("rect"), py::arg("tol") = 1e-12);

  m.def(
      "phi_norm_closed",
      [](const std::string& w, const Rectangle& rect, const py::object& q, int m_, int n_) {
        return phi_norm_closed(make_weight(w, rect, m_, n_), to_exponent(q));
      },
      py::arg("weight"), py::arg("rect"), py::arg("q"), py::arg("m") = 1, py::arg("n") = 1);
  m.def(
      "phi_norm_numeric",
      [](const std::string& w, const Rectangle& rect, const py::object& q, int m_, int n_, int resolution) {
        return phi_norm_numeric(make_weight(w, rect, m_, n_), to_exponent(q), resolution);
      },
      py::arg("weight"), py::arg("rect"), py::arg("q"), py::arg("m") = 1, py::arg("n") = 1,
      py::arg("resolution") = 256);
  m.def(
      "parts_identity_residual",
      [](const Integrand& f, const std::string& w, const Rectangle& rect, int m_, int n_) {
        return parts_identity_residual(f, make_weight(w, rect, m_, n_));
      },
      py::arg("f"), py::arg("weight"), py::arg("rect"), py::arg("m") = 1, py::arg("n") = 1);

  m.def("min_phi_norm_value", [](const py::object& q) { return min_phi_norm_value(to_exponent(q)); }, py::arg("q"));
  m.def(
      "search_min",
      [](const py::object& q, int restarts, std::uint64_t seed) {
        SearchOptions o;
        o.restarts = restarts;
        o.seed = seed;
        const Exponent e = to_exponent(q);
        SearchResult r;
        {
          py::gil_scoped_release release;
          r = search_min(e, AlphaBetaBasis::default_basis(), o);
        }
        py::dict d;
        d["coefficients"] = r.coefficients;
        d["achieved_norm"] = r.achieved_norm;
        d["objective"] = r.objective;
        return d;
      },
      py::arg("q"), py::arg("restarts") = 8, py::arg("seed") = SearchOptions{}.seed);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"certquad"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
