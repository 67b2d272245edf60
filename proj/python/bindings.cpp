#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "liouville/certify.hpp"
#include "liouville/coeffs.hpp"
#include "liouville/radial.hpp"
#include "liouville/regions.hpp"
#include "liouville/sweep.hpp"
#include "liouville/young.hpp"

namespace py = pybind11;
using namespace liouville;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Region classifier, certificate engine and radial checks";

  py::register_exception<coeffs::DegenerateDenominator>(m, "DegenerateDenominator", PyExc_ArithmeticError);

  py::class_<ProblemPoint>(m, "ProblemPoint")
      .def(py::init<int, double, double>(), py::arg("n"), py::arg("p"), py::arg("q"))
      .def_property_readonly("n", &ProblemPoint::n)
      .def_property_readonly("p", &ProblemPoint::p)
      .def_property_readonly("q", &ProblemPoint::q)
      .def("supercritical", &ProblemPoint::supercritical)
      .def("__repr__", &ProblemPoint::to_string);

  py::enum_<regions::Region>(m, "Region")
      .value("subthreshold", regions::Region::Subthreshold)
      .value("exists_radial", regions::Region::ExistsRadial)
      .value("constant_thm1", regions::Region::ConstantThm1)
      .value("constant_thm2", regions::Region::ConstantThm2)
      .value("constant_G", regions::Region::ConstantG)
      .value("open", regions::Region::Open);

  m.def("classify", [](int n, double p, double q) { return regions::classify(ProblemPoint(n, p, q)); },
        py::arg("n"), py::arg("p"), py::arg("q"));
  m.def("region_name", [](regions::Region r) { return std::string(regions::name(r)); });
  m.def("G_value", &regions::G_value, py::arg("n"), py::arg("p"), py::arg("q"));
  m.def("H_value", &regions::H_value, py::arg("n"), py::arg("p"), py::arg("q"));
  m.def("p_star", &regions::p_star, py::arg("n"), py::arg("q"));
  m.def("root_p2", &regions::root_p2, py::arg("n"), py::arg("q"));
  m.def("root_pM", &regions::root_pM, py::arg("n"), py::arg("q"));
  m.def("curve_samples",
        [](int n, const std::string& curve, int resolution) {
          return regions::curve_samples(n, regions::curve_from_name(curve), resolution);
        },
        py::arg("n"), py::arg("curve"), py::arg("resolution"));

  py::class_<coeffs::ParamChoice>(m, "ParamChoice")
      .def(py::init<>())
      .def_readwrite("gamma", &coeffs::ParamChoice::gamma)
      .def_readwrite("S", &coeffs::ParamChoice::S)
      .def_readwrite("Q", &coeffs::ParamChoice::Q)
      .def_readwrite("alpha", &coeffs::ParamChoice::alpha)
      .def_readwrite("P", &coeffs::ParamChoice::P)
      .def_readwrite("eps1", &coeffs::ParamChoice::eps1)
      .def_readwrite("eps", &coeffs::ParamChoice::eps);

  py::class_<coeffs::CoefficientSet>(m, "CoefficientSet")
      .def_readonly("a1", &coeffs::CoefficientSet::a1)
      .def_readonly("a2", &coeffs::CoefficientSet::a2)
      .def_readonly("a3", &coeffs::CoefficientSet::a3)
      .def_readonly("a4", &coeffs::CoefficientSet::a4)
      .def_readonly("b1", &coeffs::CoefficientSet::b1)
      .def_readonly("b2", &coeffs::CoefficientSet::b2);

  m.def("coefficient_set", &coeffs::coefficient_set, py::arg("n"), py::arg("p"), py::arg("q"), py::arg("params"));

  py::class_<young::YoungExponents>(m, "YoungExponents")
      .def_readonly("B", &young::YoungExponents::B)
      .def_readonly("p1", &young::YoungExponents::p1)
      .def_readonly("q1", &young::YoungExponents::q1)
      .def_readonly("sigma1", &young::YoungExponents::sigma1);

  m.def("young_exponents", &young::young_exponents, py::arg("n"), py::arg("q"), py::arg("gamma"),
        py::arg("alpha"), py::arg("p"));

  py::class_<certify::Certificate>(m, "Certificate")
      .def_readonly("params", &certify::Certificate::params)
      .def_readonly("coeffs", &certify::Certificate::coeffs)
      .def_readonly("delta", &certify::Certificate::delta)
      .def_readonly("young", &certify::Certificate::young)
      .def_property_readonly("regime", [](const certify::Certificate& c) { return std::string(certify::name(c.regime)); })
      .def("feasible", &certify::Certificate::feasible)
      .def("failures", &certify::Certificate::failures)
      .def("serialize", [](const certify::Certificate& c) { return certify::serialize(c); });

  m.def("certify_lowq", [](int n, double p, double q) { return certify::certify_lowq(ProblemPoint(n, p, q)); },
        py::arg("n"), py::arg("p"), py::arg("q"));
  m.def("certify_highq", [](int n, double p, double q) { return certify::certify_highq(ProblemPoint(n, p, q)); },
        py::arg("n"), py::arg("p"), py::arg("q"));
  m.def("search_certificate",
        [](int n, double p, double q, int budget, std::uint64_t seed) {
          return certify::search_certificate(ProblemPoint(n, p, q), budget, seed);
        },
        py::arg("n"), py::arg("p"), py::arg("q"), py::arg("budget") = 2000, py::arg("seed") = 1);
  m.def("deserialize_certificate", [](const std::string& text) { return certify::deserialize(text); });

  py::class_<radial::RadialProfile>(m, "RadialProfile")
      .def_readonly("n", &radial::RadialProfile::n)
      .def_readonly("q", &radial::RadialProfile::q)
      .def_readonly("p", &radial::RadialProfile::p)
      .def_readonly("c", &radial::RadialProfile::c)
      .def_readonly("K", &radial::RadialProfile::K)
      .def_readonly("beta", &radial::RadialProfile::beta)
      .def("v", [](const radial::RadialProfile& pr, double r) { return radial::eval_profile(pr, r).v; })
      .def("ode_residual", [](const radial::RadialProfile& pr, double r) { return radial::ode_residual(pr, r); });

  m.def("make_profile", &radial::make_profile, py::arg("n"), py::arg("q"), py::arg("c") = 1.0);
  m.def("derive_K", &radial::derive_K, py::arg("n"), py::arg("q"));

  m.def("grid_csv",
        [](int n, double q_lo, double q_hi, double p_lo, double p_hi, int steps, const std::string& mode,
           std::uint64_t seed, int workers) {
          sweep::SweepConfig cfg;
          cfg.n = n;
          cfg.q_range = {q_lo, q_hi, steps};
          cfg.p_range = {p_lo, p_hi, steps};
          cfg.mode = sweep::mode_from_name(mode);
          cfg.seed = seed;
          cfg.workers = workers;
          sweep::validate(cfg);
          return sweep::grid_csv(cfg);
        },
        py::arg("n") = 6, py::arg("q_lo") = 0.0, py::arg("q_hi") = 1.98, py::arg("p_lo") = 0.0,
        py::arg("p_hi") = 4.0, py::arg("steps") = 100, py::arg("mode") = "classify", py::arg("seed") = 1,
        py::arg("workers") = 1);
  m.def("curves_csv", &sweep::curves_csv, py::arg("n"), py::arg("resolution"));
  m.def("render_svg_text", [](const std::string& grid, const std::string& curves) {
    return sweep::render_svg_text(grid, curves);
  });
  m.def("verify_all",
        [](std::uint64_t seed, double effort) {
          sweep::VerifyOptions opts;
          opts.effort = effort;
          const auto report = sweep::run_verify_all(seed, opts);
          return py::make_tuple(report.passed(), report.to_text());
        },
        py::arg("seed") = 1, py::arg("effort") = 1.0);
}
