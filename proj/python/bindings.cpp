#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cloakcyl/specfun.hpp"
#include "cloakcyl/sweep_opt.hpp"
#include "cloakcyl/validation.hpp"

namespace py = pybind11;
using namespace cloak;

namespace {

// {"config": {...}, "columns": {name: [values]}}
py::dict table_to_dict(const Table& t) {
  py::dict config;
  for (const auto& [k, v] : t.meta) config[py::str(k)] = v;
  py::dict columns;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    py::list values;
    for (const auto& row : t.rows) {
      if (const double* d = std::get_if<double>(&row[c])) {
        values.append(*d);
      } else {
        values.append(std::get<std::string>(row[c]));
      }
    }
    columns[py::str(t.columns[c])] = values;
  }
  py::dict out;
  out["config"] = config;
  out["columns"] = columns;
  return out;
}

Model parse_model(const std::string& m) {
  if (m == "exact") return Model::exact;
  if (m == "moments") return Model::moments;
  throw py::value_error("model must be 'exact' or 'moments'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coated PEC cylinder: modal solution, dipole-line model and cloaking sweeps";

  py::register_exception<SingularModeError>(m, "SingularModeError", PyExc_RuntimeError);
  py::register_exception<specfun::QuadratureError>(m, "QuadratureError", PyExc_RuntimeError);

  py::class_<Geometry>(m, "Geometry")
      .def(py::init([](double g, double a, double eps_r) {
             Geometry geo{g, a, eps_r};
             geo.validate();
             return geo;
           }),
           py::arg("g"), py::arg("a"), py::arg("eps_r"))
      .def_static("in_wavelengths", &Geometry::in_wavelengths, py::arg("g_over_lambda"),
                  py::arg("a_over_lambda"), py::arg("eps_r"),
                  py::arg("reference_frequency") = kReferenceFrequency)
      .def_readonly("g", &Geometry::g)
      .def_readonly("a", &Geometry::a)
      .def_readonly("eps_r", &Geometry::eps_r);

  py::class_<ModalSolution>(m, "ModalSolution")
      .def_property_readonly("frequency", [](const ModalSolution& s) { return s.excitation().frequency; })
      .def_property_readonly("geometry", &ModalSolution::geometry)
      .def_property_readonly("k0", &ModalSolution::k0)
      .def_property_readonly("k", &ModalSolution::k)
      .def_property_readonly("truncation", &ModalSolution::truncation)
      .def_property_readonly("a0", &ModalSolution::a0)
      .def_property_readonly("b0", &ModalSolution::b0)
      .def_property_readonly("a1", &ModalSolution::a1)
      .def_property_readonly("b1", &ModalSolution::b1);

  py::class_<DipoleMoments>(m, "DipoleMoments")
      .def_readonly("p_z", &DipoleMoments::p_z)
      .def_readonly("m_y", &DipoleMoments::m_y)
      .def_readonly("cp_z", &DipoleMoments::cp_z);

  py::class_<StudySetup>(m, "StudySetup")
      .def(py::init([](double g, double a, double eps_r, double f0, double frequency_ratio) {
             StudySetup s{g, a, eps_r, f0, frequency_ratio};
             s.geometry().validate();
             return s;
           }),
           py::arg("g_over_lambda") = 0.05, py::arg("a_over_lambda") = 0.08,
           py::arg("eps_r") = 60.0, py::arg("f0") = kReferenceFrequency,
           py::arg("frequency_ratio") = 1.0)
      .def_readonly("g_over_lambda", &StudySetup::g_over_lambda)
      .def_readonly("a_over_lambda", &StudySetup::a_over_lambda)
      .def_readonly("eps_r", &StudySetup::eps_r)
      .def_readonly("f0", &StudySetup::f0)
      .def_readonly("frequency_ratio", &StudySetup::frequency_ratio)
      .def("geometry", &StudySetup::geometry);

  m.def(
      "solve_modes",
      [](const Geometry& geo, double frequency) { return solve_modes(geo, Excitation{frequency}); },
      py::arg("geometry"), py::arg("frequency"));
  m.def(
      "bare_reference",
      [](double g, double frequency) { return bare_reference(g, Excitation{frequency}); },
      py::arg("g"), py::arg("frequency"));
  m.def("far_amplitude", &far_amplitude, py::arg("solution"), py::arg("phi"));
  m.def("dipole_moments", &dipole_moments, py::arg("solution"));
  m.def("sigma_norm", &sigma_norm, py::arg("solution"), py::arg("reference"));
  m.def("sigma_norm_moments", &sigma_norm_moments, py::arg("moments"),
        py::arg("reference_moments"));
  m.def(
      "pattern",
      [](const ModalSolution& sol, const ModalSolution& ref, const std::string& model,
         int n_angles) {
        const FarFieldPattern p =
            parse_model(model) == Model::exact
                ? pattern_exact(sol, ref, n_angles)
                : pattern_moments(dipole_moments(sol), dipole_moments(ref), sol.k0(), n_angles);
        return py::make_tuple(p.angles, p.ratios());
      },
      py::arg("solution"), py::arg("reference"), py::arg("model") = "exact",
      py::arg("n_angles") = kDefaultPatternAngles);
  m.def(
      "optimal_frequency_ratio",
      [](const StudySetup& s, const std::string& model, double lo, double hi, int n) {
        return optimal_frequency_ratio(s, parse_model(model), lo, hi, n);
      },
      py::arg("setup") = StudySetup{}, py::arg("model") = "exact", py::arg("lo") = 0.8,
      py::arg("hi") = 1.2, py::arg("n_points") = 400);
  m.def(
      "optimal_permittivity",
      [](const StudySetup& s, const std::string& model, double lo, double hi, int n) {
        return optimal_permittivity(s, parse_model(model), lo, hi, n);
      },
      py::arg("setup") = StudySetup{}, py::arg("model") = "exact", py::arg("lo") = 1.0,
      py::arg("hi") = 120.0, py::arg("n_points") = 400);
  m.def(
      "sweep",
      [](const std::string& var, double lo, double hi, int n_points, const StudySetup& setup,
         int threads) {
        SweepSpec spec;
        if (var == "eps") {
          spec.variable = SweepVariable::eps_r;
        } else if (var == "freq") {
          spec.variable = SweepVariable::frequency;
        } else {
          throw py::value_error("var must be 'eps' or 'freq'");
        }
        spec.lo = lo;
        spec.hi = hi;
        spec.n_points = n_points;
        spec.setup = setup;
        spec.threads = threads;
        spec.validate();
        SweepResult res;
        {
          py::gil_scoped_release release;
          res = run_sweep(spec);
        }
        return table_to_dict(sweep_table(spec, res));
      },
      py::arg("var"), py::arg("lo"), py::arg("hi"), py::arg("n_points") = 400,
      py::arg("setup") = StudySetup{}, py::arg("threads") = 0);
  m.def(
      "figure_dataset",
      [](const std::string& id, const StudySetup& setup, int n_points, int n_angles) {
        const auto fid = parse_figure_id(id);
        if (!fid) throw py::value_error("unknown figure id '" + id + "'");
        return table_to_dict(figure_dataset(*fid, FigureOptions{setup, n_points, n_angles}));
      },
      py::arg("figure_id"), py::arg("setup") = StudySetup{}, py::arg("n_points") = 400,
      py::arg("n_angles") = kDefaultPatternAngles);
  m.def(
      "validate",
      [](const StudySetup& setup) {
        py::list out;
        for (const CheckResult& r : run_validation(setup)) {
          py::dict d;
          d["name"] = r.name;
          d["passed"] = r.passed;
          d["advisory"] = r.advisory;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("setup") = StudySetup{});
}
