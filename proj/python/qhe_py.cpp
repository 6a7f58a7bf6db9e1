// Python bindings over the engine toolkit: parameters, steady states,
// observables, closed forms, optimization, and universality reports.
#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhe/closed_forms.hpp"
#include "qhe/engine_params.hpp"
#include "qhe/liouvillian.hpp"
#include "qhe/observables.hpp"
#include "qhe/optimize.hpp"
#include "qhe/universality.hpp"

namespace py = pybind11;
using namespace qhe;

namespace {

std::vector<std::vector<cplx>> rho_to_list(const DensityMatrix& s) {
  std::vector<std::vector<cplx>> out(4, std::vector<cplx>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = s(i, j);
  return out;
}

DensityMatrix rho_from_list(const std::vector<std::vector<cplx>>& m) {
  if (m.size() != 4) throw domain_error("density matrix must be 4x4");
  DensityMatrix s;
  for (int i = 0; i < 4; ++i) {
    if (m[i].size() != 4) throw domain_error("density matrix must be 4x4");
    for (int j = 0; j < 4; ++j) s(i, j) = m[i][j];
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(qhe, m) {
  m.doc() = "four-level laser heat engine with noise-induced coherence";

  py::class_<EngineParams>(m, "EngineParams")
      .def(py::init([](double omega_c, double omega_h, double gamma_c, double gamma_h,
                       double lambda_, double p, double t_c, double t_h) {
             EngineParams e;
             e.omega_c = omega_c;
             e.omega_h = omega_h;
             e.gamma_c = gamma_c;
             e.gamma_h = gamma_h;
             e.lambda = lambda_;
             e.p = p;
             e.t_c = t_c;
             e.t_h = t_h;
             return e;
           }),
           py::arg("omega_c") = 7.0, py::arg("omega_h") = 10.0, py::arg("gamma_c") = 0.25,
           py::arg("gamma_h") = 0.5, py::arg("lambda_") = 0.1, py::arg("p") = 0.0,
           py::arg("t_c") = 6.0, py::arg("t_h") = 10.0)
      .def_readwrite("omega_c", &EngineParams::omega_c)
      .def_readwrite("omega_h", &EngineParams::omega_h)
      .def_readwrite("gamma_c", &EngineParams::gamma_c)
      .def_readwrite("gamma_h", &EngineParams::gamma_h)
      .def_readwrite("lambda_", &EngineParams::lambda)
      .def_readwrite("p", &EngineParams::p)
      .def_readwrite("t_c", &EngineParams::t_c)
      .def_readwrite("t_h", &EngineParams::t_h)
      .def("__repr__", [](const EngineParams& e) { return "EngineParams(" + describe(e) + ")"; });

  m.def("planck_occupation", &planck_occupation, py::arg("omega"), py::arg("temp"));
  m.def("carnot", &carnot);
  m.def("validate", [](const EngineParams& p, bool engine_mode) {
    return validate(p, engine_mode ? ValidationMode::engine : ValidationMode::unrestricted)
        .violations;
  },
        py::arg("params"), py::arg("engine_mode") = true);

  m.def("solve_steady_reduced", [](const EngineParams& p) {
    const auto sol = solve_steady_reduced(p);
    return py::make_tuple(rho_to_list(sol.state), sol.residual);
  });
  m.def("solve_steady_full", [](const EngineParams& p) {
    const auto sol = solve_steady_full(p);
    return py::make_tuple(rho_to_list(sol.state), sol.residual);
  });
  m.def("coherence_current",
        [](const std::vector<std::vector<cplx>>& rho) { return coherence_current(rho_from_list(rho)); });
  m.def("power_from_state", [](const EngineParams& p, const std::vector<std::vector<cplx>>& rho) {
    return power_from_state(p, rho_from_list(rho));
  });
  m.def("power_closed_form", &power_closed_form);
  m.def("efficiency", &efficiency);

  m.def("emp_low_t", &emp_low_t);
  m.def("emp_fixed_wh", &emp_fixed_wh, py::arg("eta_c"), py::arg("params"));
  m.def("emp_high_t_symmetric", &emp_high_t_symmetric);
  m.def("optimal_p", &optimal_p);

  m.def("optimize_over_p", [](const EngineParams& p) {
    const auto r = maximize_power_over_p(p);
    return py::make_tuple(r.argmax[0], r.max_value);
  });

  py::enum_<Scheme>(m, "Scheme")
      .value("fixed_wh", Scheme::fixed_wh)
      .value("fixed_wc", Scheme::fixed_wc)
      .value("two_param", Scheme::two_param)
      .value("sum_constraint", Scheme::sum_constraint)
      .value("product_constraint", Scheme::product_constraint)
      .value("over_p", Scheme::over_p);
  py::enum_<PowerModel>(m, "PowerModel")
      .value("full", PowerModel::full)
      .value("strong_ht", PowerModel::strong_ht)
      .value("low_t", PowerModel::low_t);
  py::enum_<FluxKind>(m, "FluxKind")
      .value("general", FluxKind::general)
      .value("high_t", FluxKind::high_t)
      .value("strong_coupling_high_t", FluxKind::strong_coupling_high_t)
      .value("low_t", FluxKind::low_t);

  m.def("emp_numeric", &emp_numeric, py::arg("params"), py::arg("scheme"), py::arg("model"));
  m.def("flux", &flux, py::arg("kind"), py::arg("x"), py::arg("y"), py::arg("params"));
  m.def("solve_alpha", [](const EngineParams& p, FluxKind kind) {
    const auto a = solve_alpha(p, kind);
    return py::make_tuple(a.value, a.at_boundary);
  });
  m.def("symmetry_defect", [](FluxKind kind, const EngineParams& p, int samples) {
    return symmetry_defect(kind, p, samples).max_defect;
  },
        py::arg("kind"), py::arg("params"), py::arg("samples") = 512);
  m.def("emp_second_order", &emp_second_order, py::arg("params"), py::arg("kind"));
  m.def("extract_emp_series", [](const EngineParams& p, Scheme s, PowerModel mdl) {
    const auto r = extract_emp_series(p, s, mdl);
    return py::make_tuple(r.c1, r.c2, r.c3, r.residual);
  });

  py::register_exception<domain_error>(m, "DomainError");
  py::register_exception<solver_error>(m, "SolverError");
  py::register_exception<no_root_error>(m, "NoRootError");
}
