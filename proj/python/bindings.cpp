#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "magineq/closed_bounds.hpp"
#include "magineq/el_solver.hpp"
#include "magineq/errors.hpp"
#include "magineq/gn_ground_states.hpp"
#include "magineq/klt.hpp"
#include "magineq/stability.hpp"
#include "magineq/sweep.hpp"

namespace py = pybind11;
using namespace magineq;

namespace {

// Options dict -> spec, mirroring the command-line flags.
SweepSpec spec_from(const std::string& subcommand, const py::dict& o) {
  SweepSpec spec;
  spec.subcommand = subcommand_from_string(subcommand);
  auto get = [&](const char* key, double fallback) {
    return o.contains(key) ? o[key].cast<double>() : fallback;
  };
  const double p_default = spec.subcommand == Subcommand::nu_curve ? 1.4 : 3.0;
  const int d = o.contains("d") ? o["d"].cast<int>() : 2;
  const double B = get("B", spec.subcommand == Subcommand::gn ? 0.0 : 1.0);
  spec.params = ProblemParams{d, get("p", p_default), B, get("Lambda", B)};
  if (o.contains("config")) spec.config = SolverConfig::from_json(o["config"].cast<std::string>());
  if (o.contains("threads")) spec.config.threads = o["threads"].cast<int>();
  spec.range.min = get("min", 0.0);
  spec.range.max = get("max", 1.0);
  spec.range.steps = o.contains("steps") ? o["steps"].cast<int>() : 10;
  spec.range.spacing = spacing_from_string(o.contains("spacing") ? o["spacing"].cast<std::string>() : "linear");
  spec.figure_axes = o.contains("figure_axes") && o["figure_axes"].cast<bool>();
  if (spec.subcommand == Subcommand::klt) {
    spec.klt.potential_path = o["potential"].cast<std::string>();
    if (o.contains("case")) spec.klt.case_name = o["case"].cast<std::string>();
    if (o.contains("lambda")) spec.klt.lambda = o["lambda"].cast<double>();
    if (o.contains("source")) spec.klt.source = bound_source_from_string(o["source"].cast<std::string>());
    if (o.contains("gamma")) spec.klt.gamma = o["gamma"].cast<double>();
  }
  return spec;
}

py::list cells_to_python(const std::vector<Cell>& row) {
  py::list out;
  for (const Cell& c : row) {
    std::visit([&](const auto& v) { out.append(v); }, c);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_magineq, m) {
  m.doc() = "Optimal constants and bound curves for magnetic interpolation inequalities";
  m.attr("__version__") = MAGINEQ_VERSION;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<UnsupportedParameterError>(m, "UnsupportedParameterError", base.ptr());
  py::register_exception<IntegrationError>(m, "IntegrationError", base.ptr());
  py::register_exception<SolverError>(m, "SolverError", base.ptr());
  py::register_exception<IntegrabilityError>(m, "IntegrabilityError", base.ptr());
  py::register_exception<RangeError>(m, "RangeError", base.ptr());
  py::register_exception<CurveError>(m, "CurveError", base.ptr());
  py::register_exception<AccuracyError>(m, "AccuracyError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<ProblemParams>(m, "ProblemParams")
      .def(py::init<>())
      .def(py::init([](int d, double p, double B, double Lambda) { return ProblemParams{d, p, B, Lambda}; }),
           py::arg("d"), py::arg("p"), py::arg("B") = 0.0, py::arg("Lambda") = 0.0)
      .def_static("constant_field", &ProblemParams::constant_field)
      .def_readwrite("d", &ProblemParams::d)
      .def_readwrite("p", &ProblemParams::p)
      .def_readwrite("B", &ProblemParams::B)
      .def_readwrite("Lambda", &ProblemParams::Lambda)
      .def("validate", &ProblemParams::validate, py::arg("allow_p2") = false);

  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init<>())
      .def_static("from_json", &SolverConfig::from_json)
      .def("to_json", &SolverConfig::to_json)
      .def_readwrite("ode_rel_tol", &SolverConfig::ode_rel_tol)
      .def_readwrite("ode_abs_tol", &SolverConfig::ode_abs_tol)
      .def_readwrite("max_step", &SolverConfig::max_step)
      .def_readwrite("r0", &SolverConfig::r0)
      .def_readwrite("r_max", &SolverConfig::r_max)
      .def_readwrite("bracket_tol", &SolverConfig::bracket_tol)
      .def_readwrite("touchdown_tol", &SolverConfig::touchdown_tol)
      .def_readwrite("beta_change_tol", &SolverConfig::beta_change_tol)
      .def_readwrite("eig_tol", &SolverConfig::eig_tol)
      .def_readwrite("fd_step", &SolverConfig::fd_step)
      .def_readwrite("threads", &SolverConfig::threads);

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("nodes", &RadialProfile::nodes)
      .def_readonly("values", &RadialProfile::values)
      .def_readonly("derivative_values", &RadialProfile::derivative_values)
      .def_readonly("support_radius", &RadialProfile::support_radius)
      .def("value", &RadialProfile::value)
      .def("derivative", &RadialProfile::derivative);

  py::class_<GNConstants>(m, "GNConstants")
      .def_readonly("d", &GNConstants::d)
      .def_readonly("p", &GNConstants::p)
      .def_readonly("C_p", &GNConstants::C_p)
      .def_readonly("S_p", &GNConstants::S_p)
      .def_readonly("solver_residual", &GNConstants::solver_residual)
      .def_readonly("grid_spec", &GNConstants::grid_spec)
      .def_readonly("amplitude", &GNConstants::amplitude)
      .def_readonly("support_radius", &GNConstants::support_radius);

  py::class_<ELPoint>(m, "ELPoint")
      .def_readonly("parameter", &ELPoint::parameter)
      .def_readonly("value", &ELPoint::value)
      .def_readonly("amplitude", &ELPoint::amplitude)
      .def_readonly("profile", &ELPoint::profile)
      .def_readonly("support_radius", &ELPoint::support_radius)
      .def_readonly("residual", &ELPoint::residual);

  py::class_<GaussianOptimum>(m, "GaussianOptimum")
      .def_readonly("theta", &GaussianOptimum::theta)
      .def_readonly("sigma", &GaussianOptimum::sigma)
      .def_readonly("quotient_value", &GaussianOptimum::quotient_value);

  py::class_<StabilityResult>(m, "StabilityResult")
      .def_readonly("alpha", &StabilityResult::alpha)
      .def_readonly("mu_eig", &StabilityResult::mu_eig)
      .def_readonly("mu_fd", &StabilityResult::mu_fd)
      .def_readonly("mu_shooting", &StabilityResult::mu_shooting)
      .def_readonly("relative_gap", &StabilityResult::relative_gap)
      .def_readonly("method", &StabilityResult::method)
      .def_readonly("discretization", &StabilityResult::discretization);

  py::class_<KLTBound>(m, "KLTBound")
      .def_readonly("case_name", &KLTBound::case_name)
      .def_readonly("input_norm", &KLTBound::input_norm)
      .def_readonly("bound_value", &KLTBound::bound_value)
      .def_property_readonly("bound_source", [](const KLTBound& b) { return std::string(to_string(b.bound_source)); })
      .def_readonly("asymptotic_extended", &KLTBound::asymptotic_extended);

  py::enum_<TailModel>(m, "TailModel")
      .value("none", TailModel::none)
      .value("constant", TailModel::constant)
      .value("power", TailModel::power);

  py::class_<PotentialGrid>(m, "PotentialGrid")
      .def(py::init<std::vector<double>, std::vector<double>, int, TailModel, double, double>(), py::arg("nodes"),
           py::arg("values"), py::arg("d"), py::arg("tail") = TailModel::none, py::arg("tail_exponent") = 0.0,
           py::arg("tail_level") = 0.0)
      .def_static("load", &PotentialGrid::load)
      .def_static("parse", [](const std::string& text) {
        std::istringstream in(text);
        return PotentialGrid::parse(in);
      })
      .def("value", &PotentialGrid::value)
      .def_property_readonly("d", &PotentialGrid::d);

  const SolverConfig defaults;
  m.def("compute_C_p", &compute_C_p, py::arg("d"), py::arg("p"), py::arg("config") = defaults);
  m.def("compute_S_p", &compute_S_p);
  m.def("xi_zero_field", &xi_zero_field);
  m.def("xi_constant_field", &xi_constant_field);
  m.def("mu_interp", &mu_interp);
  m.def("mu_LT", &mu_LT);
  m.def("mu_gauss", &mu_gauss);
  m.def("nu_interp", &nu_interp);
  m.def("nu_LT", [](double p, double B, double beta, const GNConstants& gn) { return nu_LT(p, B, beta, gn).value; });
  m.def("nu_gauss", &nu_gauss);
  m.def("solve_mu_el", &solve_mu_el, py::arg("p"), py::arg("B"), py::arg("alpha"), py::arg("config") = defaults);
  m.def("solve_nu_el", &solve_nu_el, py::arg("p"), py::arg("B"), py::arg("nu"), py::arg("config") = defaults);
  m.def("solve_nu_for_beta", &solve_nu_for_beta, py::arg("p"), py::arg("B"), py::arg("beta"),
        py::arg("config") = defaults);
  m.def("lowest_c1_eigenvalue", &lowest_c1_eigenvalue, py::arg("psi0"), py::arg("p"), py::arg("B"), py::arg("alpha"),
        py::arg("config") = defaults);
  m.def("lq_norm_negative_part", &lq_norm_negative_part);
  m.def("lq_plus_norm", &lq_plus_norm);
  m.def("lq_norm_inverse", &lq_norm_inverse);
  m.def("gibbs_integral", &gibbs_integral);
  m.def(
      "klt_case_i",
      [](const ProblemParams& pp, const GNConstants& gn, double norm, const std::string& source) {
        return klt_case_i(pp, gn, norm, bound_source_from_string(source));
      },
      py::arg("params"), py::arg("gn"), py::arg("norm"), py::arg("source") = "interp");
  m.def(
      "klt_case_ii",
      [](const ProblemParams& pp, const GNConstants& gn, double beta, const std::string& source) {
        return klt_case_ii(pp, gn, beta, bound_source_from_string(source));
      },
      py::arg("params"), py::arg("gn"), py::arg("beta"), py::arg("source") = "interp");
  m.def("klt_case_iii", &klt_case_iii);

  m.def(
      "run_cli_table",
      [](const std::string& subcommand, const py::dict& options) {
        const SweepResult res = run_sweep(spec_from(subcommand, options));
        py::list rows;
        for (const auto& row : res.table.rows) rows.append(cells_to_python(row));
        return py::make_tuple(res.table.columns, rows, res.ok);
      },
      py::arg("subcommand"), py::arg("options") = py::dict());
  m.def(
      "run_cli_csv",
      [](const std::string& subcommand, const py::dict& options) {
        const SweepResult res = run_sweep(spec_from(subcommand, options));
        std::ostringstream os;
        write_csv(res.table, os);
        return os.str();
      },
      py::arg("subcommand"), py::arg("options") = py::dict());
}
