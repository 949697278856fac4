#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "escreg/scenario_io.hpp"

namespace py = pybind11;
using namespace escreg;

namespace {

Scenario scenario_from_json(const std::string& text) { return parse_scenario(text); }

py::dict trajectory_to_dict(const Trajectory& traj) {
    py::dict d;
    const auto n = static_cast<Eigen::Index>(traj.times.size());
    Vector t(n);
    for (Eigen::Index i = 0; i < n; ++i) t(i) = traj.times[static_cast<std::size_t>(i)];
    d["t"] = t;
    for (const auto& name : traj.channel_names()) {
        d[name.c_str()] = traj.channel(name);
    }
    return d;
}

py::list harmonic_table(const SteadyState& ss) {
    py::list rows;
    auto dump = [&rows](const char* name, const HarmonicSignal& sig) {
        for (const auto& term : sig.terms) {
            for (Eigen::Index i = 0; i < sig.dim; ++i) {
                rows.append(py::make_tuple(name, i + 1, term.omega, term.cos_coeff(i),
                                           term.sin_coeff(i)));
            }
        }
    };
    dump("u", ss.u_ss);
    dump("z", ss.z_ss);
    dump("xi", ss.xi_ss);
    dump("theta", ss.theta_ss);
    dump("varpi", ss.varpi_ss);
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Extremum-seeking output regulator: internal model construction, "
              "harmonic steady-state oracle, Lie-bracket averaging and closed-loop "
              "simulation";

    py::register_exception<SingularMatrix>(m, "SingularMatrix");
    py::register_exception<DegenerateRow>(m, "DegenerateRow");
    py::register_exception<DuplicateFrequency>(m, "DuplicateFrequency");
    py::register_exception<NonFinite>(m, "NonFinite");
    py::register_exception<IntegrationDiverged>(m, "IntegrationDiverged");
    py::register_exception<ConfigError>(m, "ConfigError");

    // dense kernel
    m.def("solve_linear", &solve_linear, py::arg("A"), py::arg("b"));
    m.def("companion", &companion, py::arg("coeffs"));
    m.def("charpoly", &charpoly, py::arg("A"));
    m.def("routh_hurwitz_stable", &routh_hurwitz_stable, py::arg("coeffs_monic"),
          "Stability of a monic polynomial given in descending powers");
    m.def("is_hurwitz", &is_hurwitz, py::arg("F"));
    m.def("lyapunov_solve", &lyapunov_solve, py::arg("F"));
    m.def("eig_imaginary_distinct", &eig_imaginary_distinct, py::arg("S"));

    // internal model
    py::class_<InternalModel>(m, "InternalModel")
        .def_readonly("n", &InternalModel::n)
        .def_readonly("m", &InternalModel::m)
        .def_readonly("M", &InternalModel::M)
        .def_readonly("N", &InternalModel::N)
        .def_readonly("Theta", &InternalModel::Theta)
        .def_readonly("T", &InternalModel::T)
        .def_readonly("varrho", &InternalModel::varrho)
        .def_readonly("sat_radius", &InternalModel::sat_radius)
        .def_property_readonly("a", &InternalModel::a);
    m.def("min_poly_coeffs", &min_poly_coeffs, py::arg("frequencies"),
          py::arg("include_zero") = false);
    m.def("build_T", &build_T, py::arg("a"), py::arg("m"));
    m.def("internal_model", &make_internal_model, py::arg("a"), py::arg("m"),
          py::arg("Theta"), py::arg("sat_radius"));
    m.def("bump_psi", &bump_psi, py::arg("s"));
    m.def("chi",
          [](const Vector& theta, const Vector& vartheta, const InternalModel& model) {
              return chi(theta, vartheta, model);
          },
          py::arg("theta"), py::arg("vartheta"), py::arg("model"));
    m.def("chi_s",
          [](const Vector& eta, const Vector& vartheta, const InternalModel& model) {
              return chi_s(eta, vartheta, model);
          },
          py::arg("eta"), py::arg("vartheta"), py::arg("model"));

    // scenarios and simulation
    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("model", [](const Scenario& sc) { return sc.model; })
        .def_property_readonly("omega", [](const Scenario& sc) { return sc.cfg.omega; })
        .def_property_readonly("x0", [](const Scenario& sc) { return sc.x0; })
        .def_readwrite("T", &Scenario::T)
        .def_readwrite("dt", &Scenario::dt)
        .def("with_omega", [](const Scenario& sc, double omega) {
            return with_omega(sc, omega);
        });
    m.def("load_scenario", &load_scenario, py::arg("path"));
    m.def("parse_scenario", &scenario_from_json, py::arg("json_text"));
    m.def("integrate",
          [](const Scenario& sc) { return trajectory_to_dict(integrate(sc)); },
          py::arg("scenario"), "Run the closed loop; returns a dict of channel arrays");
    m.def("ultimate_bound",
          [](const Scenario& sc, const std::string& channel, double tail) {
              return ultimate_bound(integrate(sc), channel, tail);
          },
          py::arg("scenario"), py::arg("channel"), py::arg("tail_fraction"));
    m.def("run_sweep",
          [](const Scenario& sc, const std::vector<double>& omegas) {
              py::list out;
              for (const auto& r : run_sweep(sc, omegas)) {
                  py::dict d;
                  d["omega"] = r.omega;
                  d["ultimate_bound_e"] = r.ultimate_bound_e;
                  d["sup_dev_vs_averaged"] = r.sup_dev_vs_averaged;
                  d["vartheta_err_final"] = r.vartheta_err_final;
                  out.append(d);
              }
              return out;
          },
          py::arg("scenario"), py::arg("omegas"));
    m.def("verify_averaging",
          [](const Scenario& sc, const std::vector<double>& omegas) {
              auto family = [&sc](double omega) {
                  return make_dithered_field(with_omega(sc, omega));
              };
              py::list out;
              for (const auto& r : convergence_test(family, make_averaged_closed_loop(sc),
                                                    sc.x0, sc.T, omegas)) {
                  out.append(py::make_tuple(r.omega, r.sup_deviation, r.final_deviation));
              }
              return out;
          },
          py::arg("scenario"), py::arg("omegas"));
    m.def("oracle_table",
          [](const Scenario& sc) { return harmonic_table(oracle_for(sc)); },
          py::arg("scenario"));
    m.def("error_view",
          [](const Scenario& sc) {
              const Trajectory traj = integrate(sc);
              const double b = sc.plant.b(sc.x0.segment(sc.layout().v(), 2), sc.plant.w);
              const ErrorView ev = error_view(traj, oracle_for(sc), b);
              py::dict d;
              const auto n = static_cast<Eigen::Index>(ev.times.size());
              Vector t(n);
              for (Eigen::Index i = 0; i < n; ++i) {
                  t(i) = ev.times[static_cast<std::size_t>(i)];
              }
              d["t"] = t;
              d["zbar"] = ev.zbar;
              d["etabar"] = ev.etabar;
              d["varthetabar"] = ev.varthetabar;
              d["pibar"] = ev.pibar;
              d["e"] = ev.e;
              return d;
          },
          py::arg("scenario"),
          "Integrate and return error coordinates relative to the steady state");
    m.def("persistent_excitation",
          [](const Scenario& sc) { return assumption3_check(oracle_for(sc)); },
          py::arg("scenario"));
}
