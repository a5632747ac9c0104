// Python bindings for the core operations: parameter algebra, spectral
// fields, functionals, ground-state solvers, certification, snapshots.
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gnmln/io.hpp"
#include "gnmln/solvers.hpp"
#include "gnmln/verify.hpp"

namespace py = pybind11;
using namespace gnmln;

namespace {

py::array_t<double> field_values(const Field& f) {
    const SpectralGrid& g = f.grid;
    std::vector<py::ssize_t> shape(static_cast<std::size_t>(g.dim),
                                   static_cast<py::ssize_t>(g.n_per_axis));
    py::array_t<double> out(shape);
    std::copy(f.values.begin(), f.values.end(), out.mutable_data());
    return out;
}

Field field_from_array(const SpectralGrid& g, const py::array_t<double>& a) {
    const auto buf = a.request();
    if (static_cast<std::size_t>(buf.size) != g.size())
        throw validation_error("array size does not match the grid");
    Field f(g);
    const auto c = py::array_t<double, py::array::c_style | py::array::forcecast>(a);
    std::copy(c.data(), c.data() + g.size(), f.values.begin());
    return f;
}

}  // namespace

PYBIND11_MODULE(pygnmln, m) {
    m.doc() = "pseudospectral solvers and certification for the mixed "
              "local-nonlocal Gagliardo-Nirenberg ground-state problem";

    py::register_exception<validation_error>(m, "ValidationError",
                                             PyExc_ValueError);
    py::register_exception<solver_error>(m, "SolverError", PyExc_RuntimeError);

    py::class_<ProblemParams>(m, "ProblemParams")
        .def(py::init([](int dim, double s_low, double s_high, double p) {
                 ProblemParams pp{dim, s_low, s_high, p};
                 validate(pp);
                 return pp;
             }),
             py::arg("dim"), py::arg("s_low"), py::arg("s_high"), py::arg("p"))
        .def_readonly("dim", &ProblemParams::dim)
        .def_readonly("s_low", &ProblemParams::s_low)
        .def_readonly("s_high", &ProblemParams::s_high)
        .def_readonly("p", &ProblemParams::p)
        .def("__repr__", [](const ProblemParams& pp) {
            return "ProblemParams(dim=" + std::to_string(pp.dim) +
                   ", s_low=" + std::to_string(pp.s_low) +
                   ", s_high=" + std::to_string(pp.s_high) +
                   ", p=" + std::to_string(pp.p) + ")";
        });

    py::class_<GnExponents>(m, "GnExponents")
        .def_readonly("exp_low", &GnExponents::exp_low)
        .def_readonly("exp_high", &GnExponents::exp_high)
        .def_readonly("exp_mass", &GnExponents::exp_mass);

    m.def("gn_exponents", &gn_exponents);
    m.def("critical_mass_from_constant", &critical_mass_from_constant);
    m.def("constant_from_critical_mass", &constant_from_critical_mass);
    m.def("threshold_coefficient", &threshold_coefficient);
    m.def("beta_target", &beta_target);
    m.def("gamma_target", &gamma_target);

    py::class_<SpectralGrid>(m, "SpectralGrid")
        .def_readonly("dim", &SpectralGrid::dim)
        .def_readonly("n_per_axis", &SpectralGrid::n_per_axis)
        .def_readonly("half_length", &SpectralGrid::half_length)
        .def("spacing", &SpectralGrid::spacing)
        .def("size", &SpectralGrid::size);
    m.def("make_grid", &make_grid, py::arg("dim"), py::arg("n"),
          py::arg("half_length"));

    py::class_<Field>(m, "Field")
        .def(py::init(&field_from_array), py::arg("grid"), py::arg("values"))
        .def_readonly("grid", &Field::grid)
        .def_property_readonly("values", &field_values);
    m.def("gaussian_field", &gaussian_field, py::arg("grid"),
          py::arg("amplitude"), py::arg("width"));
    m.def("random_smooth_field", &random_smooth_field, py::arg("grid"),
          py::arg("seed"));
    m.def("content_hash",
          [](const Field& f) { return content_hash(f.values); });

    m.def("mass", py::overload_cast<const Field&>(&mass));
    m.def("seminorm_sq",
          py::overload_cast<const Field&, double>(&seminorm_sq));
    m.def("lp_norm_p", &lp_norm_p);
    m.def("energy", &energy);
    m.def("weinstein", &weinstein);
    m.def("energy_gradient", &energy_gradient);
    m.def("dilation_scaling", &dilation_scaling);
    m.def("mass_scaling", &mass_scaling);
    m.def("t_star",
          py::overload_cast<const Field&, const ProblemParams&>(&t_star));

    py::class_<FunctionalReport>(m, "FunctionalReport")
        .def_readonly("energy", &FunctionalReport::energy)
        .def_readonly("kinetic_high", &FunctionalReport::kinetic_high)
        .def_readonly("kinetic_low", &FunctionalReport::kinetic_low)
        .def_readonly("potential", &FunctionalReport::potential)
        .def_readonly("mass", &FunctionalReport::mass)
        .def_readonly("weinstein", &FunctionalReport::weinstein);
    m.def("functional_report",
          py::overload_cast<const Field&, const ProblemParams&>(
              &functional_report));

    py::class_<SolverOptions>(m, "SolverOptions")
        .def(py::init<>())
        .def_readwrite("max_iters", &SolverOptions::max_iters)
        .def_readwrite("residual_tol", &SolverOptions::residual_tol)
        .def_readwrite("damping", &SolverOptions::damping)
        .def_readwrite("descent_max_iters", &SolverOptions::descent_max_iters)
        .def_readwrite("flow_max_iters", &SolverOptions::flow_max_iters);

    py::class_<GroundState>(m, "GroundState")
        .def_readonly("field", &GroundState::field)
        .def_readonly("omega", &GroundState::omega)
        .def_readonly("report", &GroundState::report)
        .def_readonly("residual", &GroundState::residual)
        .def_readonly("boundary_decay", &GroundState::boundary_decay)
        .def_readonly("iterations", &GroundState::iterations)
        .def_readonly("box_flag", &GroundState::box_flag);

    m.def("canonical_init", &canonical_init);
    m.def(
        "petviashvili_solve",
        [](const ProblemParams& pp, double omega, const Field& init,
           const SolverOptions& opts) {
            return petviashvili_solve(pp, omega, init, opts);
        },
        py::arg("params"), py::arg("omega"), py::arg("init"),
        py::arg("options") = SolverOptions{});

    py::class_<DescentResult>(m, "DescentResult")
        .def_readonly("w", &DescentResult::w)
        .def_readonly("W_min", &DescentResult::W_min)
        .def_readonly("grad_norm", &DescentResult::grad_norm)
        .def_readonly("iterations", &DescentResult::iterations)
        .def_readonly("termination", &DescentResult::termination);
    m.def(
        "weinstein_descent",
        [](const ProblemParams& pp, const Field& init, const SolverOptions& o) {
            return weinstein_descent(pp, init, o);
        },
        py::arg("params"), py::arg("init"),
        py::arg("options") = SolverOptions{});
    m.def("rescale_to_solution", &rescale_to_solution);

    py::class_<CriticalMassResult>(m, "CriticalMassResult")
        .def_readonly("omega_star", &CriticalMassResult::omega_star)
        .def_readonly("ground", &CriticalMassResult::ground)
        .def_readonly("ground_w", &CriticalMassResult::ground_w)
        .def_readonly("c0_routeA", &CriticalMassResult::c0_routeA)
        .def_readonly("c0_routeW", &CriticalMassResult::c0_routeW)
        .def_readonly("c0_formula", &CriticalMassResult::c0_formula)
        .def_readonly("C_best", &CriticalMassResult::C_best)
        .def_readonly("W_min", &CriticalMassResult::W_min);
    m.def(
        "critical_mass_search",
        [](const ProblemParams& pp, const SpectralGrid& g,
           const SolverOptions& o) { return critical_mass_search(pp, g, o); },
        py::arg("params"), py::arg("grid"),
        py::arg("options") = SolverOptions{});

    py::class_<FlowResult>(m, "FlowResult")
        .def_readonly("u", &FlowResult::u)
        .def_readonly("m_c", &FlowResult::m_c)
        .def_readonly("iterations", &FlowResult::iterations)
        .def_readonly("status", &FlowResult::status)
        .def_readonly("min_threshold_margin", &FlowResult::min_threshold_margin);
    m.def(
        "mass_constrained_flow",
        [](const ProblemParams& pp, double c, const Field& init,
           const SolverOptions& o) {
            return mass_constrained_flow(pp, c, init, o);
        },
        py::arg("params"), py::arg("c"), py::arg("init"),
        py::arg("options") = SolverOptions{});

    m.def(
        "optimality_certificate_json",
        [](const CriticalMassResult& r, const ProblemParams& pp, int n_samples,
           std::uint64_t seed) {
            return certificate_to_json(
                optimality_certificate(r, pp, n_samples, seed));
        },
        py::arg("result"), py::arg("params"), py::arg("n_samples") = 1000,
        py::arg("seed") = 1);

    m.def("save_field_snapshot", &save_field_snapshot);
    m.def("load_field_snapshot", [](const std::string& path) {
        const Snapshot s = load_field_snapshot(path);
        return py::make_tuple(s.field, s.params);
    });
}
