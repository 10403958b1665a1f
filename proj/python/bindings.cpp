#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "fracstab/char_function.hpp"
#include "fracstab/critical_curve.hpp"
#include "fracstab/errors.hpp"
#include "fracstab/fde_solver.hpp"
#include "fracstab/fhn.hpp"
#include "fracstab/selftest.hpp"
#include "fracstab/stability.hpp"

namespace py = pybind11;
using namespace fracstab;

namespace {

std::vector<double> trajectory_component(const Trajectory& traj, std::size_t i) {
    if (i >= traj.dimension) {
        throw py::index_error("component index out of range");
    }
    std::vector<double> out;
    out.reserve(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out.push_back(traj.state(k)[i]);
    }
    return out;
}

Trajectory solve_with_callable(std::vector<double> orders, py::function rhs,
                               std::vector<double> initial_state, double t_end, double step) {
    FdeProblem problem;
    problem.orders = std::move(orders);
    problem.initial_state = std::move(initial_state);
    problem.t_end = t_end;
    problem.step = step;
    problem.rhs = [rhs](double t, std::span<const double> state, std::span<double> out) {
        const std::vector<double> x(state.begin(), state.end());
        const auto result = rhs(t, x).cast<std::vector<double>>();
        if (result.size() != out.size()) {
            throw std::invalid_argument("rhs returned a vector of the wrong dimension");
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = result[i];
        }
    };
    return solve(problem);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Stability analysis of two-component incommensurate fractional-order systems";

    py::register_exception<BoundaryRootError>(m, "BoundaryRootError");
    py::register_exception<UnreliableWindingError>(m, "UnreliableWindingError");
    py::register_exception<NoConvergenceError>(m, "NoConvergenceError");
    py::register_exception<DegenerateTailError>(m, "DegenerateTailError");

    py::class_<CharFunction>(m, "CharFunction",
                             "s^{q1+q2} + a s^{q2} + b s^{q1} + c on the principal branch")
        .def(py::init(&CharFunction::make), py::arg("a"), py::arg("b"), py::arg("c"),
             py::arg("q1"), py::arg("q2"))
        .def_readonly("a", &CharFunction::a)
        .def_readonly("b", &CharFunction::b)
        .def_readonly("c", &CharFunction::c)
        .def_readonly("q1", &CharFunction::q1)
        .def_readonly("q2", &CharFunction::q2)
        .def("value", &CharFunction::value, py::arg("s"))
        .def("derivative", &CharFunction::derivative, py::arg("s"))
        .def_property_readonly("decay_order", &CharFunction::decay_order)
        .def("contour_radius", &CharFunction::contour_radius);

    py::class_<RhpCount>(m, "RhpCount")
        .def_readonly("count", &RhpCount::count)
        .def_readonly("contour_radius", &RhpCount::contour_radius)
        .def_readonly("winding_residual", &RhpCount::winding_residual)
        .def("__repr__", [](const RhpCount& rc) {
            return "RhpCount(count=" + std::to_string(rc.count) + ")";
        });

    m.def("count_rhp_roots", &count_rhp_roots, py::arg("f"),
          "Zeros in the open right half-plane via the argument principle");
    m.def("track_root", &track_root, py::arg("f"), py::arg("s0"),
          "Newton refinement of a root from the starting guess");

    py::class_<CurveSample>(m, "CurveSample")
        .def_readonly("omega", &CurveSample::omega)
        .def_readonly("b", &CurveSample::b)
        .def_readonly("a", &CurveSample::a);

    py::class_<CriticalCurve>(m, "CriticalCurve",
                              "Locus of pure imaginary root pairs in the (b,a)-plane")
        .def(py::init(&CriticalCurve::make), py::arg("c"), py::arg("q1"), py::arg("q2"))
        .def_readonly("c", &CriticalCurve::c)
        .def_readonly("q1", &CriticalCurve::q1)
        .def_readonly("q2", &CriticalCurve::q2)
        .def_readonly("rho1", &CriticalCurve::rho1)
        .def_readonly("rho2", &CriticalCurve::rho2)
        .def("sample", &CriticalCurve::sample, py::arg("omega"))
        .def("a_star", &CriticalCurve::a_star, py::arg("b"))
        .def("crossing_frequency", &CriticalCurve::crossing_frequency, py::arg("b"))
        .def("omega_a", &CriticalCurve::omega_a)
        .def("omega_b", &CriticalCurve::omega_b);

    py::class_<StabilityVerdict>(m, "StabilityVerdict")
        .def_property_readonly("kind",
                               [](const StabilityVerdict& v) { return to_string(v.kind); })
        .def_readonly("rule", &StabilityVerdict::rule)
        .def_property_readonly("decay_order",
                               [](const StabilityVerdict& v) -> py::object {
                                   return v.decay_order ? py::cast(*v.decay_order) : py::none();
                               })
        .def_property_readonly("margin",
                               [](const StabilityVerdict& v) -> py::object {
                                   return v.margin ? py::cast(*v.margin) : py::none();
                               })
        .def_property_readonly("stable", &StabilityVerdict::stable)
        .def_property_readonly("unstable", &StabilityVerdict::unstable)
        .def("__repr__", [](const StabilityVerdict& v) {
            return std::string("StabilityVerdict(") + to_string(v.kind) + ", rule=" + v.rule + ")";
        });

    m.def("classify_coeffs", &classify_coeffs, py::arg("a"), py::arg("b"), py::arg("c"),
          py::arg("q1"), py::arg("q2"),
          "Verdict for s^{q1+q2} + a s^{q2} + b s^{q1} + c");
    m.def(
        "classify_matrix",
        [](double a11, double a12, double a21, double a22, double q1, double q2) {
            return classify_matrix(LinearSystem2{a11, a12, a21, a22, q1, q2});
        },
        py::arg("a11"), py::arg("a12"), py::arg("a21"), py::arg("a22"), py::arg("q1"),
        py::arg("q2"), "Verdict for the two-equation system with matrix entries a_ij");
    m.def(
        "verify_with_oracle",
        [](double a11, double a12, double a21, double a22, double q1, double q2) {
            return verify_with_oracle(LinearSystem2{a11, a12, a21, a22, q1, q2});
        },
        py::arg("a11"), py::arg("a12"), py::arg("a21"), py::arg("a22"), py::arg("q1"),
        py::arg("q2"), "Check the verdict against the argument-principle root count");

    py::class_<FhnParams>(m, "FhnParams")
        .def(py::init([](double r, double c, double d, double I) {
                 FhnParams p{r, c, d, I};
                 p.validate();
                 return p;
             }),
             py::arg("r"), py::arg("c"), py::arg("d"), py::arg("I"))
        .def_readwrite("r", &FhnParams::r)
        .def_readwrite("c", &FhnParams::c)
        .def_readwrite("d", &FhnParams::d)
        .def_readwrite("I", &FhnParams::I)
        .def_property_readonly("phi", &FhnParams::phi)
        .def_property_readonly("alpha", &FhnParams::alpha)
        .def_property_readonly("beta", &FhnParams::beta)
        .def("i_inf", &FhnParams::i_inf, py::arg("v"));

    py::class_<FhnEquilibrium>(m, "FhnEquilibrium")
        .def_readonly("v_star", &FhnEquilibrium::v_star)
        .def_readonly("w_star", &FhnEquilibrium::w_star)
        .def_readonly("coeff_a", &FhnEquilibrium::coeff_a)
        .def_readonly("coeff_b", &FhnEquilibrium::coeff_b)
        .def_readonly("coeff_c", &FhnEquilibrium::coeff_c);

    m.def("equilibrium", &equilibrium, py::arg("params"));
    m.def("classify_equilibrium", &classify_equilibrium, py::arg("params"), py::arg("q1"),
          py::arg("q2"));
    m.def(
        "hopf_q1",
        [](const FhnParams& params, double q2) -> py::object {
            const auto q = hopf_q1(params, q2);
            return q ? py::cast(*q) : py::none();
        },
        py::arg("params"), py::arg("q2"),
        "Critical order q1* for fixed q2, or None when the equilibrium is order-robust");
    m.def("hopf_curve", &hopf_curve, py::arg("params"), py::arg("grid_n"));
    m.def(
        "branch_diagram",
        [](double r, double c, double d, double i_min, double i_max, int n) {
            py::list out;
            for (const BranchPoint& pt : branch_diagram(r, c, d, i_min, i_max, n)) {
                out.append(py::make_tuple(pt.I, pt.v_star, pt.order_robust));
            }
            return out;
        },
        py::arg("r"), py::arg("c"), py::arg("d"), py::arg("i_min"), py::arg("i_max"),
        py::arg("n"), "List of (I, v_star, order_robust) along the equilibrium branch");

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times", [](const Trajectory& t) { return t.times; })
        .def_readonly("dimension", &Trajectory::dimension)
        .def_readonly("orders", &Trajectory::orders)
        .def_readonly("truncated", &Trajectory::truncated)
        .def("__len__", &Trajectory::size)
        .def("component", &trajectory_component, py::arg("i"))
        .def("norm", &Trajectory::norm, py::arg("k"));

    m.def("solve", &solve_with_callable, py::arg("orders"), py::arg("rhs"),
          py::arg("initial_state"), py::arg("t_end"), py::arg("step"),
          "Integrate a Caputo system; rhs(t, state) must return the derivative vector");
    m.def(
        "simulate_fhn",
        [](const FhnParams& params, double q1, double q2, double v0, double w0, double t_end,
           double step) { return solve(make_fhn_problem(params, q1, q2, v0, w0, t_end, step)); },
        py::arg("params"), py::arg("q1"), py::arg("q2"), py::arg("v0"), py::arg("w0"),
        py::arg("t_end"), py::arg("step"));
    m.def("estimate_decay_exponent", &estimate_decay_exponent, py::arg("trajectory"),
          py::arg("tail_fraction"));

    m.def(
        "selftest",
        [](std::uint64_t seed, int systems) {
            SelftestOptions opt;
            opt.seed = seed;
            opt.systems = systems;
            std::ostringstream sink;
            const SelftestReport report = run_selftest(opt, sink);
            return py::make_tuple(report.passed, report.failed, sink.str());
        },
        py::arg("seed") = 20170403, py::arg("systems") = 1000,
        "Run the cross-validation suite; returns (passed, failed, log)");

    m.attr("__version__") = "0.1.0";
}
