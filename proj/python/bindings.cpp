// SPDX-License-Identifier: Apache-2.0
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "qnls/bubbles.hpp"
#include "qnls/constants.hpp"
#include "qnls/corpus.hpp"
#include "qnls/functionals.hpp"
#include "qnls/grid.hpp"
#include "qnls/params.hpp"
#include "qnls/report_io.hpp"
#include "qnls/scaling.hpp"
#include "qnls/solvers.hpp"
#include "qnls/verify.hpp"

namespace py = pybind11;
using namespace qnls;

namespace {

// Structured results cross the boundary as the same JSON documents the CLI
// writes; the Python package decodes them into dicts.
template <class T>
std::string as_json(const T& v) {
  return io::to_json(v).dump();
}

SolveConfig config_from(const std::string& text) {
  if (text.empty()) return {};
  return io::solve_config_from_json(io::Json::parse(text));
}

RadialField field_from(const GridPtr& g, std::vector<double> values) {
  RadialField f(g, std::move(values));
  f.validate();
  return f;
}

}  // namespace

PYBIND11_MODULE(_qnls, m) {
  m.doc() = "Radial solvers and checks for mass-constrained quasilinear Schrodinger problems";
  m.attr("__version__") = io::version();

  py::register_exception<BracketError>(m, "BracketError", PyExc_RuntimeError);
  py::register_exception<ShootingError>(m, "ShootingError", PyExc_RuntimeError);
  py::register_exception<ResolutionError>(m, "ResolutionError", PyExc_ValueError);

  py::class_<ProblemParams>(m, "ProblemParams")
      .def(py::init([](int dim, double q, double tau, double mass, double mu, py::object theta) {
             ProblemParams p;
             p.dim = dim;
             p.q = q;
             p.tau = tau;
             p.mass = mass;
             p.mu = mu;
             p.theta = theta.is_none() ? default_theta(dim) : theta.cast<double>();
             p.validate();
             return p;
           }),
           py::arg("dim") = 3, py::arg("q") = 2.5, py::arg("tau") = 1.0, py::arg("mass") = 1.0,
           py::arg("mu") = 1e-3, py::arg("theta") = py::none())
      .def_readwrite("dim", &ProblemParams::dim)
      .def_readwrite("q", &ProblemParams::q)
      .def_readwrite("tau", &ProblemParams::tau)
      .def_readwrite("mass", &ProblemParams::mass)
      .def_readwrite("mu", &ProblemParams::mu)
      .def_readwrite("theta", &ProblemParams::theta)
      .def("validate", &ProblemParams::validate)
      .def("__repr__", [](const ProblemParams& p) { return "ProblemParams(" + as_json(p) + ")"; });

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int dim, double r_max, int n_nodes, double grading) {
             GridSpec g{dim, r_max, n_nodes, grading};
             g.validate();
             return g;
           }),
           py::arg("dim") = 3, py::arg("r_max") = 50.0, py::arg("n_nodes") = 2000, py::arg("grading") = 1.003)
      .def_readwrite("dim", &GridSpec::dim)
      .def_readwrite("r_max", &GridSpec::r_max)
      .def_readwrite("n_nodes", &GridSpec::n_nodes)
      .def_readwrite("grading", &GridSpec::grading);

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def(py::init([](const GridSpec& s) { return std::make_shared<Grid>(s); }), py::arg("spec"))
      .def_property_readonly("r", &Grid::r)
      .def_property_readonly("weights", &Grid::weights)
      .def_property_readonly("dim", &Grid::dim)
      .def("__len__", &Grid::size);

  py::class_<RadialField>(m, "RadialField")
      .def(py::init([](const std::shared_ptr<Grid>& g, std::vector<double> v) { return field_from(g, std::move(v)); }),
           py::arg("grid"), py::arg("values"))
      .def_static("from_function",
                  [](const std::shared_ptr<Grid>& g, const std::function<double(double)>& f) {
                    return RadialField::from_function(g, f);
                  })
      .def_readonly("values", &RadialField::values)
      .def_property_readonly("r", [](const RadialField& f) { return f.grid->r(); })
      .def("__len__", &RadialField::size);

  m.def("energy", [](const RadialField& u, const ProblemParams& p) {
    const EnergyBreakdown b = energy(u, p);
    return py::dict(py::arg("grad_theta") = b.grad_theta, py::arg("grad2") = b.grad2, py::arg("quasi") = b.quasi,
                    py::arg("subq") = b.subq, py::arg("crit") = b.crit, py::arg("total_I") = b.total_I,
                    py::arg("total_Q") = b.total_Q);
  });
  m.def("pohozaev", &pohozaev);
  m.def("mass", &qnls::mass);
  m.def("mass_project", &mass_project, py::arg("u"), py::arg("c"));
  m.def("dilate", &dilate, py::arg("u"), py::arg("s"));
  m.def("multiplier_weak", py::overload_cast<const RadialField&, const ProblemParams&>(&multiplier_weak));
  m.def("multiplier_identity", py::overload_cast<const RadialField&, const ProblemParams&>(&multiplier_identity));
  m.def("fiber_max", [](const RadialField& u, const ProblemParams& p) {
    const FiberMax f = fiber_max(u, p);
    return py::make_tuple(f.s, f.value);
  });

  m.def("sobolev_constant", &sobolev_constant, py::arg("dim"));
  m.def("gn_constant_quasi", &gn_constant_quasi, py::arg("p"), py::arg("dim"));
  m.def("gn_constant_classic", &gn_constant_classic, py::arg("q"), py::arg("dim"));
  m.def("gn_ratio", &gn_ratio, py::arg("u"), py::arg("p"), py::arg("c2"));
  m.def("gn_extremal_profile", [](double p, int dim, const std::shared_ptr<Grid>& g) {
    return gn_extremal(p, dim).profile(g);
  });
  m.def("thresholds_json", [](const ProblemParams& p) { return as_json(thresholds(p)); });
  m.def("f_landscape", &f_landscape, py::arg("c"), py::arg("rho"), py::arg("params"));
  m.def("f_max", [](const ProblemParams& p, double c) { return f_max(make_landscape(p), c).value; });
  m.def("scalar_path_max", &scalar_path_max, py::arg("dim"));

  m.def(
      "estimate_suite_json",
      [](const std::string& kind, const std::vector<double>& eps, int dim) {
        EstimateOptions o;
        o.dim = dim;
        const BubbleKind k = kind == "truncated" ? BubbleKind::Truncated : BubbleKind::Cutoff;
        if (kind != "cutoff" && kind != "truncated") throw std::invalid_argument("kind must be cutoff or truncated");
        return as_json(estimate_suite(k, eps, o));
      },
      py::arg("kind"), py::arg("eps"), py::arg("dim") = 3);
  m.def(
      "cutoff_bubble",
      [](double eps, const std::shared_ptr<Grid>& g) { return bubble(BubbleSpec{eps, 1.0, 2.0}, g); },
      py::arg("eps"), py::arg("grid"));

  m.def(
      "random_corpus",
      [](const std::shared_ptr<Grid>& g, std::size_t count, std::uint64_t seed) {
        CorpusSpec s;
        s.count = count;
        s.seed = seed;
        return random_corpus(g, s);
      },
      py::arg("grid"), py::arg("count") = 100, py::arg("seed") = 20240601);

  // Solvers release the GIL: they touch no Python state.
  m.def(
      "local_minimize_json",
      [](const ProblemParams& p, const std::shared_ptr<Grid>& g, const std::string& cfg) {
        const SolveConfig c = config_from(cfg);
        py::gil_scoped_release nogil;
        return as_json(local_minimize(p, g, c));
      },
      py::arg("params"), py::arg("grid"), py::arg("config") = "");
  m.def(
      "ground_state_level_json",
      [](const ProblemParams& p, const std::shared_ptr<Grid>& g, const std::string& cfg) {
        const SolveConfig c = config_from(cfg);
        py::gil_scoped_release nogil;
        return as_json(ground_state_level(p, g, c));
      },
      py::arg("params"), py::arg("grid"), py::arg("config") = "");
  m.def(
      "path_energy_bound_json",
      [](const ProblemParams& p, double eps) {
        PathOptions o;
        o.eps = eps;
        return as_json(path_energy_bound(p, nullptr, PathFamily::DilatedTruncated, o));
      },
      py::arg("params"), py::arg("eps") = 1e-4);
  m.def("nonexistence_rhs", &nonexistence_rhs, py::arg("u"), py::arg("params"));

  m.def("verify_report_json", [](const std::string& report) {
    const SolveReport r = io::report_from_json(io::Json::parse(report));
    io::Json out = io::Json::array();
    for (const auto& v : verify_battery(r)) out.push_back(io::to_json(v));
    return out.dump();
  });
  m.def("linf_decay_json", [](const RadialField& u) { return as_json(check_linf_decay(u)); });
}
