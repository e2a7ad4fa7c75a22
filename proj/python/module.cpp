#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "bfn/commands.hpp"
#include "bfn/diagnostics.hpp"

namespace py = pybind11;
using namespace bfn;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Back-and-forth nudging source estimation for a 1D wave equation";

  py::register_exception<GridMismatchError>(m, "GridMismatchError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<ObserverGains>(m, "ObserverGains")
      .def(py::init<double, double>(), py::arg("gamma1") = 1.0, py::arg("gamma2") = 0.5)
      .def_readwrite("gamma1", &ObserverGains::gamma1)
      .def_readwrite("gamma2", &ObserverGains::gamma2);

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init<double, std::uint64_t>(), py::arg("level") = 0.0, py::arg("seed") = 1)
      .def_readwrite("level", &NoiseSpec::level)
      .def_readwrite("seed", &NoiseSpec::seed);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("omega", &RunConfig::omega)
      .def_readwrite("T", &RunConfig::horizon)
      .def_readwrite("gains", &RunConfig::gains)
      .def_readwrite("n_cells", &RunConfig::n_cells)
      .def_readwrite("cfl", &RunConfig::cfl)
      .def_readwrite("iterations", &RunConfig::n_iterations)
      .def_readwrite("noise", &RunConfig::noise)
      .def("set_source", [](RunConfig& c, const std::string& text) { c.source = parse_source_spec(text); })
      .def("validate", &RunConfig::validate)
      .def("steps_per_pass", [](const RunConfig& c) { return c.grids().time.steps_per_pass; })
      .def("dt", [](const RunConfig& c) { return c.grids().time.dt; });

  m.def("load_config",
        [](std::optional<std::filesystem::path> file, const std::vector<std::string>& overrides) {
          return load_config(file, overrides).run;
        },
        py::arg("file") = py::none(), py::arg("overrides") = std::vector<std::string>{});

  m.def("synthesize", [](const RunConfig& c) {
    const Grids g = c.grids();
    return synthesize_measurement(c.source.build(g.space), c.omega, g).samples;
  }, "Clean boundary measurement y at t = m dt, m = 0..M.");

  m.def("estimate", [](const RunConfig& c) {
    const auto outcome = run_estimate(c);
    py::dict out;
    std::vector<double> errors, lyap, increments;
    for (const auto& it : outcome.run.iterations) {
      errors.push_back(it.l2_error.value_or(std::nan("")));
      lyap.push_back(it.lyapunov);
      increments.push_back(it.increment);
    }
    const Grid1D& space = c.grids().space;
    out["x"] = space.nodes();
    out["q_true"] = outcome.truth.samples();
    out["q_hat"] = outcome.run.iterations.back().estimate;
    out["l2_error"] = errors;
    out["lyapunov"] = lyap;
    out["increment"] = increments;
    out["warnings"] = outcome.run.warnings;
    return out;
  }, "Runs synthesize -> (noise) -> back-and-forth estimation.");

  m.def("l2_error", [](const std::vector<double>& a, const std::vector<double>& b) {
    return l2_error(a, b);
  });
}
