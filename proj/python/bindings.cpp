#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "shepwm/dclink.hpp"
#include "shepwm/error.hpp"
#include "shepwm/harmonics.hpp"
#include "shepwm/optimizer.hpp"
#include "shepwm/pattern.hpp"
#include "shepwm/she.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace pybind11::literals;
using namespace shepwm;

PYBIND11_MODULE(_shepwm, m) {
  m.doc() = "Selective harmonic elimination PWM for cascaded H-bridge inverters";

  py::register_exception<Error>(m, "ShepwmError", PyExc_ValueError);

  py::class_<SwitchingPattern>(m, "SwitchingPattern")
      .def(py::init([](std::vector<double> angles, std::vector<int> signs, int cells, double vdc) {
             return SwitchingPattern{std::move(angles), std::move(signs), cells, vdc};
           }),
           "angles"_a, "signs"_a, "cells"_a = 1, "vdc_per_cell"_a = 1.0)
      .def_readwrite("angles", &SwitchingPattern::angles)
      .def_readwrite("signs", &SwitchingPattern::signs)
      .def_readwrite("cells", &SwitchingPattern::cells)
      .def_readwrite("vdc_per_cell", &SwitchingPattern::vdc_per_cell)
      .def("__eq__", [](const SwitchingPattern& a, const SwitchingPattern& b) { return a == b; })
      .def("__repr__", [](const SwitchingPattern& p) {
        std::ostringstream os;
        os << "SwitchingPattern(K=" << p.size() << ", cells=" << p.cells << ", vdc_per_cell=" << p.vdc_per_cell << ")";
        return os.str();
      });

  m.def("validate", [](const SwitchingPattern& p) { return validate(p); }, "pattern"_a,
        "Return the pattern unchanged or raise ShepwmError");
  m.def("synthesize", [](const SwitchingPattern& p, std::size_t n) { return synthesize(p, n).samples; },
        "pattern"_a, "n_samples"_a, "One period of samples at phase 2*pi*i/N");
  m.def("level_trajectory", &level_trajectory, "pattern"_a);

  py::class_<HarmonicSpectrum>(m, "HarmonicSpectrum")
      .def_readonly("magnitudes", &HarmonicSpectrum::magnitudes)
      .def_readonly("max_order", &HarmonicSpectrum::max_order)
      .def_readonly("base_volts", &HarmonicSpectrum::base_volts)
      .def("magnitude", &HarmonicSpectrum::magnitude, "order"_a);

  m.def("analytic_harmonic", &analytic_harmonic, "pattern"_a, "n"_a);
  m.def("segment_integral_harmonic", &segment_integral_harmonic, "pattern"_a, "n"_a);
  m.def("analytic_spectrum", &analytic_spectrum, "pattern"_a, "max_order"_a);
  m.def("dft_spectrum",
        [](const std::vector<double>& samples, int max_order, double base) {
          return dft_spectrum(WaveformSamples{samples, 50.0}, max_order, base);
        },
        "samples"_a, "max_order"_a, "base_volts"_a = 0.0);
  m.def("thd", &thd, "spectrum"_a, "max_order"_a);
  m.def("pattern_thd", &pattern_thd, "pattern"_a, "max_order"_a = 49);

  py::class_<PsoConfig>(m, "PsoConfig")
      .def(py::init<>())
      .def_readwrite("swarm_size", &PsoConfig::swarm_size)
      .def_readwrite("iterations", &PsoConfig::iterations)
      .def_readwrite("inertia_start", &PsoConfig::inertia_start)
      .def_readwrite("inertia_end", &PsoConfig::inertia_end)
      .def_readwrite("cognitive", &PsoConfig::cognitive)
      .def_readwrite("social", &PsoConfig::social)
      .def_readwrite("velocity_clamp_fraction", &PsoConfig::velocity_clamp_fraction)
      .def_readwrite("restarts", &PsoConfig::restarts)
      .def_readwrite("seed", &PsoConfig::seed);

  py::class_<OptimizerResult>(m, "OptimizerResult")
      .def_readonly("best_position", &OptimizerResult::best_position)
      .def_readonly("best_value", &OptimizerResult::best_value)
      .def_readonly("evaluations", &OptimizerResult::evaluations)
      .def_readonly("converged_iteration", &OptimizerResult::converged_iteration)
      .def_readonly("trace", &OptimizerResult::trace)
      .def_readonly("restart_positions", &OptimizerResult::restart_positions);

  m.def("minimize",
        [](const std::function<double(std::vector<double>)>& f,
           const std::vector<std::pair<double, double>>& bounds, const PsoConfig& cfg) {
          std::vector<Bound> box;
          for (const auto& [lo, hi] : bounds) box.push_back({lo, hi});
          return minimize([&f](std::span<const double> x) { return f({x.begin(), x.end()}); }, box, cfg);
        },
        "objective"_a, "bounds"_a, "config"_a, "Bound-constrained global-best PSO");

  py::class_<SheProblem>(m, "SheProblem")
      .def(py::init<>())
      .def_readwrite("target_m", &SheProblem::target_m)
      .def_readwrite("eliminate_orders", &SheProblem::eliminate_orders)
      .def_readwrite("cells", &SheProblem::cells)
      .def_readwrite("angles_per_cell", &SheProblem::angles_per_cell)
      .def_readwrite("sign_pattern", &SheProblem::sign_pattern)
      .def_readwrite("weight_fundamental", &SheProblem::weight_fundamental)
      .def_readwrite("weight_harmonics", &SheProblem::weight_harmonics)
      .def_readwrite("vdc_per_cell", &SheProblem::vdc_per_cell)
      .def_readwrite("feasibility_threshold", &SheProblem::feasibility_threshold)
      .def_readwrite("refine", &SheProblem::refine);

  py::class_<Solution>(m, "Solution")
      .def_readonly("pattern", &Solution::pattern)
      .def_readonly("target_m", &Solution::target_m)
      .def_readonly("cost", &Solution::cost)
      .def_readonly("fundamental_pu", &Solution::fundamental_pu)
      .def_readonly("residuals_pu", &Solution::residuals_pu)
      .def_readonly("feasible", &Solution::feasible)
      .def_readonly("refined", &Solution::refined)
      .def_readonly("diagnostics", &Solution::diagnostics);

  m.def("cost", [](const std::vector<double>& angles, const SheProblem& p) { return cost(angles, p); },
        "angles"_a, "problem"_a);
  m.def("solve", &solve, "problem"_a, "pso"_a, py::call_guard<py::gil_scoped_release>());
  m.def("sweep",
        [](const SheProblem& p, const std::vector<double>& m_values, const PsoConfig& cfg, unsigned threads) {
          return sweep(p, m_values, cfg, threads);
        },
        "problem"_a, "m_values"_a, "pso"_a, "threads"_a = 0, py::call_guard<py::gil_scoped_release>());

  py::enum_<Method>(m, "Method")
      .value("conventional", Method::Conventional)
      .value("proposed", Method::Proposed);

  py::class_<LookupRow>(m, "LookupRow")
      .def_readonly("v_pu", &LookupRow::v_pu)
      .def_readonly("method", &LookupRow::method)
      .def_readonly("duty", &LookupRow::duty)
      .def_readonly("thd_pct", &LookupRow::thd_pct)
      .def_readonly("feasible", &LookupRow::feasible)
      .def_readonly("fundamental_v", &LookupRow::fundamental_v)
      .def_readonly("angles", &LookupRow::angles);

  py::class_<LookupTable>(m, "LookupTable")
      .def_readonly("rows", &LookupTable::rows)
      .def_readonly("base_vdc_per_cell", &LookupTable::base_vdc_per_cell)
      .def_readonly("cells", &LookupTable::cells)
      .def_readonly("thd_max_order", &LookupTable::thd_max_order)
      .def("to_csv", [](const LookupTable& t) {
        std::ostringstream os;
        write_lookup_csv(os, t);
        return os.str();
      })
      .def("to_json", &lookup_to_json);

  py::class_<ComparisonRow>(m, "ComparisonRow")
      .def_readonly("v_pu", &ComparisonRow::v_pu)
      .def_readonly("conventional", &ComparisonRow::conventional)
      .def_readonly("proposed", &ComparisonRow::proposed)
      .def_readonly("improvement_pct", &ComparisonRow::improvement_pct);

  py::class_<DcLinkOptions>(m, "DcLinkOptions")
      .def(py::init<>())
      .def_readwrite("base_m", &DcLinkOptions::base_m)
      .def_readwrite("thd_max_order", &DcLinkOptions::thd_max_order)
      .def_readwrite("require_feasible_base", &DcLinkOptions::require_feasible_base)
      .def_readwrite("threads", &DcLinkOptions::threads);

  m.def("duty_for_target", &duty_for_target, "v_pu"_a, "base_m"_a = 1.0);
  m.def("scale_pattern", &scale_pattern, "pattern"_a, "duty"_a);
  m.def("build_lookup",
        [](const std::vector<double>& grid, const PsoConfig& cfg, const SheProblem& p, const DcLinkOptions& o) {
          return build_lookup(grid, cfg, p, o);
        },
        "v_pu_grid"_a, "pso"_a, "problem"_a, "options"_a = DcLinkOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("compare_methods",
        [](const std::vector<double>& grid, const PsoConfig& cfg, const SheProblem& p, const DcLinkOptions& o) {
          return compare_methods(grid, cfg, p, o);
        },
        "v_pu_grid"_a, "pso"_a, "problem"_a, "options"_a = DcLinkOptions{},
        py::call_guard<py::gil_scoped_release>());

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
