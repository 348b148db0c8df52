#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "toptw/acs.hpp"
#include "toptw/bench.hpp"
#include "toptw/errors.hpp"
#include "toptw/instance.hpp"
#include "toptw/oracle.hpp"

namespace py = pybind11;
using namespace toptw;

PYBIND11_MODULE(_toptw, m) {
  m.doc() = "Ant Colony System for the Team Orienteering Problem with Time Windows";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BoundsError>(m, "BoundsError", PyExc_IndexError);
  py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_RuntimeError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);

  py::class_<Node>(m, "Node")
      .def_readonly("id", &Node::id)
      .def_readonly("x", &Node::x)
      .def_readonly("y", &Node::y)
      .def_readonly("prize", &Node::prize)
      .def_readonly("window_open", &Node::window_open)
      .def_readonly("window_close", &Node::window_close)
      .def_readonly("service_time", &Node::service_time)
      .def("__repr__", [](const Node& n) {
        return "Node(id=" + std::to_string(n.id) + ", prize=" + std::to_string(n.prize) + ")";
      });

  py::class_<Instance>(m, "Instance")
      .def_property_readonly("name", &Instance::name)
      .def_property_readonly("nodes", &Instance::nodes)
      .def_property_readonly("horizon", &Instance::horizon)
      .def_property_readonly("customer_count", &Instance::customer_count)
      .def_property_readonly("reachable_count", &Instance::reachable_count)
      .def_property_readonly("total_prize", &Instance::total_prize)
      .def("node", &Instance::node, py::return_value_policy::copy)
      .def("travel_time", &Instance::travel_time)
      .def("reachable", &Instance::reachable)
      .def("__len__", &Instance::size)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) {
        return "Instance('" + i.name() + "', customers=" + std::to_string(i.customer_count()) + ")";
      });

  m.def("parse_solomon", &parse_solomon, py::arg("text"), py::arg("node_limit") = py::none());
  m.def("parse_cordeau", &parse_cordeau, py::arg("text"), py::arg("name"));
  m.def(
      "load_instance",
      [](const std::filesystem::path& path, const std::string& format,
         std::optional<int> node_limit) {
        return load_instance(path, parse_format(format), node_limit);
      },
      py::arg("path"), py::arg("format") = "solomon", py::arg("node_limit") = py::none());
  m.def("write_solomon", &write_solomon, py::arg("instance"));

  py::class_<LocalSearchParams>(m, "LocalSearchParams")
      .def(py::init<>())
      .def_readwrite("ls_init", &LocalSearchParams::ls_init)
      .def_readwrite("ls_wnd", &LocalSearchParams::ls_wnd)
      .def_readwrite("ls_step", &LocalSearchParams::ls_step)
      .def_readwrite("ni_cap", &LocalSearchParams::ni_cap);

  py::class_<AcsParams>(m, "AcsParams")
      .def(py::init<>())
      .def_readwrite("rho", &AcsParams::rho)
      .def_readwrite("psi", &AcsParams::psi)
      .def_readwrite("n_ants", &AcsParams::n_ants)
      .def_readwrite("nhat", &AcsParams::nhat)
      .def_readwrite("m", &AcsParams::m)
      .def_readwrite("time_limit", &AcsParams::time_limit)
      .def_readwrite("seed", &AcsParams::seed)
      .def_readwrite("ls", &AcsParams::ls)
      .def_readwrite("max_generations", &AcsParams::max_generations)
      .def_readwrite("target_prize", &AcsParams::target_prize)
      .def("validate", &AcsParams::validate);

  py::class_<RunReport>(m, "RunReport")
      .def_readonly("instance", &RunReport::instance)
      .def_readonly("m", &RunReport::m)
      .def_readonly("seed", &RunReport::seed)
      .def_readonly("prize", &RunReport::prize)
      .def_readonly("nodes", &RunReport::nodes)
      .def_readonly("found_at", &RunReport::found_at)
      .def_readonly("elapsed", &RunReport::elapsed)
      .def_readonly("generations", &RunReport::generations)
      .def("csv_row", [](const RunReport& r, int run) { return csv_row(r, run); },
           py::arg("run") = 0);

  py::class_<RouteSet>(m, "RouteSet")
      .def_readonly("routes", &RouteSet::routes)
      .def_readonly("total_prize", &RouteSet::total_prize)
      .def_property_readonly("customer_count", &RouteSet::customer_count);

  py::class_<SolveResult>(m, "SolveResult")
      .def_readonly("report", &SolveResult::report)
      .def_readonly("routes", &SolveResult::routes)
      .def_property_readonly("tour", [](const SolveResult& r) { return r.best.tour.order; });

  m.def(
      "solve",
      [](const Instance& instance, const AcsParams& params) {
        py::gil_scoped_release release;
        return solve(instance, params);
      },
      py::arg("instance"), py::arg("params") = AcsParams{});

  py::class_<ExactResult>(m, "ExactResult")
      .def_readonly("optimal_prize", &ExactResult::optimal_prize)
      .def_readonly("optimal_routes", &ExactResult::optimal_routes)
      .def_readonly("explored", &ExactResult::explored);

  m.def("brute_force", &brute_force, py::arg("instance"), py::arg("m"),
        py::arg("customer_cap") = 9, py::call_guard<py::gil_scoped_release>());

  py::class_<ValidationResult>(m, "ValidationResult")
      .def_readonly("ok", &ValidationResult::ok)
      .def_readonly("prize", &ValidationResult::prize)
      .def_readonly("message", &ValidationResult::message)
      .def("__bool__", [](const ValidationResult& r) { return r.ok; });

  m.def("write_solution", &write_solution, py::arg("instance"), py::arg("routes"));
  m.def(
      "validate_solution",
      [](const Instance& instance, const std::string& text, std::optional<int> fleet) {
        return validate_solution(instance, parse_solution(text), fleet);
      },
      py::arg("instance"), py::arg("solution"), py::arg("m") = py::none());
}
