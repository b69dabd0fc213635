// Thin python bindings over the C++ core; all logic lives in the library.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "mwsrpdt/aco.hpp"
#include "mwsrpdt/bench.hpp"
#include "mwsrpdt/constructive.hpp"
#include "mwsrpdt/errors.hpp"
#include "mwsrpdt/instances.hpp"
#include "mwsrpdt/mip_export.hpp"
#include "mwsrpdt/oracle.hpp"
#include "mwsrpdt/types.hpp"
#include "mwsrpdt/validate.hpp"

namespace py = pybind11;
using namespace mwsrpdt;

PYBIND11_MODULE(_mwsrpdt, m) {
  m.doc() = "Multiperiod workforce scheduling and routing toolkit";
  m.attr("TIME_EPS") = kTimeEps;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidConfigError>(m, "InvalidConfigError", base);
  py::register_exception<InvalidInstanceError>(m, "InvalidInstanceError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<EmptySolutionError>(m, "EmptySolutionError", base);
  py::register_exception<StalledDayError>(m, "StalledDayError", base);
  py::register_exception<BudgetExceededError>(m, "BudgetExceededError", base);
  py::register_exception<InfeasibleInputError>(m, "InfeasibleInputError", base);
  py::register_exception<IoError>(m, "IoError", base);

  py::class_<TaskRef>(m, "TaskRef")
      .def(py::init<>())
      .def(py::init([](int customer, int task) { return TaskRef{customer, task}; }),
           py::arg("customer"), py::arg("task"))
      .def_readwrite("customer", &TaskRef::customer)
      .def_readwrite("task", &TaskRef::task)
      .def("__eq__", [](const TaskRef& a, const TaskRef& b) { return a == b; })
      .def("__hash__", [](const TaskRef& r) { return py::hash(py::make_tuple(r.customer, r.task)); })
      .def("__repr__", [](const TaskRef& r) {
        return "TaskRef(" + std::to_string(r.customer) + ", " + std::to_string(r.task) + ")";
      });

  py::class_<Visit>(m, "Visit")
      .def_readwrite("team", &Visit::team)
      .def_readwrite("day", &Visit::day)
      .def_readwrite("task", &Visit::task)
      .def_readwrite("start", &Visit::start)
      .def_readwrite("end", &Visit::end)
      .def("__eq__", [](const Visit& a, const Visit& b) { return a == b; })
      .def("__repr__", [](const Visit& v) {
        std::ostringstream out;
        out << "Visit(team=" << v.team << ", day=" << v.day << ", task=(" << v.task.customer
            << ", " << v.task.task << "), start=" << v.start << ", end=" << v.end << ")";
        return out.str();
      });

  py::class_<Solution>(m, "Solution")
      .def(py::init<>())
      .def_readwrite("visits", &Solution::visits)
      .def_readwrite("days", &Solution::days)
      .def_readwrite("last_moment", &Solution::last_moment)
      .def("__eq__", [](const Solution& a, const Solution& b) { return a == b; });

  py::class_<ObjectiveValue>(m, "ObjectiveValue")
      .def_readonly("days", &ObjectiveValue::days)
      .def_readonly("last_moment", &ObjectiveValue::last_moment)
      .def_readonly("fractional", &ObjectiveValue::fractional)
      .def("__repr__", [](const ObjectiveValue& o) {
        std::ostringstream out;
        out << "ObjectiveValue(days=" << o.days << ", last_moment=" << o.last_moment
            << ", fractional=" << o.fractional << ")";
        return out.str();
      });

  py::class_<Instance>(m, "Instance")
      .def_readonly("n", &Instance::n)
      .def_readonly("num_teams", &Instance::num_teams)
      .def_readonly("day_length", &Instance::day_length)
      .def_readonly("seed", &Instance::seed)
      .def_property_readonly("type", [](const Instance& inst) { return to_string(inst.type); })
      .def("task_count", &Instance::task_count)
      .def("task_time",
           [](const Instance& inst, int team, int customer, int task) {
             return inst.task_time(team, {customer, task});
           },
           py::arg("team"), py::arg("customer"), py::arg("task"),
           "Duration in hours, or None when the team cannot execute the task")
      .def("travel_time", &Instance::travel_time, py::arg("u"), py::arg("v"))
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& inst) {
        std::ostringstream out;
        out << "Instance(type=" << to_string(inst.type) << ", n=" << inst.n << ", teams="
            << inst.num_teams << ", tasks=" << inst.task_count() << ", seed=" << inst.seed << ")";
        return out.str();
      });

  py::class_<Violation>(m, "Violation")
      .def_property_readonly("code", [](const Violation& v) { return to_string(v.code); })
      .def_readonly("team", &Violation::team)
      .def_readonly("day", &Violation::day)
      .def_readonly("task", &Violation::task)
      .def_readonly("detail", &Violation::detail)
      .def("__repr__", [](const Violation& v) { return to_string(v.code) + ": " + v.detail; });

  py::class_<FeasibilityReport>(m, "FeasibilityReport")
      .def_readonly("ok", &FeasibilityReport::ok)
      .def_readonly("violations", &FeasibilityReport::violations)
      .def("__bool__", [](const FeasibilityReport& r) { return r.ok; });

  py::class_<AcoParams>(m, "AcoParams")
      .def(py::init<>())
      .def_static("defaults",
                  [](const std::string& algo) {
                    return AcoParams::defaults(aco_variant_from_string(algo));
                  },
                  py::arg("algo"), "Tuned defaults for 'as', 'mmas', or 'acs'")
      .def_property("variant",
                    [](const AcoParams& p) { return to_string(p.variant); },
                    [](AcoParams& p, const std::string& s) { p.variant = aco_variant_from_string(s); })
      .def_property("encoding",
                    [](const AcoParams& p) { return to_string(p.encoding); },
                    [](AcoParams& p, const std::string& s) { p.encoding = component_encoding_from_string(s); })
      .def_readwrite("alpha", &AcoParams::alpha)
      .def_readwrite("beta", &AcoParams::beta)
      .def_readwrite("rho", &AcoParams::rho)
      .def_readwrite("phi", &AcoParams::phi)
      .def_readwrite("q0", &AcoParams::q0)
      .def_readwrite("Q", &AcoParams::Q)
      .def_readwrite("tau0", &AcoParams::tau0)
      .def_readwrite("tau_min", &AcoParams::tau_min)
      .def_readwrite("tau_max", &AcoParams::tau_max)
      .def_readwrite("num_ants", &AcoParams::num_ants)
      .def_readwrite("max_iterations", &AcoParams::max_iterations)
      .def_readwrite("seed", &AcoParams::seed)
      .def_readwrite("deposit_global_best", &AcoParams::deposit_global_best);

  py::class_<HistoryEntry>(m, "HistoryEntry")
      .def_readonly("iteration", &HistoryEntry::iteration)
      .def_readonly("best_days", &HistoryEntry::best_days)
      .def_readonly("best_fprime", &HistoryEntry::best_fprime);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("best", &RunResult::best)
      .def_readonly("best_objective", &RunResult::best_objective)
      .def_readonly("history", &RunResult::history);

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("optimal", &OracleResult::optimal)
      .def_readonly("solution", &OracleResult::solution)
      .def_readonly("nodes_explored", &OracleResult::nodes_explored);

  py::class_<ModelStats>(m, "ModelStats")
      .def_readonly("num_binary", &ModelStats::num_binary)
      .def_readonly("num_continuous", &ModelStats::num_continuous)
      .def_readonly("num_general_integer", &ModelStats::num_general_integer)
      .def_readonly("num_constraints", &ModelStats::num_constraints)
      .def_readonly("horizon", &ModelStats::horizon);

  m.def("generate",
        [](int n, const std::string& type, std::uint64_t seed) {
          return generate(GeneratorConfig{n, instance_type_from_string(type), seed});
        },
        py::arg("n"), py::arg("type"), py::arg("seed") = 0,
        "Generate a deterministic random instance (types 'A', 'B', 'C')");
  m.def("load_instance", &load_instance, py::arg("path"));
  m.def("save_instance", &save_instance, py::arg("inst"), py::arg("path"));
  m.def("instance_to_string", [](const Instance& inst) {
    std::ostringstream out;
    write_instance(inst, out);
    return std::move(out).str();
  });
  m.def("instance_from_string", [](const std::string& text) {
    std::istringstream in(text);
    return read_instance(in);
  });

  m.def("construct_greedy", &construct_greedy, py::arg("inst"),
        py::call_guard<py::gil_scoped_release>(),
        "Discrete-event constructive heuristic with earliest-completion choice");
  m.def("run",
        [](const Instance& inst, const AcoParams& params) { return run(inst, params); },
        py::arg("inst"), py::arg("params"), py::call_guard<py::gil_scoped_release>(),
        "Run the configured ant colony variant and return the best schedule");
  m.def("solve_exact",
        [](const Instance& inst, int max_tasks, std::uint64_t max_nodes, double time_limit) {
          OracleLimits limits;
          limits.max_tasks = max_tasks;
          limits.max_nodes = max_nodes;
          limits.wall_clock_seconds = time_limit;
          return solve_exact(inst, limits);
        },
        py::arg("inst"), py::arg("max_tasks") = OracleLimits{}.max_tasks,
        py::arg("max_nodes") = OracleLimits{}.max_nodes, py::arg("time_limit") = 0.0,
        py::call_guard<py::gil_scoped_release>(),
        "Exhaustive optimum for tiny instances");

  m.def("evaluate", &evaluate, py::arg("inst"), py::arg("sol"));
  m.def("check_feasible", &check_feasible, py::arg("inst"), py::arg("sol"));
  m.def("recompute_objective", &recompute_objective, py::arg("inst"), py::arg("sol"));
  m.def("load_solution", &load_solution, py::arg("path"));
  m.def("save_solution", &save_solution, py::arg("sol"), py::arg("path"));
  m.def("solution_to_string", [](const Solution& sol) {
    std::ostringstream out;
    write_solution(sol, out);
    return std::move(out).str();
  });
  m.def("solution_from_string", [](const std::string& text) {
    std::istringstream in(text);
    return read_solution(in);
  });

  m.def("emit_model",
        [](const Instance& inst, int horizon) {
          std::ostringstream out;
          const ModelStats stats = emit_model(inst, horizon, out);
          return py::make_tuple(std::move(out).str(), stats);
        },
        py::arg("inst"), py::arg("horizon"), "Returns (lp_text, stats)");
}
