#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crowdsim/cli.hpp"
#include "crowdsim/policies.hpp"
#include "crowdsim/report.hpp"
#include "crowdsim/run.hpp"
#include "crowdsim/scenario.hpp"

namespace py = pybind11;
using namespace crowdsim;

PYBIND11_MODULE(_crowdsim, m) {
  m.doc() = "Agent-based simulator of knowledge generation by IT-mediated crowds.";

  static py::exception<ScenarioError> scenario_error(m, "ScenarioError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ScenarioError& e) {
      PyErr_SetObject(scenario_error.ptr(), py::make_tuple(e.what(), e.errors()).ptr());
    }
  });
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);

  py::enum_<ItForm>(m, "ItForm")
      .value("EPISODIC", ItForm::Episodic)
      .value("COLLABORATIVE", ItForm::Collaborative);

  py::enum_<EventKind>(m, "EventKind")
      .value("PARTICIPATE", EventKind::Participate)
      .value("ASSIGN", EventKind::Assign)
      .value("SUBMIT", EventKind::Submit)
      .value("FLUSH", EventKind::Flush)
      .value("COMPLETE", EventKind::Complete);

  py::class_<Agent>(m, "Agent")
      .def_readonly("id", &Agent::id)
      .def_readonly("motivation", &Agent::motivation)
      .def_readonly("success_rate", &Agent::success_rate)
      .def_readonly("attempts_made", &Agent::attempts_made)
      .def("__repr__", [](const Agent& a) {
        return "Agent(id=" + std::to_string(a.id) + ", motivation=" + std::to_string(a.motivation) +
               ", success_rate=" + std::to_string(a.success_rate) + ")";
      });

  py::class_<Task>(m, "Task")
      .def_readonly("signifier", &Task::signifier)
      .def_readonly("difficulty", &Task::difficulty)
      .def_readonly("cost", &Task::cost)
      .def_readwrite("completion", &Task::completion)
      .def_readonly("attempts", &Task::attempts);

  py::class_<Submission>(m, "Submission")
      .def(py::init<Signifier, AgentId, std::uint64_t, double>(), py::arg("task_signifier"),
           py::arg("agent_id"), py::arg("tick"), py::arg("completion_level"))
      .def_readonly("task_signifier", &Submission::task_signifier)
      .def_readonly("agent_id", &Submission::agent_id)
      .def_readonly("tick", &Submission::tick)
      .def_readonly("completion_level", &Submission::completion_level)
      .def(py::self == py::self);

  py::class_<FilterPolicy>(m, "FilterPolicy")
      .def_static("pass_through", &FilterPolicy::pass_through)
      .def_static("threshold_at", &FilterPolicy::threshold_at, py::arg("level"))
      .def_static("best_per_task", &FilterPolicy::best_per_task);

  m.def("make_agent", &make_agent, py::arg("id"), py::arg("motivation"), py::arg("success_rate"));
  m.def("make_task", &make_task, py::arg("signifier"), py::arg("difficulty"), py::arg("cost"));
  m.def("is_complete", py::overload_cast<const Task&, double>(&is_complete), py::arg("task"),
        py::arg("threshold"));
  m.def(
      "filter_submissions",
      [](const FilterPolicy& policy, const std::vector<Submission>& batch, double threshold) {
        return filter_submissions(policy, batch, threshold);
      },
      py::arg("policy"), py::arg("batch"), py::arg("completion_threshold") = 1.0);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("ticks", &Scenario::ticks)
      .def_readonly("update_period", &Scenario::update_period)
      .def_readonly("completion_threshold", &Scenario::completion_threshold)
      .def_readonly("noise_epsilon", &Scenario::noise_epsilon)
      .def_readonly("early_stop", &Scenario::early_stop)
      .def_readonly("form", &Scenario::form)
      .def("to_json", &emit_scenario)
      .def(py::self == py::self);

  m.def("parse_scenario", &parse_scenario, py::arg("text"));
  m.def("validate", &validate, py::arg("scenario"));
  m.def("load_scenario", &load_scenario, py::arg("text"));

  py::class_<Report>(m, "Report")
      .def_readonly("seed", &Report::seed)
      .def_readonly("ticks_elapsed", &Report::ticks_elapsed)
      .def_readonly("number_of_submissions", &Report::number_of_submissions)
      .def_readonly("number_of_submissions_completed", &Report::number_of_submissions_completed)
      .def_readonly("accepted_submissions", &Report::accepted_submissions)
      .def_readonly("tasks_completed", &Report::tasks_completed)
      .def_readonly("total_cost", &Report::total_cost)
      .def_readonly("mean_task_completion", &Report::mean_task_completion)
      .def(
          "emit", [](const Report& r, const std::string& format) { return emit_report(r, format); },
          py::arg("format") = "json")
      .def(py::self == py::self);

  m.def("parse_report_json", &parse_report_json, py::arg("text"));

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("report", &RunResult::report)
      .def_readonly("final_tasks", &RunResult::final_tasks)
      .def_property_readonly("trace_csv", [](const RunResult& r) -> std::optional<std::string> {
        if (!r.trace) return std::nullopt;
        return emit_trace(*r.trace);
      });

  m.def(
      "run",
      [](const Scenario& scenario, std::uint64_t seed, bool trace) {
        RunOptions options;
        options.collect_trace = trace;
        py::gil_scoped_release release;
        return run(scenario, seed, options);
      },
      py::arg("scenario"), py::arg("seed"), py::arg("trace") = false);

  m.def(
      "sweep",
      [](const Scenario& scenario, std::uint64_t lo, std::uint64_t hi, unsigned parallelism,
         const std::string& format) {
        py::gil_scoped_release release;
        return cli::sweep(scenario, cli::SeedRange{lo, hi}, parallelism, format);
      },
      py::arg("scenario"), py::arg("lo"), py::arg("hi"), py::arg("parallelism") = 1,
      py::arg("format") = "csv");
}
