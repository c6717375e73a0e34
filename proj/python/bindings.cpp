#include <fstream>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dropsim/scenario.hpp"
#include "dropsim/simulation.hpp"
#include "dropsim/telemetry.hpp"

namespace py = pybind11;
using namespace dropsim;

PYBIND11_MODULE(_dropsim, m) {
    m.doc() = "Packet-level TCP drop-rate simulator";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ParseError>(m, "ScenarioError", PyExc_ValueError);
    py::register_exception<SimulationError>(m, "SimulationFailure", PyExc_RuntimeError);

    py::class_<ExpOnOffConfig>(m, "ExpOnOffConfig")
        .def(py::init<>())
        .def_readwrite("packet_size", &ExpOnOffConfig::packet_size)
        .def_readwrite("rate", &ExpOnOffConfig::rate)
        .def_readwrite("burst_time", &ExpOnOffConfig::burst_time)
        .def_readwrite("idle_time", &ExpOnOffConfig::idle_time)
        .def_readwrite("start_at", &ExpOnOffConfig::start_at)
        .def_readwrite("stop_at", &ExpOnOffConfig::stop_at);

    py::class_<LinkSpec>(m, "LinkSpec")
        .def_readwrite("from_node", &LinkSpec::from)
        .def_readwrite("to_node", &LinkSpec::to)
        .def_readwrite("bandwidth", &LinkSpec::bandwidth)
        .def_readwrite("delay", &LinkSpec::delay)
        .def_readwrite("limit", &LinkSpec::limit);

    py::class_<AgentSpec>(m, "AgentSpec")
        .def_readwrite("id", &AgentSpec::id)
        .def_readwrite("src", &AgentSpec::src)
        .def_readwrite("dst", &AgentSpec::dst)
        .def_readwrite("flow_id", &AgentSpec::flow_id)
        .def_readwrite("window", &AgentSpec::window);

    py::class_<AppSpec>(m, "AppSpec")
        .def_readwrite("agent", &AppSpec::agent)
        .def_readwrite("config", &AppSpec::cfg);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init<>())
        .def_readwrite("duration", &Scenario::duration)
        .def_readwrite("seed", &Scenario::seed)
        .def_readwrite("nodes", &Scenario::nodes)
        .def_readwrite("links", &Scenario::links)
        .def_readwrite("agents", &Scenario::agents)
        .def_readwrite("apps", &Scenario::apps)
        .def_readwrite("record_interval", &Scenario::record_interval)
        .def_readwrite("trace_file", &Scenario::trace_file)
        .def("__repr__", [](const Scenario& s) {
            std::ostringstream r;
            r << "<Scenario " << s.nodes.size() << " nodes, " << s.links.size()
              << " links, " << s.agents.size() << " agents, duration " << s.duration
              << "s>";
            return r.str();
        });

    py::class_<KindCounters>(m, "KindCounters")
        .def_readonly("created", &KindCounters::created)
        .def_readonly("received", &KindCounters::received)
        .def_readonly("dropped", &KindCounters::dropped)
        .def_readonly("buffered_end", &KindCounters::buffered_end)
        .def_readonly("inflight_end", &KindCounters::inflight_end);

    py::class_<FlowCounters>(m, "FlowCounters")
        .def_readonly("data", &FlowCounters::data)
        .def_readonly("acks", &FlowCounters::acks)
        .def_readonly("retransmitted", &FlowCounters::retransmitted)
        .def_readonly("bytes_received", &FlowCounters::bytes_received);

    py::class_<RunReport>(m, "RunReport")
        .def_readonly("flows", &RunReport::flows)
        .def_readonly("node_drops", &RunReport::node_drops)
        .def_readonly("total_drops", &RunReport::total_drops)
        .def_readonly("events_executed", &RunReport::events_executed)
        .def_readonly("wall_seconds", &RunReport::wall_seconds)
        .def_readonly("trace_lines", &RunReport::trace_lines)
        .def("conservation_holds", &RunReport::conservation_holds)
        .def("render", [](const RunReport& r) { return render_report(r); })
        .def("__repr__", [](const RunReport& r) {
            std::ostringstream s;
            s << "<RunReport " << r.flows.size() << " flows, " << r.total_drops
              << " drops>";
            return s.str();
        });

    py::class_<RunOutputs>(m, "RunOutputs")
        .def_readonly("report", &RunOutputs::report)
        .def_readonly("trace_path", &RunOutputs::trace_path)
        .def_readonly("plot_paths", &RunOutputs::plot_paths)
        .def_readonly("report_path", &RunOutputs::report_path);

    m.def("parse_scenario", &parse_scenario, py::arg("text"),
          "Parse and validate a scenario from text");
    m.def("load_scenario", &load_scenario, py::arg("path"),
          "Parse and validate a scenario file");
    m.def("render_scenario", &render_scenario, py::arg("scenario"),
          "Canonical text form; parse(render(s)) == s");
    m.def("validate_scenario", &validate_scenario, py::arg("scenario"));

    m.def(
        "run_scenario",
        [](const Scenario& s, const std::string& out_dir,
           std::optional<uint64_t> seed, bool write_files) {
            RunOptions opts;
            opts.out_dir = out_dir;
            opts.seed = seed;
            opts.write_files = write_files;
            return run_scenario(s, opts);
        },
        py::arg("scenario"), py::arg("out_dir") = ".", py::arg("seed") = py::none(),
        py::arg("write_files") = true,
        "Run a scenario; writes the trace, per-flow plot data, and report.txt");

    m.def(
        "report_from_trace",
        [](const std::string& path) {
            std::ifstream f(path);
            if (!f)
                throw SimulationError("cannot open trace file " + path);
            return report_from_trace(f);
        },
        py::arg("path"), "Recompute a RunReport from a trace file");
}
