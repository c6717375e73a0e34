#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dropsim/event_queue.hpp"
#include "dropsim/scenario.hpp"
#include "dropsim/tcp.hpp"
#include "dropsim/telemetry.hpp"
#include "dropsim/topology.hpp"
#include "dropsim/trace.hpp"
#include "dropsim/traffic.hpp"

namespace dropsim {

// Wires scheduler, topology, transport, traffic, and telemetry into one
// runnable instance. Everything runs on the single event loop; nothing
// here is shared across runs. Random streams are split deterministically:
// app i draws from (seed, 1+i), the RED queue of link l from
// (seed, 4096+l).
class Simulation {
public:
    explicit Simulation(uint64_t seed);
    Simulation(const Simulation&) = delete;
    Simulation& operator=(const Simulation&) = delete;

    NodeId add_node(const std::string& name);
    LinkId add_droptail_link(NodeId from, NodeId to, double bandwidth_bps, Seconds delay,
                             int limit);
    LinkId add_red_link(NodeId from, NodeId to, double bandwidth_bps, Seconds delay,
                        int limit, RedConfig cfg);
    TcpConn& add_agent(NodeId src, NodeId dst, int flow_id, TcpConfig cfg);
    ExpOnOff& add_expoo(int flow_id, ExpOnOffConfig cfg);

    void set_trace_stream(std::ostream* out) { trace_.set_stream(out); }
    void set_record_interval(Seconds interval) { record_interval_ = interval; }

    // Invoked by SimFinish after counters finalize and the trace flushes.
    std::function<void(Simulation&)> on_finish;

    // Runs to `duration` and returns the final report. SimFinish fires at
    // exactly `duration` and is the last event of the run.
    RunReport run(Seconds duration);

    uint64_t seed() const { return seed_; }
    EventQueue& events() { return events_; }
    Topology& topology() { return topo_; }
    TcpConn* conn_for_flow(int flow_id);
    TcpSink* sink_for_flow(int flow_id);
    const std::vector<ThroughputSample>& samples() const { return samples_; }
    std::vector<ThroughputSample> samples_for_flow(int flow_id) const;
    const RunReport& report() const { return report_; }

private:
    void inject(Packet&& pkt, NodeId at, Seconds now);
    void route_and_enqueue(Packet&& pkt, NodeId at, Seconds now);
    void enqueue_on_link(LinkId lid, Packet&& pkt, Seconds now);
    void start_transmission(LinkId lid, Seconds now);
    void on_arrival(LinkId lid, Packet pkt, Seconds now);
    void finish(Seconds now);
    KindCounters& counters_for(const Packet& pkt);

    uint64_t seed_;
    EventQueue events_;
    Topology topo_;
    PacketUidSource uids_;
    TraceWriter trace_;

    std::vector<std::unique_ptr<TcpConn>> conns_;
    std::vector<std::unique_ptr<TcpSink>> sinks_;
    std::map<std::pair<NodeId, int>, TcpConn*> conn_at_;
    std::map<std::pair<NodeId, int>, TcpSink*> sink_at_;
    std::map<int, TcpConn*> conn_by_flow_;
    std::map<int, TcpSink*> sink_by_flow_;
    std::vector<std::unique_ptr<ExpOnOff>> apps_;
    std::set<int> app_flows_;  // flows with a traffic source attached
    std::vector<RngStream> link_rngs_;

    Seconds record_interval_ = 0.0;
    std::vector<ThroughputSample> samples_;
    std::map<std::pair<int, int>, int64_t> wire_;  // (flow, is_data) -> packets on a link
    RunReport report_;
};

struct RunOptions {
    std::string out_dir = ".";
    std::optional<uint64_t> seed;  // overrides the scenario seed
    bool write_files = true;
};

struct RunOutputs {
    RunReport report;
    std::string trace_path;
    std::vector<std::pair<int, std::string>> plot_paths;  // flow id -> path
    std::string report_path;
};

// Builds a Simulation from a scenario, runs it, and writes the trace,
// one plot-data file per flow, and report.txt under out_dir.
RunOutputs run_scenario(const Scenario& s, const RunOptions& opts = {});

}  // namespace dropsim
