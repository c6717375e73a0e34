#include "dropsim/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace dropsim {

Simulation::Simulation(uint64_t seed) : seed_(seed) {}

NodeId Simulation::add_node(const std::string& name) {
    return topo_.add_node(name);
}

LinkId Simulation::add_droptail_link(NodeId from, NodeId to, double bandwidth_bps,
                                     Seconds delay, int limit) {
    LinkId id = topo_.add_link(from, to, bandwidth_bps, delay, make_droptail(limit));
    link_rngs_.emplace_back(seed_, 4096 + static_cast<uint64_t>(id));
    return id;
}

LinkId Simulation::add_red_link(NodeId from, NodeId to, double bandwidth_bps, Seconds delay,
                                int limit, RedConfig cfg) {
    Seconds typical_tx = static_cast<double>(cfg.mean_pkt_size) * 8.0 / bandwidth_bps;
    LinkId id = topo_.add_link(from, to, bandwidth_bps, delay,
                               make_red(limit, cfg, typical_tx));
    link_rngs_.emplace_back(seed_, 4096 + static_cast<uint64_t>(id));
    return id;
}

TcpConn& Simulation::add_agent(NodeId src, NodeId dst, int flow_id, TcpConfig cfg) {
    int id = static_cast<int>(conns_.size());
    auto conn = std::make_unique<TcpConn>(
        id, src, dst, flow_id, cfg, events_, uids_,
        [this, src](Packet&& p, Seconds now) { inject(std::move(p), src, now); });
    auto sink = std::make_unique<TcpSink>(id, dst, flow_id, cfg.ack_size, uids_);

    conn_at_[{src, flow_id}] = conn.get();
    sink_at_[{dst, flow_id}] = sink.get();
    conn_by_flow_[flow_id] = conn.get();
    sink_by_flow_[flow_id] = sink.get();
    report_.flows[flow_id];  // flows exist even if no packet ever moves

    conns_.push_back(std::move(conn));
    sinks_.push_back(std::move(sink));
    return *conns_.back();
}

ExpOnOff& Simulation::add_expoo(int flow_id, ExpOnOffConfig cfg) {
    TcpConn* conn = conn_for_flow(flow_id);
    if (!conn)
        throw SimulationError("no agent for flow " + std::to_string(flow_id));
    RngStream rng(seed_, 1 + static_cast<uint64_t>(apps_.size()));
    apps_.push_back(std::make_unique<ExpOnOff>(
        cfg, rng, events_,
        [conn](int bytes, Seconds now) { conn->app_send(bytes, now); }));
    app_flows_.insert(flow_id);
    return *apps_.back();
}

TcpConn* Simulation::conn_for_flow(int flow_id) {
    auto it = conn_by_flow_.find(flow_id);
    return it == conn_by_flow_.end() ? nullptr : it->second;
}

TcpSink* Simulation::sink_for_flow(int flow_id) {
    auto it = sink_by_flow_.find(flow_id);
    return it == sink_by_flow_.end() ? nullptr : it->second;
}

std::vector<ThroughputSample> Simulation::samples_for_flow(int flow_id) const {
    std::vector<ThroughputSample> out;
    for (const ThroughputSample& s : samples_)
        if (s.flow_id == flow_id)
            out.push_back(s);
    return out;
}

KindCounters& Simulation::counters_for(const Packet& pkt) {
    FlowCounters& fc = report_.flows[pkt.flow_id];
    return pkt.kind == PacketKind::Tcp ? fc.data : fc.acks;
}

void Simulation::inject(Packet&& pkt, NodeId at, Seconds now) {
    ++counters_for(pkt).created;
    route_and_enqueue(std::move(pkt), at, now);
}

void Simulation::route_and_enqueue(Packet&& pkt, NodeId at, Seconds now) {
    LinkId lid = topo_.next_hop(at, pkt.dst);
    if (lid < 0)
        throw SimulationError("no route from node " + std::to_string(at) + " to " +
                              std::to_string(pkt.dst));
    enqueue_on_link(lid, std::move(pkt), now);
}

void Simulation::enqueue_on_link(LinkId lid, Packet&& pkt, Seconds now) {
    Link& l = topo_.link(lid);
    trace_.emit('+', pkt, l.from, l.to, now);
    std::optional<DropReason> reason = queue_admit(l.queue, pkt, now, link_rngs_[lid]);
    if (reason) {
        trace_.emit('d', pkt, l.from, l.to, now);
        ++counters_for(pkt).dropped;
        ++report_.node_drops[l.from];
        ++report_.total_drops;
        return;
    }
    l.queue.buffer.push_back(std::move(pkt));
    if (!l.transmitting)
        start_transmission(lid, now);
}

void Simulation::start_transmission(LinkId lid, Seconds now) {
    Link& l = topo_.link(lid);
    Packet pkt = std::move(l.queue.buffer.front());
    l.queue.buffer.pop_front();
    trace_.emit('-', pkt, l.from, l.to, now);
    ++wire_[{pkt.flow_id, pkt.kind == PacketKind::Tcp}];

    Seconds tx = l.tx_time(pkt.size);
    l.transmitting = true;
    l.busy_until = now + tx;
    events_.schedule(now + tx, EventKind::LinkTxComplete, [this, lid](Seconds t) {
        Link& link = topo_.link(lid);
        link.transmitting = false;
        if (link.queue.buffer.empty())
            queue_note_idle(link.queue, t);
        else
            start_transmission(lid, t);
    });
    events_.schedule(now + tx + l.delay, EventKind::PacketArrival,
                     [this, lid, pkt](Seconds t) { on_arrival(lid, pkt, t); });
}

void Simulation::on_arrival(LinkId lid, Packet pkt, Seconds now) {
    const Link& l = topo_.link(lid);
    trace_.emit('r', pkt, l.from, l.to, now);
    --wire_[{pkt.flow_id, pkt.kind == PacketKind::Tcp}];

    if (pkt.dst != l.to) {
        route_and_enqueue(std::move(pkt), l.to, now);
        return;
    }
    ++counters_for(pkt).received;
    if (pkt.kind == PacketKind::Tcp) {
        auto it = sink_at_.find({l.to, pkt.flow_id});
        if (it == sink_at_.end())
            throw SimulationError("data packet for node without sink (flow " +
                                  std::to_string(pkt.flow_id) + ")");
        Packet ack = it->second->on_packet(pkt, now);
        inject(std::move(ack), l.to, now);
    } else {
        auto it = conn_at_.find({l.to, pkt.flow_id});
        if (it == conn_at_.end())
            throw SimulationError("ack for node without agent (flow " +
                                  std::to_string(pkt.flow_id) + ")");
        it->second->on_ack(pkt.seq, now);
    }
}

RunReport Simulation::run(Seconds duration) {
    topo_.build_routes();

    for (auto& app : apps_)
        app->start();

    if (record_interval_ > 0.0) {
        int ticks = static_cast<int>(std::floor(duration / record_interval_ + 1e-9));
        for (int k = 1; k <= ticks; ++k) {
            Seconds at = k * record_interval_;
            for (auto& sink : sinks_) {
                TcpSink* s = sink.get();
                // Flows without a traffic source have no series at all;
                // sourced flows sample every interval, zeros included.
                if (!app_flows_.count(s->flow_id()))
                    continue;
                events_.schedule(at, EventKind::RecordTick, [this, s, at](Seconds) {
                    int64_t bytes = s->take_interval_bytes();
                    samples_.push_back(ThroughputSample{
                        s->flow_id(), at, interval_rate_bps(bytes, record_interval_)});
                });
            }
        }
    }

    events_.schedule(duration, EventKind::SimFinish, [this](Seconds t) { finish(t); });

    SimSummary summary = events_.run_until(duration);
    report_.events_executed = summary.events_executed;
    report_.trace_lines = trace_.lines_written();
    return report_;
}

void Simulation::finish(Seconds) {
    for (const Link& l : topo_.links()) {
        for (const Packet& pkt : l.queue.buffer)
            ++counters_for(pkt).buffered_end;
    }
    for (const auto& [key, n] : wire_) {
        if (n < 0)
            throw SimulationError("negative in-flight count");
        FlowCounters& fc = report_.flows[key.first];
        (key.second ? fc.data : fc.acks).inflight_end += static_cast<uint64_t>(n);
    }
    for (const auto& conn : conns_)
        report_.flows[conn->flow_id()].retransmitted = conn->retransmit_count();
    for (const auto& sink : sinks_)
        report_.flows[sink->flow_id()].bytes_received = sink->total_bytes();

    if (!report_.conservation_holds())
        throw SimulationError("packet conservation violated at SimFinish");

    trace_.flush();
    if (on_finish)
        on_finish(*this);
    events_.halt();
}

RunOutputs run_scenario(const Scenario& s, const RunOptions& opts) {
    namespace fs = std::filesystem;
    const uint64_t seed = opts.seed.value_or(s.seed);

    Simulation sim(seed);
    std::map<std::string, NodeId> node_of;
    for (const std::string& name : s.nodes)
        node_of[name] = sim.add_node(name);
    for (const LinkSpec& l : s.links) {
        if (l.discipline == QueueDiscipline::Red)
            sim.add_red_link(node_of[l.from], node_of[l.to], l.bandwidth, l.delay,
                             l.effective_limit(), l.red);
        else
            sim.add_droptail_link(node_of[l.from], node_of[l.to], l.bandwidth, l.delay,
                                  l.effective_limit());
    }

    // An agent's MSS is the packet size of the app bound to it.
    for (const AgentSpec& a : s.agents) {
        TcpConfig cfg;
        cfg.rcv_window = a.window;
        for (const AppSpec& app : s.apps) {
            if (app.agent == a.id) {
                cfg.mss = app.cfg.packet_size;
                break;
            }
        }
        sim.add_agent(node_of[a.src], node_of[a.dst], a.flow_id, cfg);
    }
    for (const AppSpec& app : s.apps) {
        for (const AgentSpec& a : s.agents) {
            if (a.id == app.agent) {
                sim.add_expoo(a.flow_id, app.cfg);
                break;
            }
        }
    }

    RunOutputs out;
    std::ofstream trace_file;
    if (opts.write_files) {
        if (!opts.out_dir.empty())
            fs::create_directories(opts.out_dir);
        fs::path dir(opts.out_dir);
        out.trace_path = (dir / s.trace_file).string();
        out.report_path = (dir / "report.txt").string();
        trace_file.open(out.trace_path);
        if (!trace_file)
            throw SimulationError("cannot open trace file " + out.trace_path);
        sim.set_trace_stream(&trace_file);

        std::vector<int> flow_ids;
        for (const AgentSpec& a : s.agents)
            flow_ids.push_back(a.flow_id);
        std::sort(flow_ids.begin(), flow_ids.end());
        for (int flow : flow_ids)
            out.plot_paths.emplace_back(
                flow, (dir / ("flow" + std::to_string(flow) + ".tr.w")).string());

        sim.on_finish = [&out](Simulation& fin) {
            for (const auto& [flow, path] : out.plot_paths) {
                std::ofstream pf(path);
                if (!pf)
                    throw SimulationError("cannot open plot file " + path);
                xgraph_write(fin.samples_for_flow(flow), "flow" + std::to_string(flow), pf);
                pf.flush();
                if (!pf.good())
                    throw SimulationError("plot output stream failed: " + path);
            }
            std::ofstream rf(out.report_path);
            if (!rf)
                throw SimulationError("cannot open report file " + out.report_path);
            rf << render_report(fin.report());
            rf.flush();
            if (!rf.good())
                throw SimulationError("report output stream failed");
        };
    }
    sim.set_record_interval(s.record_interval);

    auto t0 = std::chrono::steady_clock::now();
    out.report = sim.run(s.duration);
    auto t1 = std::chrono::steady_clock::now();
    out.report.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

    if (opts.write_files) {
        trace_file.flush();
        if (!trace_file.good())
            throw SimulationError("trace output stream failed at close");
    }
    return out;
}

}  // namespace dropsim
