#include "dropsim/telemetry.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "dropsim/trace.hpp"

namespace dropsim {

bool RunReport::conservation_holds() const {
    for (const auto& [flow, c] : flows) {
        const KindCounters* kinds[2] = {&c.data, &c.acks};
        for (const KindCounters* k : kinds) {
            if (k->created != k->received + k->dropped + k->buffered_end + k->inflight_end)
                return false;
        }
    }
    return true;
}

std::string render_report(const RunReport& rep) {
    // Flows that never moved a packet are invisible in a trace, so they
    // are left out of the rendered text to keep `report <trace>` and the
    // live report byte-identical.
    std::ostringstream out;
    size_t active = 0;
    for (const auto& [flow, c] : rep.flows)
        if (c.data.created + c.acks.created > 0)
            ++active;
    out << "flows: " << active << '\n';
    for (const auto& [flow, c] : rep.flows) {
        if (c.data.created + c.acks.created == 0)
            continue;
        auto line = [&](const char* key, uint64_t v) {
            out << "flow " << flow << ' ' << key << ": " << v << '\n';
        };
        line("data created", c.data.created);
        line("data received", c.data.received);
        line("data dropped", c.data.dropped);
        line("data buffered_end", c.data.buffered_end);
        line("data inflight_end", c.data.inflight_end);
        line("acks created", c.acks.created);
        line("acks received", c.acks.received);
        line("acks dropped", c.acks.dropped);
        line("acks buffered_end", c.acks.buffered_end);
        line("acks inflight_end", c.acks.inflight_end);
        line("retransmitted", c.retransmitted);
        out << "flow " << flow << " bytes received: " << c.bytes_received << '\n';
    }
    for (const auto& [node, drops] : rep.node_drops) {
        if (drops > 0)
            out << "node " << node << " drops: " << drops << '\n';
    }
    out << "total drops: " << rep.total_drops << '\n';
    return out.str();
}

RunReport report_from_trace(std::istream& trace) {
    struct PacketState {
        int flow = 0;
        bool is_tcp = true;
        int size = 0;
        int dst_node = 0;
        int src_node = 0;
        int64_t seq = 0;
        char last = '+';
        int last_to = -1;
    };
    std::map<uint64_t, PacketState> pkts;
    RunReport rep;

    std::string line;
    while (std::getline(trace, line)) {
        auto rec = parse_trace_line(line);
        if (!rec)
            continue;
        PacketState& st = pkts[rec->uid];
        st.flow = rec->flow_id;
        st.is_tcp = rec->pkt_type != "ack";
        st.size = rec->size;
        st.dst_node = rec->dst_node;
        st.src_node = rec->src_node;
        st.seq = rec->seq;
        st.last = rec->event;
        st.last_to = rec->to;
        if (rec->event == 'd') {
            ++rep.node_drops[rec->from];
            ++rep.total_drops;
        }
    }

    // Every packet ends in exactly one of four states: delivered, dropped,
    // parked in a buffer, or mid-flight on a link.
    std::map<int, std::set<int64_t>> distinct_data_seqs;
    for (const auto& [uid, st] : pkts) {
        FlowCounters& fc = rep.flows[st.flow];
        KindCounters& k = st.is_tcp ? fc.data : fc.acks;
        ++k.created;
        if (st.last == 'd') {
            ++k.dropped;
        } else if (st.last == 'r' && st.last_to == st.dst_node) {
            ++k.received;
            if (st.is_tcp)
                fc.bytes_received += st.size;
        } else if (st.last == '+') {
            ++k.buffered_end;
        } else {
            ++k.inflight_end;
        }
        if (st.is_tcp)
            distinct_data_seqs[st.flow].insert(st.seq);
    }
    for (auto& [flow, fc] : rep.flows)
        fc.retransmitted = fc.data.created - distinct_data_seqs[flow].size();
    return rep;
}

void xgraph_write(const std::vector<ThroughputSample>& samples, const std::string& title,
                  std::ostream& out) {
    if (!title.empty())
        out << "TitleText: " << title << '\n';
    char buf[64];
    for (const ThroughputSample& s : samples) {
        std::snprintf(buf, sizeof(buf), "%.3f %.6f", s.t, s.bits_per_second / 1e6);
        out << buf << '\n';
    }
}

}  // namespace dropsim
