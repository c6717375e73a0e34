#include "dropsim/trace.hpp"

#include <cinttypes>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "dropsim/event_queue.hpp"

namespace dropsim {

std::string format_trace_line(const TraceRecord& r) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), "%c %.6f %d %d %s %d %s %d %d.%d %d.%d %" PRId64 " %" PRIu64,
                  r.event, r.time, r.from, r.to, r.pkt_type.c_str(), r.size, r.flags.c_str(),
                  r.flow_id, r.src_node, r.src_port, r.dst_node, r.dst_port, r.seq, r.uid);
    return buf;
}

TraceRecord trace_record(char ev, const Packet& pkt, NodeId from, NodeId to, Seconds now) {
    TraceRecord r;
    r.event = ev;
    r.time = now;
    r.from = from;
    r.to = to;
    r.pkt_type = packet_type_name(pkt.kind);
    r.size = pkt.size;
    r.flow_id = pkt.flow_id;
    r.src_node = pkt.src;
    r.dst_node = pkt.dst;
    r.seq = pkt.seq;
    r.uid = pkt.uid;
    return r;
}

namespace {

bool parse_addr(const std::string& tok, int& node, int& port) {
    size_t dot = tok.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 >= tok.size())
        return false;
    try {
        node = std::stoi(tok.substr(0, dot));
        port = std::stoi(tok.substr(dot + 1));
    } catch (...) {
        return false;
    }
    return true;
}

}  // namespace

std::optional<TraceRecord> parse_trace_line(const std::string& line) {
    if (line.empty())
        return std::nullopt;
    std::istringstream in(line);
    std::string ev, type, flags, src, dst;
    TraceRecord r;
    if (!(in >> ev >> r.time >> r.from >> r.to >> type >> r.size >> flags >> r.flow_id >>
          src >> dst >> r.seq >> r.uid))
        throw SimulationError("malformed trace line: " + line);
    if (ev.size() != 1 || std::string("+-rd").find(ev[0]) == std::string::npos)
        throw SimulationError("bad trace event '" + ev + "' in line: " + line);
    r.event = ev[0];
    r.pkt_type = type;
    r.flags = flags;
    if (!parse_addr(src, r.src_node, r.src_port) || !parse_addr(dst, r.dst_node, r.dst_port))
        throw SimulationError("bad trace address in line: " + line);
    return r;
}

void TraceWriter::emit(char ev, const Packet& pkt, NodeId from, NodeId to, Seconds now) {
    if (!out_)
        return;
    *out_ << format_trace_line(trace_record(ev, pkt, from, to, now)) << '\n';
    ++lines_;
}

void TraceWriter::flush() {
    if (!out_)
        return;
    out_->flush();
    if (!out_->good())
        throw SimulationError("trace output stream failed");
}

}  // namespace dropsim
