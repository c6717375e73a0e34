#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "dropsim/packet.hpp"

namespace dropsim {

// One line of the wired trace format:
//   <ev> <time> <from> <to> <type> <size> ------- <flow> <src.port> <dst.port> <seq> <uid>
// e.g.  + 0.123456 0 3 tcp 210 ------- 1 0.0 4.0 3 7
struct TraceRecord {
    char event = '+';  // '+' enqueue, '-' dequeue, 'r' receive, 'd' drop
    Seconds time = 0.0;
    int from = 0;
    int to = 0;
    std::string pkt_type = "tcp";  // tcp | ack | exp
    int size = 0;
    std::string flags = "-------";
    int flow_id = 0;
    int src_node = 0;
    int src_port = 0;
    int dst_node = 0;
    int dst_port = 0;
    int64_t seq = 0;
    uint64_t uid = 0;
};

std::string format_trace_line(const TraceRecord& r);

TraceRecord trace_record(char ev, const Packet& pkt, NodeId from, NodeId to, Seconds now);

// Strict parse of one trace line; nullopt for blank lines, throws
// SimulationError on malformed input.
std::optional<TraceRecord> parse_trace_line(const std::string& line);

// Sequential writer over an external stream; a null stream disables
// tracing. flush() throws on I/O failure so a run cannot exit 0 with a
// truncated trace.
class TraceWriter {
public:
    explicit TraceWriter(std::ostream* out = nullptr) : out_(out) {}

    void set_stream(std::ostream* out) { out_ = out; }
    bool enabled() const { return out_ != nullptr; }

    void emit(char ev, const Packet& pkt, NodeId from, NodeId to, Seconds now);
    void flush();
    uint64_t lines_written() const { return lines_; }

private:
    std::ostream* out_;
    uint64_t lines_ = 0;
};

}  // namespace dropsim
