#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dropsim/packet.hpp"

namespace dropsim {

struct ThroughputSample {
    int flow_id = 0;
    Seconds t = 0.0;             // interval end
    double bits_per_second = 0.0;
};

// Loss-monitor arithmetic for one record tick.
inline double interval_rate_bps(int64_t bytes, Seconds interval) {
    return static_cast<double>(bytes) * 8.0 / interval;
}

// Data and ack packets tallied separately; conservation holds per line:
// created == received + dropped + buffered_end + inflight_end.
struct KindCounters {
    uint64_t created = 0;
    uint64_t received = 0;      // delivered at the packet's destination
    uint64_t dropped = 0;
    uint64_t buffered_end = 0;  // sitting in some queue at SimFinish
    uint64_t inflight_end = 0;  // on a wire at SimFinish
};

struct FlowCounters {
    KindCounters data;
    KindCounters acks;
    uint64_t retransmitted = 0;
    int64_t bytes_received = 0;  // sink byte total
};

struct RunReport {
    std::map<int, FlowCounters> flows;
    std::map<int, uint64_t> node_drops;  // keyed by the node whose outgoing queue dropped
    uint64_t total_drops = 0;
    // Not part of the rendered report (report files must be seed-stable):
    uint64_t events_executed = 0;
    double wall_seconds = 0.0;
    uint64_t trace_lines = 0;

    bool conservation_holds() const;
};

// The report.txt / `report` text: deterministic key:value lines.
std::string render_report(const RunReport& rep);

// Independent recomputation of a RunReport from a trace file, used to
// cross-check the live counters.
RunReport report_from_trace(std::istream& trace);

// Xgraph plot data: optional title line, then "%.3f %.6f" time/value
// lines with the value in Mb/s.
void xgraph_write(const std::vector<ThroughputSample>& samples, const std::string& title,
                  std::ostream& out);

}  // namespace dropsim
