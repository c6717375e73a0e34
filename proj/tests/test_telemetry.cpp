#include <doctest.h>

#include <sstream>

#include "dropsim/rng.hpp"
#include "dropsim/telemetry.hpp"
#include "dropsim/trace.hpp"

using namespace dropsim;

namespace {

Packet data_pkt() {
    Packet p;
    p.uid = 7;
    p.flow_id = 1;
    p.src = 0;
    p.dst = 4;
    p.size = 210;
    p.seq = 3;
    p.kind = PacketKind::Tcp;
    return p;
}

}  // namespace

TEST_CASE("trace line wire format") {
    Packet p = data_pkt();

    SUBCASE("enqueue record") {
        CHECK(format_trace_line(trace_record('+', p, 0, 3, 0.123456)) ==
              "+ 0.123456 0 3 tcp 210 ------- 1 0.0 4.0 3 7");
    }
    SUBCASE("drop record repeats the enqueue fields") {
        std::string plus = format_trace_line(trace_record('+', p, 0, 3, 0.123456));
        std::string drop = format_trace_line(trace_record('d', p, 0, 3, 0.123456));
        CHECK(drop.substr(0, 1) == "d");
        CHECK(drop.substr(1) == plus.substr(1));
    }
    SUBCASE("ack record") {
        Packet a;
        a.uid = 12;
        a.flow_id = 1;
        a.src = 4;
        a.dst = 0;
        a.size = 40;
        a.seq = 4;
        a.kind = PacketKind::Ack;
        CHECK(format_trace_line(trace_record('r', a, 4, 0, 1.5)) ==
              "r 1.500000 4 0 ack 40 ------- 1 4.0 0.0 4 12");
    }
}

TEST_CASE("trace writer counts lines and honors a null stream") {
    TraceWriter off(nullptr);
    off.emit('+', data_pkt(), 0, 3, 0.1);
    CHECK(off.lines_written() == 0);

    std::ostringstream out;
    TraceWriter on(&out);
    on.emit('+', data_pkt(), 0, 3, 0.1);
    on.emit('d', data_pkt(), 0, 3, 0.1);
    on.flush();
    CHECK(on.lines_written() == 2);
    CHECK(out.str().find("d 0.100000") != std::string::npos);
}

// One randomized round-trip property instead of a case matrix.
TEST_CASE("property: format/parse round-trips randomized records") {
    RngStream rng(55, 1);
    const char events[] = {'+', '-', 'r', 'd'};
    const char* types[] = {"tcp", "ack", "exp"};
    for (int i = 0; i < 300; ++i) {
        TraceRecord r;
        r.event = events[rng.next_u64() % 4];
        r.time = static_cast<double>(rng.next_u64() % 5000000) * 1e-6;
        r.from = static_cast<int>(rng.next_u64() % 5);
        r.to = static_cast<int>(rng.next_u64() % 5);
        r.pkt_type = types[rng.next_u64() % 3];
        r.size = 1 + static_cast<int>(rng.next_u64() % 2000);
        r.flow_id = static_cast<int>(rng.next_u64() % 10);
        r.src_node = static_cast<int>(rng.next_u64() % 5);
        r.dst_node = static_cast<int>(rng.next_u64() % 5);
        r.seq = static_cast<int64_t>(rng.next_u64() % 100000);
        r.uid = rng.next_u64() % 1000000;

        auto back = parse_trace_line(format_trace_line(r));
        REQUIRE(back.has_value());
        CHECK(back->event == r.event);
        CHECK(back->time == doctest::Approx(r.time).epsilon(1e-9));
        CHECK(back->from == r.from);
        CHECK(back->to == r.to);
        CHECK(back->pkt_type == r.pkt_type);
        CHECK(back->size == r.size);
        CHECK(back->flow_id == r.flow_id);
        CHECK(back->src_node == r.src_node);
        CHECK(back->dst_node == r.dst_node);
        CHECK(back->seq == r.seq);
        CHECK(back->uid == r.uid);
    }
}

TEST_CASE("malformed trace lines are rejected") {
    CHECK_THROWS(parse_trace_line("x 0.1 0 3 tcp"));
    CHECK_THROWS(parse_trace_line("q 0.100000 0 3 tcp 210 ------- 1 0.0 4.0 3 7"));
    CHECK_FALSE(parse_trace_line("").has_value());
}

TEST_CASE("record tick arithmetic") {
    CHECK(interval_rate_bps(2100, 0.1) == 168000.0);
    CHECK(interval_rate_bps(0, 0.1) == 0.0);
}

TEST_CASE("xgraph output format") {
    SUBCASE("samples convert to Mb/s") {
        std::ostringstream out;
        xgraph_write({{1, 0.1, 168000.0}}, "flow1", out);
        CHECK(out.str() == "TitleText: flow1\n0.100 0.168000\n");
    }
    SUBCASE("an empty flow writes only the title line") {
        std::ostringstream out;
        xgraph_write({}, "flow2", out);
        CHECK(out.str() == "TitleText: flow2\n");
    }
}

TEST_CASE("report recomputation classifies every packet exactly once") {
    // Synthetic two-hop story: uid 1 delivered end to end, uid 2 dropped
    // at the router, uid 3 parked in the router queue, uid 4 on the wire,
    // and uid 5 an ack delivered back.
    std::string trace =
        "+ 0.100000 0 3 tcp 210 ------- 1 0.0 4.0 0 1\n"
        "- 0.100000 0 3 tcp 210 ------- 1 0.0 4.0 0 1\n"
        "r 0.110000 0 3 tcp 210 ------- 1 0.0 4.0 0 1\n"
        "+ 0.110000 3 4 tcp 210 ------- 1 0.0 4.0 0 1\n"
        "- 0.110000 3 4 tcp 210 ------- 1 0.0 4.0 0 1\n"
        "r 0.130000 3 4 tcp 210 ------- 1 0.0 4.0 0 1\n"
        "+ 0.200000 0 3 tcp 210 ------- 1 0.0 4.0 1 2\n"
        "- 0.200000 0 3 tcp 210 ------- 1 0.0 4.0 1 2\n"
        "r 0.210000 0 3 tcp 210 ------- 1 0.0 4.0 1 2\n"
        "+ 0.210000 3 4 tcp 210 ------- 1 0.0 4.0 1 2\n"
        "d 0.210000 3 4 tcp 210 ------- 1 0.0 4.0 1 2\n"
        "+ 0.300000 0 3 tcp 210 ------- 1 0.0 4.0 1 3\n"
        "- 0.300000 0 3 tcp 210 ------- 1 0.0 4.0 1 3\n"
        "r 0.310000 0 3 tcp 210 ------- 1 0.0 4.0 1 3\n"
        "+ 0.310000 3 4 tcp 210 ------- 1 0.0 4.0 1 3\n"
        "+ 0.400000 0 3 tcp 210 ------- 1 0.0 4.0 2 4\n"
        "- 0.400000 0 3 tcp 210 ------- 1 0.0 4.0 2 4\n"
        "+ 0.130000 4 3 ack 40 ------- 1 4.0 0.0 1 5\n"
        "- 0.130000 4 3 ack 40 ------- 1 4.0 0.0 1 5\n"
        "r 0.150000 4 3 ack 40 ------- 1 4.0 0.0 1 5\n"
        "+ 0.150000 3 0 ack 40 ------- 1 4.0 0.0 1 5\n"
        "- 0.150000 3 0 ack 40 ------- 1 4.0 0.0 1 5\n"
        "r 0.160000 3 0 ack 40 ------- 1 4.0 0.0 1 5\n";
    std::istringstream in(trace);
    RunReport rep = report_from_trace(in);

    const FlowCounters& f = rep.flows.at(1);
    CHECK(f.data.created == 4);
    CHECK(f.data.received == 1);
    CHECK(f.data.dropped == 1);
    CHECK(f.data.buffered_end == 1);
    CHECK(f.data.inflight_end == 1);
    CHECK(f.acks.created == 1);
    CHECK(f.acks.received == 1);
    CHECK(f.bytes_received == 210);
    CHECK(f.retransmitted == 1);  // seq 1 was sent twice (uids 2 and 3)
    CHECK(rep.node_drops.at(3) == 1);
    CHECK(rep.total_drops == 1);
    CHECK(rep.conservation_holds());

    std::string text = render_report(rep);
    CHECK(text.find("flow 1 data created: 4") != std::string::npos);
    CHECK(text.find("node 3 drops: 1") != std::string::npos);
    CHECK(text.find("total drops: 1") != std::string::npos);
}
