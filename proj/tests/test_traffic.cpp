#include <doctest.h>

#include <vector>

#include "dropsim/event_queue.hpp"
#include "dropsim/traffic.hpp"

using namespace dropsim;

TEST_CASE("inter-emit spacing is packet_size*8/rate") {
    ExpOnOffConfig c;
    c.packet_size = 210;
    c.rate = 100e3;
    CHECK(c.emit_gap() == doctest::Approx(0.0168));
    c.rate = 1e6;
    CHECK(c.emit_gap() == doctest::Approx(0.00168));
}

namespace {

struct GenHarness {
    EventQueue events;
    int64_t bytes = 0;
    std::vector<Seconds> times;
    ExpOnOff gen;

    GenHarness(ExpOnOffConfig cfg, uint64_t seed, uint64_t stream = 1)
        : gen(cfg, RngStream(seed, stream), events, [this](int b, Seconds t) {
              bytes += b;
              times.push_back(t);
          }) {
        gen.log_emissions(true);
    }

    void run(Seconds until) {
        gen.start();
        events.run_until(until);
    }
};

}  // namespace

// The duty-cycle identity: over a long run the emitted rate converges to
// rate * burst / (burst + idle). At the default parameters that target is
// 100k * 2/3 = 66.67 kb/s.
TEST_CASE("long-run emitted rate matches the duty cycle within 5%") {
    ExpOnOffConfig c;
    c.packet_size = 210;
    c.rate = 100e3;
    c.burst_time = 0.002;
    c.idle_time = 0.001;
    c.start_at = 0.0;
    c.stop_at = 100.0;
    GenHarness h(c, 17);
    h.run(100.0);

    double rate = h.bytes * 8.0 / 100.0;
    CHECK(rate == doctest::Approx(66666.7).epsilon(0.05));
    CHECK(h.bytes == static_cast<int64_t>(h.gen.packets_emitted()) * 210);
}

TEST_CASE("duty cycle holds at the drop-regime rate too") {
    ExpOnOffConfig c;
    c.packet_size = 210;
    c.rate = 1e6;
    c.burst_time = 0.002;
    c.idle_time = 0.001;
    c.start_at = 0.0;
    c.stop_at = 100.0;
    GenHarness h(c, 23);
    h.run(100.0);
    CHECK(h.bytes * 8.0 / 100.0 == doctest::Approx(666666.7).epsilon(0.05));
}

TEST_CASE("no emissions outside [start_at, stop_at]") {
    ExpOnOffConfig c;
    c.start_at = 0.5;
    c.stop_at = 2.5;
    GenHarness h(c, 3);
    h.run(5.0);
    REQUIRE(!h.times.empty());
    CHECK(h.times.front() == 0.5);  // first packet goes out at start
    for (Seconds t : h.times) {
        CHECK(t >= 0.5);
        CHECK(t <= 2.5);
    }
    CHECK(h.gen.phase() == ExpPhase::Stopped);
}

TEST_CASE("identical seeds give bitwise-identical emission logs") {
    ExpOnOffConfig c;
    c.start_at = 0.0;
    c.stop_at = 20.0;
    GenHarness a(c, 99), b(c, 99), other(c, 100);
    a.run(20.0);
    b.run(20.0);
    other.run(20.0);
    CHECK(a.times == b.times);
    CHECK(a.times != other.times);
}

TEST_CASE("an always-on source emits on the exact rate grid") {
    // idle_time 0 never pauses the emission clock
    ExpOnOffConfig c;
    c.packet_size = 210;
    c.rate = 100e3;
    c.idle_time = 0.0;
    c.start_at = 0.0;
    c.stop_at = 10.0;
    GenHarness h(c, 5);
    h.run(10.0);
    REQUIRE(h.times.size() > 100);
    for (size_t i = 0; i < h.times.size(); ++i)
        CHECK(h.times[i] == doctest::Approx(i * 0.0168).epsilon(1e-9));
}
