#include <doctest.h>

#include <vector>

#include "dropsim/event_queue.hpp"
#include "dropsim/rng.hpp"

using namespace dropsim;

TEST_CASE("events fire in time order") {
    EventQueue q;
    std::vector<char> log;
    q.schedule(1.0, EventKind::AppEmit, [&](Seconds) { log.push_back('A'); });
    q.schedule(0.5, EventKind::AppEmit, [&](Seconds) { log.push_back('B'); });
    q.run_until(2.0);
    CHECK(log == std::vector<char>{'B', 'A'});
}

TEST_CASE("equal timestamps break ties by insertion order") {
    EventQueue q;
    std::vector<char> log;
    q.schedule(1.0, EventKind::AppEmit, [&](Seconds) { log.push_back('A'); });
    q.schedule(1.0, EventKind::AppEmit, [&](Seconds) { log.push_back('B'); });
    q.run_until(2.0);
    CHECK(log == std::vector<char>{'A', 'B'});
}

TEST_CASE("scheduling in the past is fatal") {
    EventQueue q;
    q.schedule(0.5, EventKind::AppEmit, [](Seconds) {});
    q.run_until(0.5);
    CHECK(q.now() == 0.5);
    CHECK_THROWS_AS(q.schedule(0.4, EventKind::AppEmit, [](Seconds) {}), SimulationError);
}

TEST_CASE("cancel semantics") {
    EventQueue q;
    int fired = 0;
    EventId pending = q.schedule(1.0, EventKind::TcpTimeout, [&](Seconds) { ++fired; });
    EventId fires = q.schedule(0.5, EventKind::AppEmit, [&](Seconds) { ++fired; });

    CHECK(q.cancel(pending));
    CHECK_FALSE(q.cancel(pending));  // second call
    q.run_until(2.0);
    CHECK(fired == 1);               // the cancelled one never ran
    CHECK_FALSE(q.cancel(fires));    // already fired
    CHECK_FALSE(q.cancel(99999));    // unknown id
}

TEST_CASE("run_until on an empty queue just advances the clock") {
    EventQueue q;
    SimSummary s = q.run_until(5.0);
    CHECK(s.events_executed == 0);
    CHECK(s.end_time == 5.0);
    CHECK(q.now() == 5.0);
}

TEST_CASE("run_until executes only events at or before t_end") {
    EventQueue q;
    int count = 0;
    q.schedule(0.1, EventKind::AppEmit, [&](Seconds) { ++count; });
    q.schedule(0.2, EventKind::AppEmit, [&](Seconds) { ++count; });
    SimSummary s = q.run_until(0.15);
    CHECK(count == 1);
    CHECK(s.events_executed == 1);
    CHECK(q.now() == 0.15);
    q.run_until(0.25);
    CHECK(count == 2);
}

TEST_CASE("halt stops the run") {
    EventQueue q;
    int count = 0;
    q.schedule(0.1, EventKind::AppEmit, [&](Seconds) { ++count; });
    q.schedule(0.2, EventKind::SimFinish, [&](Seconds) { q.halt(); });
    q.schedule(0.3, EventKind::AppEmit, [&](Seconds) { ++count; });
    q.run_until(1.0);
    CHECK(count == 1);
    CHECK(q.now() == 1.0);
}

// Randomized schedule/cancel interleavings: executed fire_at values are
// non-decreasing, no cancelled event executes, and identical seeds give
// identical logs.
TEST_CASE("property: random interleavings execute in order, minus cancellations") {
    auto run_once = [](uint64_t seed) {
        RngStream rng(seed, 7);
        EventQueue q;
        std::vector<std::pair<Seconds, EventId>> log;
        q.on_execute = [&](Seconds t, EventId id, EventKind) { log.emplace_back(t, id); };

        std::vector<EventId> cancelled;
        std::vector<EventId> live;
        for (int i = 0; i < 500; ++i) {
            Seconds at = rng.next_unit() * 10.0;
            EventId id = q.schedule(at, EventKind::AppEmit, [](Seconds) {});
            if (rng.next_unit() < 0.25) {
                q.cancel(id);
                cancelled.push_back(id);
            } else {
                live.push_back(id);
            }
        }
        q.run_until(11.0);
        return std::tuple(log, cancelled, live);
    };

    auto [log, cancelled, live] = run_once(42);
    CHECK(log.size() == live.size());
    for (size_t i = 1; i < log.size(); ++i)
        CHECK(log[i - 1].first <= log[i].first);
    for (EventId id : cancelled)
        for (const auto& [t, executed] : log)
            CHECK(executed != id);

    auto [log2, cancelled2, live2] = run_once(42);
    CHECK(log == log2);
}
