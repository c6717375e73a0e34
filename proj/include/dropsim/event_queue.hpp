#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "dropsim/packet.hpp"

namespace dropsim {

struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class EventKind {
    PacketArrival,
    LinkTxComplete,
    AppEmit,
    AppStateFlip,
    TcpTimeout,
    RecordTick,
    AgentStart,
    AgentStop,
    SimFinish,
};

const char* event_kind_name(EventKind k);

using EventId = uint64_t;

struct SimSummary {
    uint64_t events_executed = 0;
    Seconds end_time = 0.0;
};

// Discrete-event engine: a clock plus a priority queue of timestamped
// events. Ties on fire_at break by insertion order (seq), so a run is a
// deterministic function of the scenario and seed. Single-threaded.
class EventQueue {
public:
    using Handler = std::function<void(Seconds now)>;

    // Scheduling in the past is a contract violation and throws.
    EventId schedule(Seconds at, EventKind kind, Handler fn);

    // True iff the event existed and had not fired; a cancelled event
    // never executes. Unknown and already-fired ids return false.
    bool cancel(EventId id);

    // Executes every event with fire_at <= t_end in (fire_at, seq) order;
    // the clock reads t_end on return.
    SimSummary run_until(Seconds t_end);

    // Stops the run: no further events execute. Used by SimFinish so the
    // finish procedure is the last thing that happens.
    void halt() { halted_ = true; }
    bool halted() const { return halted_; }

    Seconds now() const { return now_; }
    uint64_t events_executed() const { return executed_; }
    size_t pending_count() const { return pending_.size(); }

    // Observation hook, called before each handler runs.
    std::function<void(Seconds, EventId, EventKind)> on_execute;

private:
    struct Item {
        Seconds fire_at;
        EventId seq;
        EventKind kind;
        Handler fn;
    };
    struct Later {
        bool operator()(const Item& a, const Item& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Item, std::vector<Item>, Later> heap_;
    std::unordered_set<EventId> pending_;
    Seconds now_ = 0.0;
    EventId next_seq_ = 0;
    uint64_t executed_ = 0;
    bool halted_ = false;
};

}  // namespace dropsim
