#include "dropsim/event_queue.hpp"

#include <algorithm>
#include <string>

namespace dropsim {

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::PacketArrival:  return "PacketArrival";
        case EventKind::LinkTxComplete: return "LinkTxComplete";
        case EventKind::AppEmit:        return "AppEmit";
        case EventKind::AppStateFlip:   return "AppStateFlip";
        case EventKind::TcpTimeout:     return "TcpTimeout";
        case EventKind::RecordTick:     return "RecordTick";
        case EventKind::AgentStart:     return "AgentStart";
        case EventKind::AgentStop:      return "AgentStop";
        case EventKind::SimFinish:      return "SimFinish";
    }
    return "?";
}

EventId EventQueue::schedule(Seconds at, EventKind kind, Handler fn) {
    if (at < now_)
        throw SimulationError("schedule: event at " + std::to_string(at) +
                              " is in the past (now " + std::to_string(now_) + ")");
    EventId id = next_seq_++;
    heap_.push(Item{at, id, kind, std::move(fn)});
    pending_.insert(id);
    return id;
}

bool EventQueue::cancel(EventId id) {
    // The heap entry stays behind and is skipped when popped.
    return pending_.erase(id) > 0;
}

SimSummary EventQueue::run_until(Seconds t_end) {
    while (!halted_ && !heap_.empty() && heap_.top().fire_at <= t_end) {
        Item ev = heap_.top();
        heap_.pop();
        if (pending_.erase(ev.seq) == 0)
            continue;  // cancelled
        now_ = ev.fire_at;
        ++executed_;
        if (on_execute)
            on_execute(now_, ev.seq, ev.kind);
        ev.fn(now_);
    }
    now_ = std::max(now_, t_end);
    return SimSummary{executed_, now_};
}

}  // namespace dropsim
