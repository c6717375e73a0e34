#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dropsim/event_queue.hpp"
#include "dropsim/rng.hpp"

namespace dropsim {

struct ExpOnOffConfig {
    int packet_size = 210;      // bytes
    double rate = 100'000.0;    // bits/s while ON
    Seconds burst_time = 0.002; // mean ON duration
    Seconds idle_time = 0.001;  // mean OFF duration
    Seconds start_at = 0.0;
    Seconds stop_at = 0.0;

    Seconds emit_gap() const { return static_cast<double>(packet_size) * 8.0 / rate; }
};

enum class ExpPhase { On, Off, Stopped };

// On/off source with exponentially distributed phase durations. While ON
// it emits one packet_size chunk every packet_size*8/rate seconds of
// accumulated ON time; an OFF period pauses that clock (the pending
// emission shifts right by the full OFF duration), so the long-run
// emitted rate is exactly rate * burst / (burst + idle). The first packet
// goes out the instant the source starts.
class ExpOnOff {
public:
    using EmitFn = std::function<void(int bytes, Seconds now)>;

    ExpOnOff(ExpOnOffConfig cfg, RngStream rng, EventQueue& events, EmitFn emit);

    // Schedules AgentStart/AgentStop; call once before the run.
    void start();

    ExpPhase phase() const { return phase_; }
    const ExpOnOffConfig& config() const { return cfg_; }
    uint64_t packets_emitted() const { return packets_emitted_; }
    int64_t bytes_emitted() const { return bytes_emitted_; }

    // Test support: record emission timestamps.
    void log_emissions(bool on) { log_ = on; }
    const std::vector<Seconds>& emission_log() const { return emission_log_; }

private:
    void on_start(Seconds now);
    void on_stop(Seconds now);
    void on_emit(Seconds now);
    void on_flip(Seconds now);
    void arm();

    ExpOnOffConfig cfg_;
    RngStream rng_;
    EventQueue& events_;
    EmitFn emit_;

    ExpPhase phase_ = ExpPhase::Stopped;
    Seconds phase_ends_at_ = 0.0;
    Seconds next_emit_at_ = 0.0;
    std::optional<EventId> pending_;
    uint64_t packets_emitted_ = 0;
    int64_t bytes_emitted_ = 0;
    bool log_ = false;
    std::vector<Seconds> emission_log_;
};

}  // namespace dropsim
