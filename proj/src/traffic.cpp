#include "dropsim/traffic.hpp"

namespace dropsim {

ExpOnOff::ExpOnOff(ExpOnOffConfig cfg, RngStream rng, EventQueue& events, EmitFn emit)
    : cfg_(cfg), rng_(rng), events_(events), emit_(std::move(emit)) {}

void ExpOnOff::start() {
    events_.schedule(cfg_.start_at, EventKind::AgentStart,
                     [this](Seconds t) { on_start(t); });
    events_.schedule(cfg_.stop_at, EventKind::AgentStop,
                     [this](Seconds t) { on_stop(t); });
}

void ExpOnOff::on_start(Seconds now) {
    phase_ = ExpPhase::On;
    phase_ends_at_ = now + exp_sample(rng_, cfg_.burst_time);
    next_emit_at_ = now;
    arm();
}

void ExpOnOff::on_stop(Seconds) {
    phase_ = ExpPhase::Stopped;
    if (pending_) {
        events_.cancel(*pending_);
        pending_.reset();
    }
}

void ExpOnOff::on_emit(Seconds now) {
    pending_.reset();
    emit_(cfg_.packet_size, now);
    ++packets_emitted_;
    bytes_emitted_ += cfg_.packet_size;
    if (log_)
        emission_log_.push_back(now);
    next_emit_at_ += cfg_.emit_gap();
    arm();
}

void ExpOnOff::on_flip(Seconds now) {
    pending_.reset();
    if (phase_ == ExpPhase::On) {
        // The emission clock runs on ON time only: shift the pending
        // emission right by the whole OFF duration.
        Seconds off = cfg_.idle_time > 0.0 ? exp_sample(rng_, cfg_.idle_time) : 0.0;
        phase_ = ExpPhase::Off;
        phase_ends_at_ = now + off;
        next_emit_at_ += off;
    } else {
        phase_ = ExpPhase::On;
        phase_ends_at_ = now + exp_sample(rng_, cfg_.burst_time);
    }
    arm();
}

void ExpOnOff::arm() {
    if (phase_ == ExpPhase::Stopped)
        return;
    if (phase_ == ExpPhase::On && next_emit_at_ <= phase_ends_at_) {
        pending_ = events_.schedule(next_emit_at_, EventKind::AppEmit,
                                    [this](Seconds t) { on_emit(t); });
    } else {
        pending_ = events_.schedule(phase_ends_at_, EventKind::AppStateFlip,
                                    [this](Seconds t) { on_flip(t); });
    }
}

}  // namespace dropsim
