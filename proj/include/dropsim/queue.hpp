#pragma once

#include <deque>
#include <optional>

#include "dropsim/packet.hpp"
#include "dropsim/rng.hpp"

namespace dropsim {

enum class QueueDiscipline { DropTail, Red };

enum class DropReason { QueueFull, RedForced, RedEarly };

const char* drop_reason_name(DropReason r);

struct RedConfig {
    double w_q = 0.002;      // EWMA weight
    double min_th = 5.0;     // packets
    double max_th = 15.0;    // packets
    double max_p = 0.1;
    int mean_pkt_size = 500; // bytes, sets the idle-decay clock
};

struct RedState {
    RedConfig cfg;
    double avg = 0.0;                 // EWMA of queue length, packets
    int count = 0;                    // admissions in the probabilistic band since last drop
    std::optional<Seconds> idle_since = 0.0;  // queue idle from t=0 until first arrival
    Seconds typical_tx_time = 0.004;  // serialization time of a mean-size packet
};

// Per-link buffer with admission policy state. Length is measured in
// packets; buffer.size() <= limit always.
struct QueueState {
    QueueDiscipline discipline = QueueDiscipline::DropTail;
    int limit = 10;  // packets
    std::deque<Packet> buffer;
    std::optional<RedState> red;

    int len() const { return static_cast<int>(buffer.size()); }
};

QueueState make_droptail(int limit);
QueueState make_red(int limit, RedConfig cfg, Seconds typical_tx_time);

// True iff the buffer has room. Mutates nothing.
bool droptail_admit(const QueueState& q, const Packet& pkt);

// The RED admission test. Updates avg <- (1-w_q)*avg + w_q*len, after
// decaying avg by (1-w_q)^m for an idle period of m typical transmission
// times. Admits outright below min_th; rejects outright at or above
// max_th or when the buffer is full; in between rejects with probability
// p_a = p_b / (1 - count*p_b), p_b = max_p*(avg-min_th)/(max_th-min_th).
// count resets on every reject and grows on in-band admission.
bool red_admit(QueueState& q, const Packet& pkt, Seconds now, RngStream& rng);

// Dispatching admission used by links: nullopt means admitted (caller
// appends to the buffer); otherwise the drop reason.
std::optional<DropReason> queue_admit(QueueState& q, const Packet& pkt, Seconds now,
                                      RngStream& rng);

// Marks the instant the queue went idle (emptied with no transmission in
// progress); feeds RED's idle decay.
void queue_note_idle(QueueState& q, Seconds now);

}  // namespace dropsim
