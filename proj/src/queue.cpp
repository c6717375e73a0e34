#include "dropsim/queue.hpp"

#include <cmath>

namespace dropsim {

const char* drop_reason_name(DropReason r) {
    switch (r) {
        case DropReason::QueueFull: return "queue_full";
        case DropReason::RedForced: return "red_forced";
        case DropReason::RedEarly:  return "red_early";
    }
    return "?";
}

QueueState make_droptail(int limit) {
    QueueState q;
    q.discipline = QueueDiscipline::DropTail;
    q.limit = limit;
    return q;
}

QueueState make_red(int limit, RedConfig cfg, Seconds typical_tx_time) {
    QueueState q;
    q.discipline = QueueDiscipline::Red;
    q.limit = limit;
    RedState red;
    red.cfg = cfg;
    red.typical_tx_time = typical_tx_time;
    q.red = red;
    return q;
}

bool droptail_admit(const QueueState& q, const Packet&) {
    return q.len() < q.limit;
}

namespace {

std::optional<DropReason> red_admit_reason(QueueState& q, Seconds now, RngStream& rng) {
    RedState& red = *q.red;
    const RedConfig& cfg = red.cfg;
    const int len = q.len();

    if (red.idle_since) {
        // Pretend the queue drained at one mean-size packet per tx time
        // while idle: avg decays by (1-w_q)^m.
        double m = (now - *red.idle_since) / red.typical_tx_time;
        if (m > 0.0)
            red.avg *= std::pow(1.0 - cfg.w_q, m);
        red.idle_since.reset();
    }
    red.avg = (1.0 - cfg.w_q) * red.avg + cfg.w_q * len;

    if (len >= q.limit) {
        red.count = 0;
        return DropReason::QueueFull;
    }
    if (red.avg >= cfg.max_th) {
        red.count = 0;
        return DropReason::RedForced;
    }
    if (red.avg < cfg.min_th)
        return std::nullopt;

    double p_b = cfg.max_p * (red.avg - cfg.min_th) / (cfg.max_th - cfg.min_th);
    double denom = 1.0 - red.count * p_b;
    double p_a = denom <= 0.0 ? 1.0 : p_b / denom;
    if (p_a > 1.0)
        p_a = 1.0;
    if (rng.next_unit() < p_a) {
        red.count = 0;
        return DropReason::RedEarly;
    }
    red.count += 1;
    return std::nullopt;
}

}  // namespace

bool red_admit(QueueState& q, const Packet&, Seconds now, RngStream& rng) {
    return !red_admit_reason(q, now, rng).has_value();
}

std::optional<DropReason> queue_admit(QueueState& q, const Packet& pkt, Seconds now,
                                      RngStream& rng) {
    if (q.discipline == QueueDiscipline::DropTail)
        return droptail_admit(q, pkt) ? std::nullopt
                                      : std::optional<DropReason>(DropReason::QueueFull);
    return red_admit_reason(q, now, rng);
}

void queue_note_idle(QueueState& q, Seconds now) {
    if (q.red)
        q.red->idle_since = now;
}

}  // namespace dropsim
