#include "dropsim/tcp.hpp"

#include <algorithm>
#include <cmath>

namespace dropsim {

TcpConn::TcpConn(int id, NodeId src, NodeId dst, int flow_id, TcpConfig cfg,
                 EventQueue& events, PacketUidSource& uids, SendFn send)
    : id_(id),
      src_(src),
      dst_(dst),
      flow_id_(flow_id),
      cfg_(cfg),
      events_(events),
      uids_(uids),
      send_(std::move(send)),
      cwnd_(cfg.initial_cwnd),
      ssthresh_(cfg.initial_ssthresh),
      rto_(cfg.initial_rto) {}

int TcpConn::window() const {
    return static_cast<int>(std::floor(std::min(cwnd_, static_cast<double>(cfg_.rcv_window))));
}

void TcpConn::app_send(int64_t nbytes, Seconds now) {
    app_bytes_total_ += nbytes;
    try_send(now);
}

int TcpConn::try_send(Seconds now) {
    const int64_t sendable = app_bytes_total_ / cfg_.mss;  // whole MSS units only
    int emitted = 0;
    while (next_seq_ < sendable && in_flight() < window()) {
        send_segment(next_seq_, now);
        ++next_seq_;
        ++emitted;
    }
    if (emitted > 0 && !timer_)
        restart_timer(now);
    return emitted;
}

void TcpConn::send_segment(int64_t seq, Seconds now) {
    Packet p;
    p.uid = uids_.take();
    p.flow_id = flow_id_;
    p.src = src_;
    p.dst = dst_;
    p.size = cfg_.mss;
    p.seq = seq;
    p.kind = PacketKind::Tcp;
    p.sent_at = now;

    SendInfo& info = outstanding_[seq];
    info.sent_at = now;
    if (seq < max_seq_sent_) {
        info.retransmitted = true;  // Karn: never sample its RTT
        ++retransmit_count_;
    } else {
        max_seq_sent_ = seq + 1;
    }
    ++packets_sent_;
    send_(std::move(p), now);
}

// Tahoe loss response: halve ssthresh, collapse the window, and rewind to
// the first unacked packet (everything past the hole is presumed lost).
// Dup acks generated by the pre-loss window must not re-trigger recovery,
// so fast retransmit stays blocked until acks pass the old watermark.
void TcpConn::enter_loss_recovery(Seconds now) {
    ssthresh_ = std::max(in_flight() / 2.0, 2.0);
    cwnd_ = 1.0;
    dup_acks_ = 0;
    recover_seq_ = max_seq_sent_;
    next_seq_ = highest_acked_;
    try_send(now);  // retransmits the oldest unacked under the 1-packet window
    restart_timer(now);
}

void TcpConn::on_ack(int64_t ack_seq, Seconds now) {
    if (ack_seq > highest_acked_) {
        auto it = outstanding_.find(ack_seq - 1);
        if (it != outstanding_.end() && !it->second.retransmitted)
            rtt_sample(now - it->second.sent_at);
        outstanding_.erase(outstanding_.begin(), outstanding_.lower_bound(ack_seq));
        highest_acked_ = ack_seq;
        if (cwnd_ < ssthresh_)
            cwnd_ += 1.0;           // slow start
        else
            cwnd_ += 1.0 / cwnd_;   // congestion avoidance
        dup_acks_ = 0;
        if (in_flight() > 0)
            restart_timer(now);
        else
            stop_timer();
        try_send(now);
    } else if (ack_seq == highest_acked_ && in_flight() > 0) {
        if (++dup_acks_ == 3 && highest_acked_ >= recover_seq_)
            enter_loss_recovery(now);  // fast retransmit
    }
    // acks below highest_acked_ are stale and ignored

    if (ack_observer)
        ack_observer(now, ack_seq, cwnd_);
}

void TcpConn::on_timeout(Seconds now) {
    timer_.reset();
    if (in_flight() == 0)
        return;
    rto_ = std::min(2.0 * rto_, cfg_.max_rto);  // exponential backoff
    enter_loss_recovery(now);
}

void TcpConn::rtt_sample(Seconds m) {
    if (!srtt_valid_) {
        srtt_ = m;
        rttvar_ = m / 2.0;
        srtt_valid_ = true;
    } else {
        rttvar_ = 0.75 * rttvar_ + 0.25 * std::fabs(srtt_ - m);
        srtt_ = 0.875 * srtt_ + 0.125 * m;
    }
    rto_ = std::clamp(srtt_ + 4.0 * rttvar_, cfg_.min_rto, cfg_.max_rto);
}

void TcpConn::restart_timer(Seconds now) {
    stop_timer();
    timer_ = events_.schedule(now + rto_, EventKind::TcpTimeout,
                              [this](Seconds t) { on_timeout(t); });
}

void TcpConn::stop_timer() {
    if (timer_) {
        events_.cancel(*timer_);
        timer_.reset();
    }
}

TcpSink::TcpSink(int id, NodeId node, int flow_id, int ack_size, PacketUidSource& uids)
    : id_(id), node_(node), flow_id_(flow_id), ack_size_(ack_size), uids_(uids) {}

Packet TcpSink::on_packet(const Packet& pkt, Seconds now) {
    bytes_received_ += pkt.size;
    total_bytes_ += pkt.size;
    ++total_packets_;

    if (pkt.seq >= expected_seq_)
        out_of_order_.insert(pkt.seq);
    while (!out_of_order_.empty() && *out_of_order_.begin() == expected_seq_) {
        out_of_order_.erase(out_of_order_.begin());
        ++expected_seq_;
    }

    Packet ack;
    ack.uid = uids_.take();
    ack.flow_id = flow_id_;
    ack.src = node_;
    ack.dst = pkt.src;
    ack.size = ack_size_;
    ack.seq = expected_seq_;
    ack.kind = PacketKind::Ack;
    ack.sent_at = now;
    return ack;
}

int64_t TcpSink::take_interval_bytes() {
    int64_t b = bytes_received_;
    bytes_received_ = 0;
    return b;
}

}  // namespace dropsim
