#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>

#include "dropsim/event_queue.hpp"
#include "dropsim/packet.hpp"

namespace dropsim {

struct TcpConfig {
    int mss = 210;            // bytes per data packet
    int ack_size = 40;        // bytes
    double initial_cwnd = 1.0;      // packets
    double initial_ssthresh = 64.0; // packets
    int rcv_window = 20;            // packets
    Seconds initial_rto = 1.0;
    Seconds min_rto = 0.2;
    Seconds max_rto = 60.0;
};

// Tahoe sender: slow start, congestion avoidance, timeout recovery, and
// 3-dup-ack fast retransmit with cwnd reset to 1. Loss recovery is
// go-back-N: next_seq rewinds to the first unacked packet, so one
// recovery sweep repairs every hole in the window. The congestion window
// is a fractional packet count; the emission gate compares integer
// in-flight against floor(min(cwnd, rcv_window)). Sequence numbers are
// whole packets. No handshake: the connection is pre-wired at t=0.
class TcpConn {
public:
    using SendFn = std::function<void(Packet&&, Seconds now)>;

    TcpConn(int id, NodeId src, NodeId dst, int flow_id, TcpConfig cfg,
            EventQueue& events, PacketUidSource& uids, SendFn send);

    // Application hands bytes to the agent; whole-MSS units are emitted as
    // the window allows, a sub-MSS residue waits for more bytes.
    void app_send(int64_t nbytes, Seconds now);

    // Window-gated emission; returns the number of packets sent.
    int try_send(Seconds now);

    // Cumulative ack carrying the receiver's next expected sequence.
    void on_ack(int64_t ack_seq, Seconds now);

    // Retransmission timer expiry.
    void on_timeout(Seconds now);

    int id() const { return id_; }
    NodeId src() const { return src_; }
    NodeId dst() const { return dst_; }
    int flow_id() const { return flow_id_; }
    const TcpConfig& config() const { return cfg_; }

    double cwnd() const { return cwnd_; }
    double ssthresh() const { return ssthresh_; }
    int64_t next_seq() const { return next_seq_; }
    int64_t highest_acked() const { return highest_acked_; }
    int in_flight() const { return static_cast<int>(next_seq_ - highest_acked_); }
    int window() const;
    int64_t app_backlog() const { return app_bytes_total_ - next_seq_ * cfg_.mss; }
    int dup_acks() const { return dup_acks_; }
    Seconds srtt() const { return srtt_; }
    Seconds rttvar() const { return rttvar_; }
    Seconds rto() const { return rto_; }
    uint64_t packets_sent() const { return packets_sent_; }
    uint64_t retransmit_count() const { return retransmit_count_; }
    bool timer_running() const { return timer_.has_value(); }

    // Test observation: called after every ack is processed.
    std::function<void(Seconds now, int64_t ack_seq, double cwnd)> ack_observer;

private:
    struct SendInfo {
        Seconds sent_at = 0.0;
        bool retransmitted = false;
    };

    void send_segment(int64_t seq, Seconds now);
    void enter_loss_recovery(Seconds now);
    void rtt_sample(Seconds m);
    void restart_timer(Seconds now);
    void stop_timer();

    int id_;
    NodeId src_;
    NodeId dst_;
    int flow_id_;
    TcpConfig cfg_;
    EventQueue& events_;
    PacketUidSource& uids_;
    SendFn send_;

    double cwnd_;
    double ssthresh_;
    int64_t next_seq_ = 0;
    int64_t highest_acked_ = 0;
    int64_t max_seq_sent_ = 0;      // high watermark; sends below it are retransmissions
    int64_t recover_seq_ = 0;       // dups below this belong to an ongoing recovery
    int64_t app_bytes_total_ = 0;   // everything the application ever handed over
    int dup_acks_ = 0;
    Seconds srtt_ = 0.0;
    Seconds rttvar_ = 0.0;
    Seconds rto_;
    bool srtt_valid_ = false;
    std::optional<EventId> timer_;
    std::map<int64_t, SendInfo> outstanding_;
    uint64_t packets_sent_ = 0;
    uint64_t retransmit_count_ = 0;
};

// Cumulative-ack receiver with the loss-monitor byte counters. Out of
// order arrivals are held aside so the ack number always names the next
// missing packet.
class TcpSink {
public:
    TcpSink(int id, NodeId node, int flow_id, int ack_size, PacketUidSource& uids);

    // Consume a data packet and produce the cumulative ack to send back.
    Packet on_packet(const Packet& pkt, Seconds now);

    int id() const { return id_; }
    NodeId node() const { return node_; }
    int flow_id() const { return flow_id_; }
    int64_t expected_seq() const { return expected_seq_; }

    int64_t bytes_received() const { return bytes_received_; }  // since last tick
    int64_t total_bytes() const { return total_bytes_; }
    uint64_t total_packets() const { return total_packets_; }

    // Loss-monitor sampling: returns the bytes received over the closing
    // interval and starts a fresh one.
    int64_t take_interval_bytes();

private:
    int id_;
    NodeId node_;
    int flow_id_;
    int ack_size_;
    PacketUidSource& uids_;
    int64_t expected_seq_ = 0;
    std::set<int64_t> out_of_order_;
    int64_t bytes_received_ = 0;
    int64_t total_bytes_ = 0;
    uint64_t total_packets_ = 0;
};

}  // namespace dropsim
