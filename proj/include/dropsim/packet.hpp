#pragma once

#include <cstdint>

namespace dropsim {

using Seconds = double;  // simulated time
using NodeId = int;

enum class PacketKind { Tcp, Ack };

inline const char* packet_type_name(PacketKind k) {
    return k == PacketKind::Tcp ? "tcp" : "ack";
}

// The unit that flows source -> router -> sink. seq is the per-flow TCP
// sequence for data packets and the cumulative ack number for acks.
struct Packet {
    uint64_t uid = 0;       // globally unique, increasing in creation order
    int flow_id = 0;
    NodeId src = 0;
    NodeId dst = 0;
    int size = 0;           // bytes
    int64_t seq = 0;
    PacketKind kind = PacketKind::Tcp;
    Seconds sent_at = 0.0;
};

// Hands out run-unique packet uids in creation order.
struct PacketUidSource {
    uint64_t next = 0;
    uint64_t take() { return next++; }
};

}  // namespace dropsim
