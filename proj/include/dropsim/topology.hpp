#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dropsim/queue.hpp"

namespace dropsim {

using LinkId = int;

// Unidirectional link: one transmitter serializing packets at `bandwidth`
// out of a FIFO/RED queue, then `delay` seconds of propagation.
struct Link {
    LinkId id = -1;
    NodeId from = 0;
    NodeId to = 0;
    double bandwidth = 0.0;  // bits per second
    Seconds delay = 0.0;     // propagation
    QueueState queue;
    bool transmitting = false;
    Seconds busy_until = 0.0;

    Seconds tx_time(int bytes) const { return static_cast<double>(bytes) * 8.0 / bandwidth; }
};

struct Node {
    NodeId id = 0;
    std::string name;
};

// Static topology: nodes, directed links, and next-hop routes derived
// from the link declarations (fewest hops, declaration order breaks ties).
class Topology {
public:
    NodeId add_node(std::string name);
    LinkId add_link(NodeId from, NodeId to, double bandwidth_bps, Seconds delay,
                    QueueState queue);

    Link& link(LinkId id) { return links_[id]; }
    const Link& link(LinkId id) const { return links_[id]; }
    std::vector<Link>& links() { return links_; }
    const std::vector<Link>& links() const { return links_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    std::optional<NodeId> find_node(const std::string& name) const;

    // Call once the graph is final.
    void build_routes();
    // Outgoing link at `at` for traffic destined to `dst`; -1 if unroutable.
    LinkId next_hop(NodeId at, NodeId dst) const;
    bool has_route(NodeId from, NodeId to) const;

private:
    std::vector<Node> nodes_;
    std::vector<Link> links_;
    std::vector<std::vector<LinkId>> next_hop_;  // [at][dst]
};

}  // namespace dropsim
