#include "dropsim/topology.hpp"

#include <limits>
#include <queue>

namespace dropsim {

NodeId Topology::add_node(std::string name) {
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(Node{id, std::move(name)});
    return id;
}

LinkId Topology::add_link(NodeId from, NodeId to, double bandwidth_bps, Seconds delay,
                          QueueState queue) {
    Link l;
    l.id = static_cast<LinkId>(links_.size());
    l.from = from;
    l.to = to;
    l.bandwidth = bandwidth_bps;
    l.delay = delay;
    l.queue = std::move(queue);
    links_.push_back(std::move(l));
    return links_.back().id;
}

std::optional<NodeId> Topology::find_node(const std::string& name) const {
    for (const Node& n : nodes_)
        if (n.name == name)
            return n.id;
    return std::nullopt;
}

void Topology::build_routes() {
    const int n = node_count();
    next_hop_.assign(n, std::vector<LinkId>(n, -1));

    // Hop distances to each destination over the reversed graph, then the
    // first-declared link that makes progress becomes the next hop.
    std::vector<std::vector<LinkId>> in_links(n);
    for (const Link& l : links_)
        in_links[l.to].push_back(l.id);

    constexpr int kInf = std::numeric_limits<int>::max();
    for (NodeId dst = 0; dst < n; ++dst) {
        std::vector<int> dist(n, kInf);
        dist[dst] = 0;
        std::queue<NodeId> bfs;
        bfs.push(dst);
        while (!bfs.empty()) {
            NodeId v = bfs.front();
            bfs.pop();
            for (LinkId lid : in_links[v]) {
                NodeId u = links_[lid].from;
                if (dist[u] == kInf) {
                    dist[u] = dist[v] + 1;
                    bfs.push(u);
                }
            }
        }
        for (const Link& l : links_) {
            if (dist[l.from] != kInf && dist[l.to] != kInf &&
                dist[l.to] + 1 == dist[l.from] && next_hop_[l.from][dst] == -1) {
                next_hop_[l.from][dst] = l.id;
            }
        }
    }
}

LinkId Topology::next_hop(NodeId at, NodeId dst) const {
    if (next_hop_.empty() || at == dst)
        return -1;
    return next_hop_[at][dst];
}

bool Topology::has_route(NodeId from, NodeId to) const {
    if (from == to)
        return true;
    NodeId at = from;
    // next_hop chains strictly decrease the hop distance, so this walk
    // terminates.
    while (at != to) {
        LinkId lid = next_hop(at, to);
        if (lid < 0)
            return false;
        at = links_[lid].to;
    }
    return true;
}

}  // namespace dropsim
