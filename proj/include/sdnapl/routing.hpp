#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "sdnapl/netgen.hpp"
#include "sdnapl/rng.hpp"
#include "sdnapl/scenario.hpp"

namespace sdnapl {

struct NodeRef {
    int domain = 0;
    int node = 0;

    bool operator==(const NodeRef&) const = default;
};

// src and dst must lie in different domains.
struct FlowRequest {
    NodeRef src;
    NodeRef dst;
};

struct RoutePath {
    Scenario scenario = Scenario::MS;
    int tau = 0;  // only meaningful for PS
    std::vector<NodeRef> nodes;
    std::int64_t total_weight = 0;
    int hop_count = 0;
    // For MS/SS/PS: the selected shortest domain-wise path (no repeats).
    // For CS: the domains actually visited, consecutive runs collapsed.
    std::vector<int> domain_sequence;
};

// Precomputed routing view of one network; immutable and shareable across
// threads.  Tie-breaks take an explicit stream: equal labels lead to a
// uniform choice among minimal-distance targets and then among predecessors
// attaining the minimal label while walking the path back.
class RouterContext {
public:
    explicit RouterContext(const TwoLayerNetwork& net);

    const TwoLayerNetwork& net() const { return *net_; }

    std::vector<int> domain_path(int src_domain, int dst_domain, RngStream& rng) const;

    RoutePath ms(const FlowRequest& req, RngStream& rng) const;
    RoutePath ss(const FlowRequest& req, RngStream& rng) const;
    RoutePath ps(const FlowRequest& req, int tau, RngStream& rng) const;
    RoutePath cs(const FlowRequest& req) const;

    RoutePath route(Scenario s, const FlowRequest& req, int tau, RngStream& rng) const;

private:
    struct Crossing {
        int from_node = 0;
        int to_node = 0;
    };

    RoutePath greedy_route(const FlowRequest& req, bool weighted, int tau, Scenario scenario,
                           RngStream& rng) const;
    void check_request(const FlowRequest& req) const;

    const TwoLayerNetwork* net_;
    // Links keyed by ordered domain pair (from, to).
    std::map<std::pair<int, int>, std::vector<Crossing>> crossings_;
    // Flat adjacency over global ids (domain * n + node): intra edges with
    // their weights plus unit-weight inter-domain links.
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

// Convenience wrappers building a context per call.
std::vector<int> domain_wise_shortest_path(const TwoLayerNetwork& net, int src_domain,
                                           int dst_domain, RngStream& rng);
RoutePath route_ms(const TwoLayerNetwork& net, const FlowRequest& req, RngStream& rng);
RoutePath route_ss(const TwoLayerNetwork& net, const FlowRequest& req, RngStream& rng);
RoutePath route_ps(const TwoLayerNetwork& net, const FlowRequest& req, int tau, RngStream& rng);
RoutePath route_cs(const TwoLayerNetwork& net, const FlowRequest& req);

// Structural check used by tests and tooling: consecutive nodes joined by a
// real link, weights summing to total_weight, endpoints matching the request.
void verify_path(const TwoLayerNetwork& net, const RoutePath& path, const FlowRequest& req);

}  // namespace sdnapl
