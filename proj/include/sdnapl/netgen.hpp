#pragma once

#include <cstdint>
#include <vector>

#include "sdnapl/pmf.hpp"
#include "sdnapl/rng.hpp"

namespace sdnapl {

// Simple undirected graph on vertices 0..node_count-1 with sorted adjacency
// lists and no self-loops or parallel edges.
struct UnweightedGraph {
    int node_count = 0;
    std::vector<std::vector<int>> adj;

    bool has_edge(int u, int v) const;
    void add_edge(int u, int v);
    int edge_count() const;
    bool connected() const;
    void sort_adjacency();
};

struct GenStats {
    int connectivity_repairs = 0;  // edges added to join components
    int leftover_stubs = 0;        // unmatched degree targets after pairing
    int retries = 0;               // rejected draws in reject-and-retry mode
};

// Random graph matching a target degree distribution: every vertex draws a
// target degree, random legal pairs are connected until none remains, then
// components are joined by repair edges.
UnweightedGraph graph_from_degree_pmf(int n, const DiscretePmf& degree, RngStream& rng,
                                      GenStats* stats = nullptr);

// Preferential attachment starting from two connected seed vertices; each new
// vertex attaches to `rho` distinct existing vertices chosen proportionally
// to degree (all of them when fewer exist).
UnweightedGraph graph_ba(int n, int rho, RngStream& rng);

// Independent edge probability p, followed by connectivity repair.
UnweightedGraph graph_er(int n, double p, RngStream& rng, GenStats* stats = nullptr);

struct TopologySource {
    enum class Kind { DegreePmf, Ba, Er };

    Kind kind = Kind::Ba;
    DiscretePmf degree = DiscretePmf::point_mass(0);
    int rho = 1;
    double p = 0.0;

    static TopologySource from_degree_pmf(DiscretePmf pmf);
    static TopologySource ba(int rho);
    static TopologySource er(double p);
};

UnweightedGraph generate_topology(int n, const TopologySource& source, RngStream& rng,
                                  GenStats* stats = nullptr);

struct IntraEdge {
    int u = 0, v = 0;  // u < v
    int weight = 1;
};

struct IntraDomainGraph {
    int node_count = 0;
    std::vector<IntraEdge> edges;                       // sorted by (u, v)
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, weight)
};

struct InterLink {
    int domain_a = 0, node_a = 0;  // domain_a < domain_b; link weight is 1
    int domain_b = 0, node_b = 0;
};

// Two-layer network: a domain-wise topology on m domains, one intra-domain
// graph of n nodes per domain, and the inter-domain links realized by beta
// rounds of random endpoint picking per domain-wise edge.
struct TwoLayerNetwork {
    int m = 0, n = 0, beta = 1;
    std::uint64_t seed = 0;
    UnweightedGraph domain_wise;
    std::vector<IntraDomainGraph> domains;
    std::vector<InterLink> inter_links;  // sorted by (domain_a, node_a, domain_b, node_b)

    // Nodes of `domain` holding a link into `next`.
    std::vector<int> gateways_to(int domain, int next) const;
    // (node in a, node in b) pairs for every link between the two domains.
    std::vector<std::pair<int, int>> links_between(int a, int b) const;
};

struct AssembleOptions {
    // When set, disconnected topology draws are rejected and redrawn instead
    // of repaired, up to max_retries per graph.
    bool reject_disconnected = false;
    int max_retries = 100;
};

struct Assembled {
    TwoLayerNetwork net;
    GenStats domain_wise_stats;
    GenStats intra_stats;        // pooled over all domains
    int realized_inter_links = 0;
};

Assembled assemble(int m, int n, int beta, const TopologySource& intra,
                   const TopologySource& inter, const DiscretePmf& weight,
                   std::uint64_t seed, const AssembleOptions& opts = {});

// Expected number of distinct links per adjacent domain pair after beta
// rounds over n*n endpoint combinations.
double expected_inter_links(int n, int beta);

}  // namespace sdnapl
