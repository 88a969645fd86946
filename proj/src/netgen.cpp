#include "sdnapl/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <tuple>

#include "sdnapl/errors.hpp"

namespace sdnapl {

bool UnweightedGraph::has_edge(int u, int v) const {
    const auto& nb = adj[static_cast<std::size_t>(u)];
    return std::find(nb.begin(), nb.end(), v) != nb.end();
}

void UnweightedGraph::add_edge(int u, int v) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
}

int UnweightedGraph::edge_count() const {
    int total = 0;
    for (const auto& nb : adj) total += static_cast<int>(nb.size());
    return total / 2;
}

bool UnweightedGraph::connected() const {
    if (node_count == 0) return true;
    std::vector<char> seen(static_cast<std::size_t>(node_count), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == node_count;
}

void UnweightedGraph::sort_adjacency() {
    for (auto& nb : adj) std::sort(nb.begin(), nb.end());
}

namespace {

std::vector<std::vector<int>> components_of(const UnweightedGraph& g) {
    std::vector<int> comp(static_cast<std::size_t>(g.node_count), -1);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.node_count; ++s) {
        if (comp[static_cast<std::size_t>(s)] >= 0) continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<int> stack{s};
        comp[static_cast<std::size_t>(s)] = id;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            out[static_cast<std::size_t>(id)].push_back(u);
            for (int v : g.adj[static_cast<std::size_t>(u)]) {
                if (comp[static_cast<std::size_t>(v)] < 0) {
                    comp[static_cast<std::size_t>(v)] = id;
                    stack.push_back(v);
                }
            }
        }
    }
    return out;
}

// Joins components with random cross edges; one repair per extra component.
void repair_connectivity(UnweightedGraph& g, RngStream& rng, GenStats* stats) {
    auto comps = components_of(g);
    while (comps.size() > 1) {
        // Merge the last component into the growing first one.
        const auto& a = comps.front();
        const auto& b = comps.back();
        const int u = a[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(a.size())))];
        const int v = b[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(b.size())))];
        g.add_edge(u, v);
        if (stats) ++stats->connectivity_repairs;
        comps.front().insert(comps.front().end(), b.begin(), b.end());
        comps.pop_back();
    }
}

}  // namespace

UnweightedGraph graph_from_degree_pmf(int n, const DiscretePmf& degree, RngStream& rng,
                                      GenStats* stats) {
    if (n < 2) throw ValidationError("graph needs at least 2 vertices");
    UnweightedGraph g;
    g.node_count = n;
    g.adj.assign(static_cast<std::size_t>(n), {});

    CdfSampler sampler = [&] {
        std::vector<int> values;
        for (int v = 0; v <= degree.max_value(); ++v) values.push_back(v);
        return CdfSampler(std::move(values), degree.masses());
    }();

    std::vector<int> remaining(static_cast<std::size_t>(n));
    long total = 0;
    for (int v = 0; v < n; ++v) {
        remaining[static_cast<std::size_t>(v)] = sampler.sample(rng);
        total += remaining[static_cast<std::size_t>(v)];
    }
    if (total < n - 1)
        throw InfeasibleSequenceError("degree targets sum to " + std::to_string(total) +
                                      ", below n-1 = " + std::to_string(n - 1));

    std::vector<int> active;
    for (int v = 0; v < n; ++v)
        if (remaining[static_cast<std::size_t>(v)] > 0) active.push_back(v);

    auto withdraw = [&](int v) {
        const auto it = std::find(active.begin(), active.end(), v);
        active.erase(it);
    };

    // Random stub pairing: connect random legal pairs until none remains.
    // A bounded number of blind picks keeps the common case cheap; the
    // exhaustive scan decides termination.
    while (active.size() >= 2) {
        bool added = false;
        for (int attempt = 0; attempt < 64 && !added; ++attempt) {
            const int iu = rng.uniform_int(static_cast<int>(active.size()));
            int iv = rng.uniform_int(static_cast<int>(active.size()) - 1);
            if (iv >= iu) ++iv;
            const int u = active[static_cast<std::size_t>(iu)];
            const int v = active[static_cast<std::size_t>(iv)];
            if (g.has_edge(u, v)) continue;
            g.add_edge(u, v);
            added = true;
            if (--remaining[static_cast<std::size_t>(u)] == 0) withdraw(u);
            if (--remaining[static_cast<std::size_t>(v)] == 0) withdraw(v);
        }
        if (added) continue;
        // Exhaustive legality scan; stop when no legal pair is left.
        std::vector<std::pair<int, int>> legal;
        for (std::size_t i = 0; i < active.size(); ++i)
            for (std::size_t j = i + 1; j < active.size(); ++j)
                if (!g.has_edge(active[i], active[j])) legal.emplace_back(active[i], active[j]);
        if (legal.empty()) break;
        const auto [u, v] = legal[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(legal.size())))];
        g.add_edge(u, v);
        if (--remaining[static_cast<std::size_t>(u)] == 0) withdraw(u);
        if (--remaining[static_cast<std::size_t>(v)] == 0) withdraw(v);
    }

    if (stats) {
        stats->leftover_stubs +=
            std::accumulate(remaining.begin(), remaining.end(), 0);
    }
    repair_connectivity(g, rng, stats);
    g.sort_adjacency();
    return g;
}

UnweightedGraph graph_ba(int n, int rho, RngStream& rng) {
    if (n < 2) throw ValidationError("graph needs at least 2 vertices");
    if (rho < 1) throw ValidationError("attachment count must be at least 1");
    UnweightedGraph g;
    g.node_count = n;
    g.adj.assign(static_cast<std::size_t>(n), {});
    g.add_edge(0, 1);
    // One entry per degree unit; sampling from it is sampling by degree.
    std::vector<int> stubs{0, 1};
    for (int v = 2; v < n; ++v) {
        const int want = std::min(rho, v);
        std::set<int> targets;
        if (want == v) {
            for (int t = 0; t < v; ++t) targets.insert(t);
        } else {
            while (static_cast<int>(targets.size()) < want)
                targets.insert(stubs[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(stubs.size())))]);
        }
        for (int t : targets) {
            g.add_edge(v, t);
            stubs.push_back(v);
            stubs.push_back(t);
        }
    }
    g.sort_adjacency();
    return g;
}

UnweightedGraph graph_er(int n, double p, RngStream& rng, GenStats* stats) {
    if (n < 2) throw ValidationError("graph needs at least 2 vertices");
    if (p < 0.0 || p > 1.0) throw ValidationError("edge probability must lie in [0, 1]");
    UnweightedGraph g;
    g.node_count = n;
    g.adj.assign(static_cast<std::size_t>(n), {});
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_double() < p) g.add_edge(u, v);
    repair_connectivity(g, rng, stats);
    g.sort_adjacency();
    return g;
}

TopologySource TopologySource::from_degree_pmf(DiscretePmf pmf) {
    TopologySource s;
    s.kind = Kind::DegreePmf;
    s.degree = std::move(pmf);
    return s;
}

TopologySource TopologySource::ba(int rho) {
    TopologySource s;
    s.kind = Kind::Ba;
    s.rho = rho;
    return s;
}

TopologySource TopologySource::er(double p) {
    TopologySource s;
    s.kind = Kind::Er;
    s.p = p;
    return s;
}

UnweightedGraph generate_topology(int n, const TopologySource& source, RngStream& rng,
                                  GenStats* stats) {
    switch (source.kind) {
        case TopologySource::Kind::DegreePmf:
            return graph_from_degree_pmf(n, source.degree, rng, stats);
        case TopologySource::Kind::Ba:
            return graph_ba(n, source.rho, rng);
        case TopologySource::Kind::Er:
            return graph_er(n, source.p, rng, stats);
    }
    throw ValidationError("unknown topology source");
}

namespace {

// RNG substream tags; distinct constants keep the streams independent.
constexpr std::uint64_t kTagDomainWise = 0x00D0;
constexpr std::uint64_t kTagIntraBase = 0x1000000;
constexpr std::uint64_t kTagWeightBase = 0x2000000;
constexpr std::uint64_t kTagInterBase = 0x3000000;

UnweightedGraph draw_topology(int n, const TopologySource& source, RngStream& rng,
                              GenStats* stats, const AssembleOptions& opts) {
    if (!opts.reject_disconnected)
        return generate_topology(n, source, rng, stats);
    for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
        GenStats trial;
        UnweightedGraph g = generate_topology(n, source, rng, &trial);
        if (trial.connectivity_repairs == 0) {
            if (stats) {
                stats->leftover_stubs += trial.leftover_stubs;
                stats->retries += attempt;
            }
            return g;
        }
        if (stats) ++stats->retries;
    }
    throw InfeasibleSequenceError("no connected draw within " +
                                  std::to_string(opts.max_retries) + " attempts");
}

}  // namespace

std::vector<int> TwoLayerNetwork::gateways_to(int domain, int next) const {
    std::vector<int> out;
    for (const auto& l : inter_links) {
        if (l.domain_a == domain && l.domain_b == next) out.push_back(l.node_a);
        else if (l.domain_b == domain && l.domain_a == next) out.push_back(l.node_b);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<int, int>> TwoLayerNetwork::links_between(int a, int b) const {
    std::vector<std::pair<int, int>> out;
    for (const auto& l : inter_links) {
        if (l.domain_a == a && l.domain_b == b) out.emplace_back(l.node_a, l.node_b);
        else if (l.domain_a == b && l.domain_b == a) out.emplace_back(l.node_b, l.node_a);
    }
    return out;
}

double expected_inter_links(int n, int beta) {
    const double pairs = static_cast<double>(n) * n;
    return pairs * (1.0 - std::pow(1.0 - 1.0 / pairs, beta));
}

Assembled assemble(int m, int n, int beta, const TopologySource& intra,
                   const TopologySource& inter, const DiscretePmf& weight,
                   std::uint64_t seed, const AssembleOptions& opts) {
    if (m < 2) throw ValidationError("need at least 2 domains");
    if (n < 1) throw ValidationError("need at least 1 node per domain");
    if (beta < 1) throw ValidationError("beta must be at least 1");

    Assembled out;
    TwoLayerNetwork& net = out.net;
    net.m = m;
    net.n = n;
    net.beta = beta;
    net.seed = seed;

    const RngStream root(seed);

    RngStream dw_rng = root.fork(kTagDomainWise);
    net.domain_wise = draw_topology(m, inter, dw_rng, &out.domain_wise_stats, opts);

    CdfSampler weight_sampler = [&] {
        std::vector<int> values;
        for (int v = 0; v <= weight.max_value(); ++v) values.push_back(v);
        return CdfSampler(std::move(values), weight.masses());
    }();

    net.domains.resize(static_cast<std::size_t>(m));
    for (int d = 0; d < m; ++d) {
        RngStream topo_rng = root.fork(kTagIntraBase + static_cast<std::uint64_t>(d));
        UnweightedGraph g = draw_topology(n, intra, topo_rng, &out.intra_stats, opts);
        IntraDomainGraph& dom = net.domains[static_cast<std::size_t>(d)];
        dom.node_count = n;
        dom.adj.assign(static_cast<std::size_t>(n), {});
        RngStream w_rng = root.fork(kTagWeightBase + static_cast<std::uint64_t>(d));
        for (int u = 0; u < n; ++u) {
            for (int v : g.adj[static_cast<std::size_t>(u)]) {
                if (v <= u) continue;
                const int w = weight_sampler.sample(w_rng);
                dom.edges.push_back({u, v, w});
            }
        }
        std::sort(dom.edges.begin(), dom.edges.end(), [](const IntraEdge& a, const IntraEdge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
        for (const auto& e : dom.edges) {
            dom.adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.weight);
            dom.adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.weight);
        }
    }

    // beta rounds of random endpoint picks per domain-wise edge; duplicate
    // picks are skipped, so each pair realizes between 1 and beta links.
    std::set<std::tuple<int, int, int, int>> links;
    for (int a = 0; a < m; ++a) {
        for (int b : net.domain_wise.adj[static_cast<std::size_t>(a)]) {
            if (b <= a) continue;
            RngStream link_rng = root.fork(kTagInterBase + static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(b));
            for (int round = 0; round < beta; ++round) {
                const int na = link_rng.uniform_int(n);
                const int nb = link_rng.uniform_int(n);
                links.emplace(a, na, b, nb);
            }
        }
    }
    for (const auto& [da, na, db, nb] : links)
        net.inter_links.push_back({da, na, db, nb});
    out.realized_inter_links = static_cast<int>(net.inter_links.size());
    return out;
}

}  // namespace sdnapl
