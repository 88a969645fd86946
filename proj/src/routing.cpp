#include "sdnapl/routing.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "sdnapl/errors.hpp"

namespace sdnapl {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

int pick(const std::vector<int>& options, RngStream& rng) {
    if (options.size() == 1) return options.front();
    return options[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(options.size())))];
}

}  // namespace

RouterContext::RouterContext(const TwoLayerNetwork& net) : net_(&net) {
    const int n = net.n;
    const auto gid = [n](int domain, int node) { return domain * n + node; };
    adj_.resize(static_cast<std::size_t>(net.m) * static_cast<std::size_t>(n));
    for (int d = 0; d < net.m; ++d)
        for (const auto& e : net.domains[static_cast<std::size_t>(d)].edges) {
            adj_[static_cast<std::size_t>(gid(d, e.u))].emplace_back(gid(d, e.v), e.weight);
            adj_[static_cast<std::size_t>(gid(d, e.v))].emplace_back(gid(d, e.u), e.weight);
        }
    for (const auto& l : net.inter_links) {
        crossings_[{l.domain_a, l.domain_b}].push_back({l.node_a, l.node_b});
        crossings_[{l.domain_b, l.domain_a}].push_back({l.node_b, l.node_a});
        adj_[static_cast<std::size_t>(gid(l.domain_a, l.node_a))].emplace_back(gid(l.domain_b, l.node_b), 1);
        adj_[static_cast<std::size_t>(gid(l.domain_b, l.node_b))].emplace_back(gid(l.domain_a, l.node_a), 1);
    }
}

void RouterContext::check_request(const FlowRequest& req) const {
    for (const NodeRef& r : {req.src, req.dst}) {
        if (r.domain < 0 || r.domain >= net_->m)
            throw ValidationError("domain id " + std::to_string(r.domain) + " out of range");
        if (r.node < 0 || r.node >= net_->n)
            throw ValidationError("node id " + std::to_string(r.node) + " out of range");
    }
    if (req.src.domain == req.dst.domain)
        throw ValidationError("src and dst must lie in different domains");
    if (req.src == req.dst) throw ValidationError("src and dst coincide");
}

std::vector<int> RouterContext::domain_path(int src_domain, int dst_domain, RngStream& rng) const {
    const auto& g = net_->domain_wise;
    std::vector<int> dist(static_cast<std::size_t>(net_->m), -1);
    std::queue<int> frontier;
    dist[static_cast<std::size_t>(src_domain)] = 0;
    frontier.push(src_domain);
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int v : g.adj[static_cast<std::size_t>(u)]) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                frontier.push(v);
            }
        }
    }
    if (dist[static_cast<std::size_t>(dst_domain)] < 0)
        throw InternalError("domain-wise topology is disconnected");

    // Walk back from dst picking uniformly among predecessors one level up.
    std::vector<int> path{dst_domain};
    int x = dst_domain;
    while (x != src_domain) {
        std::vector<int> preds;
        for (int y : g.adj[static_cast<std::size_t>(x)])
            if (dist[static_cast<std::size_t>(y)] == dist[static_cast<std::size_t>(x)] - 1)
                preds.push_back(y);
        x = pick(preds, rng);
        path.push_back(x);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// Dijkstra over global node ids restricted to the domains marked in
// `allowed`; `weighted` false counts hops instead of weight units.
void dijkstra(const TwoLayerNetwork& net, const std::vector<std::vector<std::pair<int, int>>>& adj,
              int start, const std::vector<char>& allowed, bool weighted,
              std::vector<std::int64_t>& dist) {
    dist.assign(adj.size(), kInf);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[static_cast<std::size_t>(start)] = 0;
    heap.emplace(0, start);
    const int n = net.n;
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
            if (!allowed[static_cast<std::size_t>(v / n)]) continue;
            const std::int64_t nd = d + (weighted ? w : 1);
            if (nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                heap.emplace(nd, v);
            }
        }
    }
}

}  // namespace

RoutePath RouterContext::greedy_route(const FlowRequest& req, bool weighted, int tau,
                                      Scenario scenario, RngStream& rng) const {
    check_request(req);
    if (tau < 1) throw ValidationError("tau must be at least 1");
    const int n = net_->n;
    const auto gid = [n](int domain, int node) { return domain * n + node; };
    const auto& adj = adj_;

    const std::vector<int> dpath = domain_path(req.src.domain, req.dst.domain, rng);
    const int q = static_cast<int>(dpath.size());

    RoutePath out;
    out.scenario = scenario;
    out.tau = scenario == Scenario::PS ? tau : 0;
    out.domain_sequence = dpath;
    out.nodes.push_back(req.src);

    std::vector<char> allowed(static_cast<std::size_t>(net_->m), 0);
    std::vector<std::int64_t> dist;
    NodeRef current = req.src;

    for (int begin = 0; begin < q; begin += tau) {
        const int end = std::min(begin + tau, q);
        const bool last_cluster = end == q;
        std::fill(allowed.begin(), allowed.end(), 0);
        for (int i = begin; i < end; ++i) allowed[static_cast<std::size_t>(dpath[static_cast<std::size_t>(i)])] = 1;

        // Target set: dst inside the last cluster, otherwise every gateway of
        // a cluster domain holding a link into the next cluster's first domain.
        std::vector<int> targets;
        const int next_first = last_cluster ? -1 : dpath[static_cast<std::size_t>(end)];
        if (last_cluster) {
            targets.push_back(gid(req.dst.domain, req.dst.node));
        } else {
            for (int i = begin; i < end; ++i) {
                const int d = dpath[static_cast<std::size_t>(i)];
                const auto it = crossings_.find({d, next_first});
                if (it == crossings_.end()) continue;
                for (const auto& c : it->second) targets.push_back(gid(d, c.from_node));
            }
            std::sort(targets.begin(), targets.end());
            targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
            if (targets.empty()) throw InternalError("no gateway toward next domain");
        }

        dijkstra(*net_, adj, gid(current.domain, current.node), allowed, weighted, dist);

        std::int64_t best = kInf;
        for (int t : targets) best = std::min(best, dist[static_cast<std::size_t>(t)]);
        if (best == kInf) throw InternalError("target unreachable inside cluster");
        std::vector<int> best_targets;
        for (int t : targets)
            if (dist[static_cast<std::size_t>(t)] == best) best_targets.push_back(t);
        const int chosen = pick(best_targets, rng);

        // Walk back along minimal labels, then emit forward.
        std::vector<int> segment{chosen};
        int x = chosen;
        const int start_gid = gid(current.domain, current.node);
        while (x != start_gid) {
            std::vector<int> preds;
            for (const auto& [y, w] : adj[static_cast<std::size_t>(x)]) {
                if (!allowed[static_cast<std::size_t>(y / n)]) continue;
                const std::int64_t cost = weighted ? w : 1;
                if (dist[static_cast<std::size_t>(y)] != kInf &&
                    dist[static_cast<std::size_t>(y)] + cost == dist[static_cast<std::size_t>(x)])
                    preds.push_back(y);
            }
            x = pick(preds, rng);
            segment.push_back(x);
        }
        std::reverse(segment.begin(), segment.end());

        for (std::size_t i = 1; i < segment.size(); ++i) {
            const int from = segment[i - 1];
            const int to = segment[i];
            int w = -1;
            for (const auto& [v, lw] : adj[static_cast<std::size_t>(from)])
                if (v == to) { w = lw; break; }
            out.total_weight += w;
            out.nodes.push_back({to / n, to % n});
        }

        if (!last_cluster) {
            // Cross into the next cluster through a uniformly random link of
            // the chosen gateway.
            const int gw_domain = chosen / n;
            const int gw_node = chosen % n;
            std::vector<int> entries;
            const auto it = crossings_.find({gw_domain, next_first});
            for (const auto& c : it->second)
                if (c.from_node == gw_node) entries.push_back(c.to_node);
            const int u = pick(entries, rng);
            out.nodes.push_back({next_first, u});
            out.total_weight += 1;
            current = {next_first, u};
        }
    }

    out.hop_count = static_cast<int>(out.nodes.size()) - 1;
    return out;
}

RoutePath RouterContext::ms(const FlowRequest& req, RngStream& rng) const {
    return greedy_route(req, /*weighted=*/false, 1, Scenario::MS, rng);
}

RoutePath RouterContext::ss(const FlowRequest& req, RngStream& rng) const {
    return greedy_route(req, /*weighted=*/true, 1, Scenario::SS, rng);
}

RoutePath RouterContext::ps(const FlowRequest& req, int tau, RngStream& rng) const {
    return greedy_route(req, /*weighted=*/true, tau, Scenario::PS, rng);
}

RoutePath RouterContext::cs(const FlowRequest& req) const {
    check_request(req);
    const int n = net_->n;
    const auto gid = [n](int domain, int node) { return domain * n + node; };
    const auto& adj = adj_;

    std::vector<char> allowed(static_cast<std::size_t>(net_->m), 1);
    std::vector<std::int64_t> dist;
    dijkstra(*net_, adj, gid(req.src.domain, req.src.node), allowed, /*weighted=*/true, dist);
    const int dst_gid = gid(req.dst.domain, req.dst.node);
    if (dist[static_cast<std::size_t>(dst_gid)] == kInf)
        throw InternalError("destination unreachable");

    // Deterministic reconstruction: smallest global id among minimal-label
    // predecessors.
    std::vector<int> rev{dst_gid};
    int x = dst_gid;
    const int src_gid = gid(req.src.domain, req.src.node);
    while (x != src_gid) {
        int best = -1;
        for (const auto& [y, w] : adj[static_cast<std::size_t>(x)]) {
            if (dist[static_cast<std::size_t>(y)] == kInf) continue;
            if (dist[static_cast<std::size_t>(y)] + w == dist[static_cast<std::size_t>(x)] &&
                (best < 0 || y < best))
                best = y;
        }
        x = best;
        rev.push_back(x);
    }
    std::reverse(rev.begin(), rev.end());

    RoutePath out;
    out.scenario = Scenario::CS;
    out.total_weight = dist[static_cast<std::size_t>(dst_gid)];
    for (int g : rev) out.nodes.push_back({g / n, g % n});
    out.hop_count = static_cast<int>(out.nodes.size()) - 1;
    for (const NodeRef& r : out.nodes)
        if (out.domain_sequence.empty() || out.domain_sequence.back() != r.domain)
            out.domain_sequence.push_back(r.domain);
    return out;
}

RoutePath RouterContext::route(Scenario s, const FlowRequest& req, int tau, RngStream& rng) const {
    switch (s) {
        case Scenario::MS: return ms(req, rng);
        case Scenario::SS: return ss(req, rng);
        case Scenario::PS: return ps(req, tau, rng);
        case Scenario::CS: return cs(req);
    }
    throw ValidationError("unknown scenario");
}

std::vector<int> domain_wise_shortest_path(const TwoLayerNetwork& net, int src_domain,
                                           int dst_domain, RngStream& rng) {
    return RouterContext(net).domain_path(src_domain, dst_domain, rng);
}

RoutePath route_ms(const TwoLayerNetwork& net, const FlowRequest& req, RngStream& rng) {
    return RouterContext(net).ms(req, rng);
}

RoutePath route_ss(const TwoLayerNetwork& net, const FlowRequest& req, RngStream& rng) {
    return RouterContext(net).ss(req, rng);
}

RoutePath route_ps(const TwoLayerNetwork& net, const FlowRequest& req, int tau, RngStream& rng) {
    return RouterContext(net).ps(req, tau, rng);
}

RoutePath route_cs(const TwoLayerNetwork& net, const FlowRequest& req) {
    return RouterContext(net).cs(req);
}

void verify_path(const TwoLayerNetwork& net, const RoutePath& path, const FlowRequest& req) {
    if (path.nodes.empty()) throw InternalError("empty path");
    if (!(path.nodes.front() == req.src) || !(path.nodes.back() == req.dst))
        throw InternalError("path endpoints do not match the request");
    if (path.hop_count != static_cast<int>(path.nodes.size()) - 1)
        throw InternalError("hop count mismatch");
    std::int64_t total = 0;
    for (std::size_t i = 1; i < path.nodes.size(); ++i) {
        const NodeRef& a = path.nodes[i - 1];
        const NodeRef& b = path.nodes[i];
        if (a.domain == b.domain) {
            const auto& adj = net.domains[static_cast<std::size_t>(a.domain)].adj[static_cast<std::size_t>(a.node)];
            int w = -1;
            for (const auto& [v, lw] : adj)
                if (v == b.node) { w = lw; break; }
            if (w < 0) throw InternalError("missing intra-domain edge on path");
            total += w;
        } else {
            bool found = false;
            for (const auto& l : net.inter_links) {
                if ((l.domain_a == a.domain && l.node_a == a.node && l.domain_b == b.domain && l.node_b == b.node) ||
                    (l.domain_a == b.domain && l.node_a == b.node && l.domain_b == a.domain && l.node_b == a.node)) {
                    found = true;
                    break;
                }
            }
            if (!found) throw InternalError("missing inter-domain link on path");
            total += 1;
        }
    }
    if (total != path.total_weight) throw InternalError("total weight mismatch");
}

}  // namespace sdnapl
