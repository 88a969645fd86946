#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "sdnapl/errors.hpp"
#include "sdnapl/net_io.hpp"
#include "sdnapl/netgen.hpp"
#include "sdnapl/routing.hpp"

using namespace sdnapl;

namespace {

// Two domains of three nodes; domain 0 offers a one-hop heavy route (weight
// 10) and a two-hop light route (total 3) to its single gateway.
const char* kHeavyLightDump =
    "2 3 1 7\n"
    "0 0 1 1\n"
    "0 0 2 10\n"
    "0 1 2 2\n"
    "1 0 1 1\n"
    "1 0 2 1\n"
    "1 1 2 1\n"
    "X 0 2 1 0\n";

// Triangle of two-node domains: the direct domain route is weight-expensive,
// the detour through domain 1 is nearly free.
const char* kDetourDump =
    "3 2 1 9\n"
    "0 0 1 100\n"
    "1 0 1 1\n"
    "2 0 1 100\n"
    "X 0 0 1 0\n"
    "X 0 1 2 1\n"
    "X 1 1 2 0\n";

// Cycle of four single-node domains: two equally short domain routes.
const char* kFourCycleDump =
    "4 1 1 3\n"
    "X 0 0 1 0\n"
    "X 0 0 3 0\n"
    "X 1 0 2 0\n"
    "X 2 0 3 0\n";

// Cycle of five single-node domains: every shortest domain route is unique.
const char* kFiveCycleDump =
    "5 1 1 3\n"
    "X 0 0 1 0\n"
    "X 0 0 4 0\n"
    "X 1 0 2 0\n"
    "X 2 0 3 0\n"
    "X 3 0 4 0\n";

// Weight of a node sequence read off the network itself; -1 when some
// consecutive pair is not joined by any link.
std::int64_t recompute_weight(const TwoLayerNetwork& net, const std::vector<NodeRef>& nodes) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const auto& a = nodes[i];
        const auto& b = nodes[i + 1];
        if (a.domain == b.domain) {
            int w = -1;
            for (const auto& [v, ew] : net.domains[static_cast<std::size_t>(a.domain)]
                                           .adj[static_cast<std::size_t>(a.node)])
                if (v == b.node) w = ew;
            if (w < 0) return -1;
            total += w;
        } else {
            bool found = false;
            for (const auto& l : net.inter_links) {
                if ((l.domain_a == a.domain && l.node_a == a.node && l.domain_b == b.domain &&
                     l.node_b == b.node) ||
                    (l.domain_a == b.domain && l.node_a == b.node && l.domain_b == a.domain &&
                     l.node_b == a.node))
                    found = true;
            }
            if (!found) return -1;
            total += 1;
        }
    }
    return total;
}

// Reference global shortest path over the flat graph (independent of the
// router's own Dijkstra): plain label-correcting search.
std::int64_t flat_shortest(const TwoLayerNetwork& net, NodeRef src, NodeRef dst) {
    const int n = net.n;
    const int total = net.m * n;
    const auto gid = [&](NodeRef r) { return r.domain * n + r.node; };
    std::vector<std::int64_t> dist(static_cast<std::size_t>(total), -1);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(gid(src))] = 0;
    heap.push({0, gid(src)});
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(total));
    for (int d = 0; d < net.m; ++d)
        for (const auto& e : net.domains[static_cast<std::size_t>(d)].edges) {
            adj[static_cast<std::size_t>(d * n + e.u)].emplace_back(d * n + e.v, e.weight);
            adj[static_cast<std::size_t>(d * n + e.v)].emplace_back(d * n + e.u, e.weight);
        }
    for (const auto& l : net.inter_links) {
        const int a = l.domain_a * n + l.node_a;
        const int b = l.domain_b * n + l.node_b;
        adj[static_cast<std::size_t>(a)].emplace_back(b, 1);
        adj[static_cast<std::size_t>(b)].emplace_back(a, 1);
    }
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
            const std::int64_t nd = d + w;
            if (dist[static_cast<std::size_t>(v)] < 0 || nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                heap.push({nd, v});
            }
        }
    }
    return dist[static_cast<std::size_t>(gid(dst))];
}

// Weighted shortest distances inside one domain from a source node.
std::vector<std::int64_t> domain_distances(const IntraDomainGraph& g, int src) {
    std::vector<std::int64_t> dist(static_cast<std::size_t>(g.node_count), -1);
    using Item = std::pair<std::int64_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[static_cast<std::size_t>(src)] = 0;
    heap.push({0, src});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d != dist[static_cast<std::size_t>(u)]) continue;
        for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)]) {
            const std::int64_t nd = d + w;
            if (dist[static_cast<std::size_t>(v)] < 0 || nd < dist[static_cast<std::size_t>(v)]) {
                dist[static_cast<std::size_t>(v)] = nd;
                heap.push({nd, v});
            }
        }
    }
    return dist;
}

// Hop distances inside one domain from a source node.
std::vector<int> domain_hops(const IntraDomainGraph& g, int src) {
    std::vector<int> dist(static_cast<std::size_t>(g.node_count), -1);
    std::queue<int> q;
    dist[static_cast<std::size_t>(src)] = 0;
    q.push(src);
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        for (const auto& [v, w] : g.adj[static_cast<std::size_t>(u)])
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                q.push(v);
            }
    }
    return dist;
}

// The leading same-domain stretch of a path: nodes until the first crossing.
std::vector<NodeRef> first_segment(const RoutePath& path) {
    std::vector<NodeRef> seg{path.nodes.front()};
    for (std::size_t i = 1; i < path.nodes.size(); ++i) {
        if (path.nodes[i].domain != path.nodes.front().domain) break;
        seg.push_back(path.nodes[i]);
    }
    return seg;
}

}  // namespace

TEST_CASE("weighted greedy prefers light detours where hop greedy goes direct") {
    const auto net = parse_network(kHeavyLightDump, "fixture");
    const FlowRequest req{{0, 0}, {1, 0}};
    RngStream rng(5);

    const auto ms = route_ms(net, req, rng);
    verify_path(net, ms, req);
    CHECK(ms.total_weight == 11);
    CHECK(ms.hop_count == 2);

    const auto ss = route_ss(net, req, rng);
    verify_path(net, ss, req);
    CHECK(ss.total_weight == 4);
    CHECK(ss.hop_count == 3);

    const auto cs = route_cs(net, req);
    verify_path(net, cs, req);
    CHECK(cs.total_weight == 4);
}

TEST_CASE("the global optimum may leave the shortest domain route") {
    const auto net = parse_network(kDetourDump, "fixture");
    const FlowRequest req{{0, 0}, {2, 0}};
    RngStream rng(5);

    // Every domain-route-bound scenario is forced through the heavy links.
    const auto ms = route_ms(net, req, rng);
    const auto ss = route_ss(net, req, rng);
    const auto ps2 = route_ps(net, req, 2, rng);
    CHECK(ms.total_weight == 201);
    CHECK(ss.total_weight == 201);
    CHECK(ps2.total_weight == 201);
    CHECK(ss.domain_sequence == std::vector<int>{0, 2});

    const auto cs = route_cs(net, req);
    verify_path(net, cs, req);
    CHECK(cs.total_weight == 3);
    CHECK(cs.domain_sequence == std::vector<int>{0, 1, 2});
    CHECK(cs.total_weight == flat_shortest(net, req.src, req.dst));
}

TEST_CASE("domain route selection explores ties and respects unique optima") {
    const auto four = parse_network(kFourCycleDump, "fixture");
    std::set<std::vector<int>> seen;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        RngStream rng(seed);
        const auto path = domain_wise_shortest_path(four, 0, 2, rng);
        REQUIRE(path.size() == 3);
        CHECK(path.front() == 0);
        CHECK(path.back() == 2);
        seen.insert(path);
    }
    CHECK(seen.size() == 2);  // both three-domain routes observed
    CHECK(seen.count({0, 1, 2}) == 1);
    CHECK(seen.count({0, 3, 2}) == 1);

    const auto five = parse_network(kFiveCycleDump, "fixture");
    for (std::uint64_t seed = 0; seed < 16; ++seed) {
        RngStream rng(seed);
        CHECK(domain_wise_shortest_path(five, 0, 2, rng) == std::vector<int>{0, 1, 2});
        CHECK(domain_wise_shortest_path(five, 0, 3, rng) == std::vector<int>{0, 4, 3});
    }
    RngStream rng(1);
    const auto adjacent = domain_wise_shortest_path(five, 2, 3, rng);
    CHECK(adjacent == std::vector<int>{2, 3});
}

TEST_CASE("requests are validated") {
    const auto net = parse_network(kHeavyLightDump, "fixture");
    RngStream rng(1);
    CHECK_THROWS_AS(route_ms(net, FlowRequest{{0, 0}, {0, 2}}, rng), ValidationError);
    CHECK_THROWS_AS(route_ss(net, FlowRequest{{0, 0}, {5, 0}}, rng), ValidationError);
    CHECK_THROWS_AS(route_cs(net, FlowRequest{{0, 9}, {1, 0}}), ValidationError);
    RouterContext ctx(net);
    CHECK_THROWS_AS(ctx.ps(FlowRequest{{0, 0}, {1, 0}}, 0, rng), ValidationError);
}

TEST_CASE("path verification catches corrupted paths") {
    const auto net = parse_network(kHeavyLightDump, "fixture");
    const FlowRequest req{{0, 0}, {1, 0}};
    RngStream rng(5);
    auto path = route_ss(net, req, rng);
    verify_path(net, path, req);

    auto wrong_weight = path;
    wrong_weight.total_weight += 1;
    CHECK_THROWS_AS(verify_path(net, wrong_weight, req), InternalError);

    auto wrong_ends = path;
    wrong_ends.nodes.back() = NodeRef{1, 2};
    CHECK_THROWS_AS(verify_path(net, wrong_ends, req), InternalError);

    auto teleport = path;
    teleport.nodes.insert(teleport.nodes.begin() + 1, NodeRef{0, 2});
    CHECK_THROWS_AS(verify_path(net, teleport, req), InternalError);
}

TEST_CASE("greedy segments are optimal within their domain") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto got = assemble(2, 8, 2, TopologySource::er(0.5), TopologySource::ba(1),
                                  DiscretePmf::from_table({{1, 0.4}, {3, 0.3}, {7, 0.3}}), seed);
        const auto& net = got.net;
        const FlowRequest req{{0, 0}, {1, 3}};
        RouterContext ctx(net);

        // Gateways of domain 0 toward domain 1.
        const auto gws = net.gateways_to(0, 1);
        REQUIRE(!gws.empty());

        RngStream rng(seed * 17);
        const auto ss = ctx.ss(req, rng);
        verify_path(net, ss, req);
        const auto seg = first_segment(ss);
        const auto dist = domain_distances(net.domains[0], 0);
        std::int64_t best = -1;
        for (int g : gws)
            if (dist[static_cast<std::size_t>(g)] >= 0 &&
                (best < 0 || dist[static_cast<std::size_t>(g)] < best))
                best = dist[static_cast<std::size_t>(g)];
        CHECK(recompute_weight(net, seg) == best);

        RngStream rng2(seed * 19);
        const auto ms = ctx.ms(req, rng2);
        verify_path(net, ms, req);
        const auto hseg = first_segment(ms);
        const auto hops = domain_hops(net.domains[0], 0);
        int hbest = -1;
        for (int g : gws)
            if (hops[static_cast<std::size_t>(g)] >= 0 &&
                (hbest < 0 || hops[static_cast<std::size_t>(g)] < hbest))
                hbest = hops[static_cast<std::size_t>(g)];
        CHECK(static_cast<int>(hseg.size()) - 1 == hbest);
    }
}

TEST_CASE("the global optimum matches an independent search and dominates everything") {
    const auto got = assemble(6, 12, 2, TopologySource::ba(1), TopologySource::er(0.4),
                              DiscretePmf::from_table({{1, 0.5}, {4, 0.5}}), 90210);
    const auto& net = got.net;
    RouterContext ctx(net);
    RngStream pick(314);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        const int sd = pick.uniform_int(net.m);
        int dd = pick.uniform_int(net.m - 1);
        if (dd >= sd) ++dd;
        const FlowRequest req{{sd, pick.uniform_int(net.n)}, {dd, pick.uniform_int(net.n)}};

        const auto cs = ctx.cs(req);
        verify_path(net, cs, req);
        CHECK(cs.total_weight == flat_shortest(net, req.src, req.dst));

        RngStream rng(1000 + static_cast<std::uint64_t>(i));
        for (const auto scenario : {Scenario::MS, Scenario::SS, Scenario::PS}) {
            for (int tau : {2, 3}) {
                auto sub = rng.fork(static_cast<std::uint64_t>(tau) * 100 +
                                    static_cast<std::uint64_t>(scenario));
                const auto path = ctx.route(scenario, req, tau, sub);
                verify_path(net, path, req);
                CHECK(cs.total_weight <= path.total_weight);
                // Domain discipline: a valid domain route without repeats.
                const auto& seq = path.domain_sequence;
                CHECK(seq.front() == sd);
                CHECK(seq.back() == dd);
                CHECK(std::set<int>(seq.begin(), seq.end()).size() == seq.size());
                for (std::size_t j = 0; j + 1 < seq.size(); ++j)
                    CHECK(net.domain_wise.has_edge(seq[j], seq[j + 1]));
                if (scenario != Scenario::PS) break;
            }
        }
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("domain routes taken by greedy scenarios are shortest") {
    const auto got = assemble(7, 6, 1, TopologySource::ba(1), TopologySource::er(0.35),
                              DiscretePmf::point_mass(1), 11);
    const auto& net = got.net;
    RouterContext ctx(net);
    // Hop distances between domains, by breadth-first search.
    const auto bfs = [&](int s) {
        std::vector<int> dist(static_cast<std::size_t>(net.m), -1);
        std::queue<int> q;
        dist[static_cast<std::size_t>(s)] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int v : net.domain_wise.adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(v)] < 0) {
                    dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(v);
                }
        }
        return dist;
    };
    for (int sd = 0; sd < net.m; ++sd) {
        const auto dist = bfs(sd);
        for (int dd = 0; dd < net.m; ++dd) {
            if (sd == dd) continue;
            RngStream rng(static_cast<std::uint64_t>(sd * 100 + dd));
            const auto ss = ctx.ss(FlowRequest{{sd, 0}, {dd, 0}}, rng);
            CHECK(static_cast<int>(ss.domain_sequence.size()) ==
                  dist[static_cast<std::size_t>(dd)] + 1);
        }
    }
}

TEST_CASE("one-domain clusters behave exactly like self-domain routing") {
    const auto got = assemble(8, 10, 3, TopologySource::ba(1), TopologySource::er(0.3),
                              DiscretePmf::from_table({{1, 0.5}, {3, 0.5}}), 777);
    const auto& net = got.net;
    RouterContext ctx(net);
    RngStream pick(2718);
    for (int i = 0; i < 100; ++i) {
        const int sd = pick.uniform_int(net.m);
        int dd = pick.uniform_int(net.m - 1);
        if (dd >= sd) ++dd;
        const FlowRequest req{{sd, pick.uniform_int(net.n)}, {dd, pick.uniform_int(net.n)}};
        RngStream a(static_cast<std::uint64_t>(9000 + i)), b(static_cast<std::uint64_t>(9000 + i));
        const auto ps1 = ctx.ps(req, 1, a);
        const auto ss = ctx.ss(req, b);
        CHECK(ps1.nodes == ss.nodes);
        CHECK(ps1.total_weight == ss.total_weight);
    }
}

TEST_CASE("scenario dispatch matches the direct entry points") {
    const auto net = parse_network(kDetourDump, "fixture");
    RouterContext ctx(net);
    const FlowRequest req{{0, 0}, {2, 0}};
    RngStream a(4), b(4);
    CHECK(ctx.route(Scenario::MS, req, 0, a).nodes == ctx.ms(req, b).nodes);
    RngStream c(4), d(4);
    CHECK(ctx.route(Scenario::PS, req, 2, c).nodes == ctx.ps(req, 2, d).nodes);
    RngStream e(4);
    CHECK(ctx.route(Scenario::CS, req, 0, e).nodes == ctx.cs(req).nodes);
}

TEST_CASE("mean path weights order by synchronization level") {
    const auto got = assemble(10, 20, 4, TopologySource::ba(1), TopologySource::er(0.25),
                              DiscretePmf::from_table({{1, 0.3}, {3, 0.4}, {6, 0.3}}), 60606);
    const auto& net = got.net;
    RouterContext ctx(net);
    RngStream pick(11235);
    const int kRequests = 1200;
    std::vector<std::vector<double>> weights(5);
    for (int i = 0; i < kRequests; ++i) {
        const int sd = pick.uniform_int(net.m);
        int dd = pick.uniform_int(net.m - 1);
        if (dd >= sd) ++dd;
        const FlowRequest req{{sd, pick.uniform_int(net.n)}, {dd, pick.uniform_int(net.n)}};
        RngStream rng(static_cast<std::uint64_t>(50000 + i));
        auto r0 = rng.fork(0);
        auto r1 = rng.fork(1);
        auto r2 = rng.fork(2);
        auto r3 = rng.fork(3);
        weights[0].push_back(static_cast<double>(ctx.ms(req, r0).total_weight));
        weights[1].push_back(static_cast<double>(ctx.ss(req, r1).total_weight));
        weights[2].push_back(static_cast<double>(ctx.ps(req, 2, r2).total_weight));
        weights[3].push_back(static_cast<double>(ctx.ps(req, 3, r3).total_weight));
        weights[4].push_back(static_cast<double>(ctx.cs(req).total_weight));
    }
    const auto stats = [](const std::vector<double>& xs) {
        double mean = 0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0;
        for (double x : xs) var += (x - mean) * (x - mean);
        var /= static_cast<double>(xs.size());
        return std::pair<double, double>(mean, std::sqrt(var / static_cast<double>(xs.size())));
    };
    const auto [ms, ems] = stats(weights[0]);
    const auto [ss, ess] = stats(weights[1]);
    const auto [ps2, eps2] = stats(weights[2]);
    const auto [ps3, eps3] = stats(weights[3]);
    const auto [cs, ecs] = stats(weights[4]);
    const auto below = [](double a, double ea, double b, double eb) {
        return a <= b + 2.0 * std::sqrt(ea * ea + eb * eb);
    };
    CHECK(below(cs, ecs, ps3, eps3));
    CHECK(below(ps3, eps3, ps2, eps2));
    CHECK(below(ps2, eps2, ss, ess));
    CHECK(below(ss, ess, ms, ems));
    // Per-instance dominance of the global optimum.
    for (int i = 0; i < kRequests; ++i) {
        CHECK(weights[4][static_cast<std::size_t>(i)] <=
              weights[0][static_cast<std::size_t>(i)]);
        CHECK(weights[4][static_cast<std::size_t>(i)] <=
              weights[1][static_cast<std::size_t>(i)]);
        CHECK(weights[4][static_cast<std::size_t>(i)] <=
              weights[2][static_cast<std::size_t>(i)]);
        CHECK(weights[4][static_cast<std::size_t>(i)] <=
              weights[3][static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("hop greedy and weight greedy coincide on unit weights") {
    const auto got = assemble(8, 14, 2, TopologySource::ba(1), TopologySource::er(0.3),
                              DiscretePmf::point_mass(1), 808);
    const auto& net = got.net;
    RouterContext ctx(net);
    RngStream pick(999);
    double ms_sum = 0, ss_sum = 0, ms_sq = 0, ss_sq = 0;
    const int kRequests = 600;
    for (int i = 0; i < kRequests; ++i) {
        const int sd = pick.uniform_int(net.m);
        int dd = pick.uniform_int(net.m - 1);
        if (dd >= sd) ++dd;
        const FlowRequest req{{sd, pick.uniform_int(net.n)}, {dd, pick.uniform_int(net.n)}};
        RngStream rng(static_cast<std::uint64_t>(7000 + i));
        auto r0 = rng.fork(0);
        auto r1 = rng.fork(1);
        const double w_ms = static_cast<double>(ctx.ms(req, r0).total_weight);
        const double w_ss = static_cast<double>(ctx.ss(req, r1).total_weight);
        ms_sum += w_ms;
        ss_sum += w_ss;
        ms_sq += w_ms * w_ms;
        ss_sq += w_ss * w_ss;
    }
    const double n = kRequests;
    const double ms_mean = ms_sum / n, ss_mean = ss_sum / n;
    const double ms_se = std::sqrt((ms_sq / n - ms_mean * ms_mean) / n);
    const double ss_se = std::sqrt((ss_sq / n - ss_mean * ss_mean) / n);
    CHECK(std::abs(ms_mean - ss_mean) <= 2.0 * std::sqrt(ms_se * ms_se + ss_se * ss_se));
}
