#include "sdnapl/net_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <tuple>

#include "sdnapl/errors.hpp"

namespace sdnapl {

std::string dump_network(const TwoLayerNetwork& net) {
    std::ostringstream out;
    out << net.m << ' ' << net.n << ' ' << net.beta << ' ' << net.seed << '\n';
    for (int d = 0; d < net.m; ++d)
        for (const auto& e : net.domains[static_cast<std::size_t>(d)].edges)
            out << d << ' ' << e.u << ' ' << e.v << ' ' << e.weight << '\n';
    for (const auto& l : net.inter_links)
        out << "X " << l.domain_a << ' ' << l.node_a << ' ' << l.domain_b << ' ' << l.node_b << '\n';
    return out.str();
}

TwoLayerNetwork parse_network(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    auto fail = [&](const std::string& why) -> ParseError {
        return ParseError(origin + ":" + std::to_string(line_no) + ": " + why);
    };

    if (!std::getline(in, line)) throw ParseError(origin + ": empty network file");
    ++line_no;
    TwoLayerNetwork net;
    {
        std::istringstream h(line);
        if (!(h >> net.m >> net.n >> net.beta >> net.seed)) throw fail("bad header, expected 'm n beta seed'");
        std::string extra;
        if (h >> extra) throw fail("trailing tokens in header");
    }
    if (net.m < 2 || net.n < 1 || net.beta < 1) throw fail("header out of range");

    net.domains.assign(static_cast<std::size_t>(net.m), {});
    for (auto& d : net.domains) {
        d.node_count = net.n;
        d.adj.assign(static_cast<std::size_t>(net.n), {});
    }

    std::set<std::tuple<int, int, int>> intra_seen;
    std::set<std::tuple<int, int, int, int>> inter_seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == 'X') {
            char x;
            int da, ua, db, ub;
            if (!(ls >> x >> da >> ua >> db >> ub)) throw fail("bad inter-domain link line");
            std::string extra;
            if (ls >> extra) throw fail("trailing tokens");
            if (da < 0 || da >= net.m || db < 0 || db >= net.m || da >= db)
                throw fail("inter-domain link domains out of range or unordered");
            if (ua < 0 || ua >= net.n || ub < 0 || ub >= net.n) throw fail("inter-domain link node out of range");
            if (!inter_seen.emplace(da, ua, db, ub).second) throw fail("duplicate inter-domain link");
            net.inter_links.push_back({da, ua, db, ub});
        } else {
            int d, u, v, w;
            if (!(ls >> d >> u >> v >> w)) throw fail("bad intra-domain edge line");
            std::string extra;
            if (ls >> extra) throw fail("trailing tokens");
            if (d < 0 || d >= net.m) throw fail("domain id out of range");
            if (u < 0 || v < 0 || u >= net.n || v >= net.n || u >= v) throw fail("edge endpoints out of range or unordered");
            if (w < 0) throw fail("negative edge weight");
            if (!intra_seen.emplace(d, u, v).second) throw fail("duplicate intra-domain edge");
            net.domains[static_cast<std::size_t>(d)].edges.push_back({u, v, w});
        }
    }

    // Canonical order regardless of input order.
    for (auto& d : net.domains)
        std::sort(d.edges.begin(), d.edges.end(), [](const IntraEdge& a, const IntraEdge& b) {
            return a.u != b.u ? a.u < b.u : a.v < b.v;
        });
    std::sort(net.inter_links.begin(), net.inter_links.end(), [](const InterLink& a, const InterLink& b) {
        return std::tie(a.domain_a, a.node_a, a.domain_b, a.node_b) <
               std::tie(b.domain_a, b.node_a, b.domain_b, b.node_b);
    });

    // Rebuild adjacency and the domain-wise topology (an edge per domain pair
    // holding at least one link; assembly guarantees the converse).
    for (auto& d : net.domains)
        for (const auto& e : d.edges) {
            d.adj[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.weight);
            d.adj[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.weight);
        }
    net.domain_wise.node_count = net.m;
    net.domain_wise.adj.assign(static_cast<std::size_t>(net.m), {});
    for (const auto& l : net.inter_links)
        if (!net.domain_wise.has_edge(l.domain_a, l.domain_b))
            net.domain_wise.add_edge(l.domain_a, l.domain_b);
    net.domain_wise.sort_adjacency();
    return net;
}

void write_network(const std::string& path, const TwoLayerNetwork& net) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << dump_network(net);
    if (!out) throw IoError("write failed: " + path);
}

TwoLayerNetwork load_network(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open network file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str(), path);
}

}  // namespace sdnapl
