#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sdnapl/analytic.hpp"
#include "sdnapl/errors.hpp"
#include "sdnapl/experiment.hpp"
#include "sdnapl/net_io.hpp"
#include "sdnapl/netgen.hpp"
#include "sdnapl/pmf_io.hpp"
#include "sdnapl/routing.hpp"
#include "sdnapl/rng.hpp"
#include "sdnapl/scenario.hpp"
#include "sdnapl/svg_chart.hpp"

namespace {

using namespace sdnapl;

int parse_int_strict(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const long v = std::strtol(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0')
        throw ValidationError(what + ": expected an integer, got '" + text + "'");
    return static_cast<int>(v);
}

double parse_double_strict(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0')
        throw ValidationError(what + ": expected a number, got '" + text + "'");
    return v;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what, int min_value) {
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t pos = text.find(',', start);
        const std::string item =
            text.substr(start, pos == std::string::npos ? pos : pos - start);
        const int v = parse_int_strict(item, what);
        if (v < min_value)
            throw ValidationError(what + ": values must be at least " + std::to_string(min_value));
        out.push_back(v);
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (out.empty()) throw ValidationError(what + ": empty list");
    return out;
}

TopologySource parse_source(const std::string& text, const std::string& what) {
    const std::size_t pos = text.find(':');
    if (pos == std::string::npos)
        throw ValidationError(what + ": expected ba:RHO, er:P or pmf:FILE, got '" + text + "'");
    const std::string kind = text.substr(0, pos);
    const std::string arg = text.substr(pos + 1);
    if (kind == "ba") {
        const int rho = parse_int_strict(arg, what);
        if (rho < 1) throw ValidationError(what + ": ba attachment count must be at least 1");
        return TopologySource::ba(rho);
    }
    if (kind == "er") {
        const double p = parse_double_strict(arg, what);
        if (p < 0.0 || p > 1.0) throw ValidationError(what + ": er probability must be in [0,1]");
        return TopologySource::er(p);
    }
    if (kind == "pmf") return TopologySource::from_degree_pmf(load_distribution(arg));
    throw ValidationError(what + ": unknown topology kind '" + kind + "'");
}

NodeRef parse_node_ref(const std::string& text, const std::string& what) {
    const std::size_t pos = text.find(':');
    if (pos == std::string::npos)
        throw ValidationError(what + ": expected DOMAIN:NODE, got '" + text + "'");
    NodeRef ref;
    ref.domain = parse_int_strict(text.substr(0, pos), what);
    ref.node = parse_int_strict(text.substr(pos + 1), what);
    return ref;
}

Scenario parse_scenario(const std::string& text) {
    if (text == "ms") return Scenario::MS;
    if (text == "ss") return Scenario::SS;
    if (text == "ps") return Scenario::PS;
    if (text == "cs") return Scenario::CS;
    throw ValidationError("--scenario: expected ms, ss, ps or cs, got '" + text + "'");
}

std::string trim_copy(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim_copy(line);
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ValidationError(where + ": expected key=value");
        const std::string key = trim_copy(line.substr(0, eq));
        const std::string value = trim_copy(line.substr(eq + 1));
        if (key.empty()) throw ValidationError(where + ": empty key");
        if (!kv.emplace(key, value).second)
            throw ValidationError(where + ": duplicate key '" + key + "'");
    }
    return kv;
}

// One assignable key of a flat key=value config file.  The file fills in
// whatever the command line left untouched; flags always win.
struct ConfigKey {
    std::string key;    // name in the config file
    std::string flag;   // corresponding command-line flag
    std::function<void(const std::string&)> apply;
};

void apply_config(const CLI::App& cmd, const std::string& path,
                  const std::vector<ConfigKey>& keys) {
    if (path.empty()) return;
    for (const auto& [key, value] : read_config_file(path)) {
        const ConfigKey* match = nullptr;
        for (const ConfigKey& k : keys)
            if (k.key == key) match = &k;
        if (match == nullptr) throw ValidationError("config: unknown key '" + key + "'");
        if (cmd.count(match->flag) > 0) continue;  // command line overrides
        match->apply(value);
    }
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write: " + path);
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct GenerateArgs {
    int m = 0, n = 0, beta = 0;
    std::string intra, inter, weights, out;
    std::uint64_t seed = 1;
    bool reject_disconnected = false;
};

int do_generate(const GenerateArgs& a) {
    if (a.m < 2) throw ValidationError("--m must be at least 2");
    if (a.n < 1) throw ValidationError("--n must be at least 1");
    if (a.beta < 1) throw ValidationError("--beta must be at least 1");
    const TopologySource intra = parse_source(a.intra, "--intra");
    const TopologySource inter = parse_source(a.inter, "--inter");
    const DiscretePmf weight =
        a.weights.empty() ? DiscretePmf::point_mass(1) : load_distribution(a.weights);
    AssembleOptions opts;
    opts.reject_disconnected = a.reject_disconnected;
    const Assembled assembled = assemble(a.m, a.n, a.beta, intra, inter, weight, a.seed, opts);
    write_network(a.out, assembled.net);
    std::cout << "domains=" << a.m << " nodes=" << a.n << " beta=" << a.beta
              << " inter_links=" << assembled.realized_inter_links
              << " domain_wise_repairs=" << assembled.domain_wise_stats.connectivity_repairs
              << " intra_repairs=" << assembled.intra_stats.connectivity_repairs << "\n";
    return 0;
}

struct RouteArgs {
    std::string net, src, dst, scenario = "ss";
    int tau = 2;
    std::uint64_t seed = 1;
};

int do_route(const RouteArgs& a) {
    const TwoLayerNetwork net = load_network(a.net);
    FlowRequest req;
    req.src = parse_node_ref(a.src, "--src");
    req.dst = parse_node_ref(a.dst, "--dst");
    const Scenario s = parse_scenario(a.scenario);
    if (s == Scenario::PS && a.tau < 1) throw ValidationError("--tau must be at least 1");
    RngStream rng(a.seed);
    const RouterContext ctx(net);
    const RoutePath path = ctx.route(s, req, a.tau, rng);

    std::string line;
    for (std::size_t i = 0; i < path.nodes.size(); ++i) {
        const NodeRef& r = path.nodes[i];
        if (i > 0) {
            const NodeRef& p = path.nodes[i - 1];
            int w = 1;
            if (p.domain == r.domain)
                for (const auto& [v, lw] : net.domains[static_cast<std::size_t>(p.domain)]
                                               .adj[static_cast<std::size_t>(p.node)])
                    if (v == r.node) {
                        w = lw;
                        break;
                    }
            line += " -(" + std::to_string(w) + ")-> ";
        }
        line += std::to_string(r.domain) + ":" + std::to_string(r.node);
    }
    std::cout << line << "\n";
    std::cout << "scenario=" << scenario_label(path.scenario, path.tau)
              << " total_weight=" << path.total_weight << " hops=" << path.hop_count
              << " domains=";
    for (std::size_t i = 0; i < path.domain_sequence.size(); ++i) {
        if (i > 0) std::cout << ",";
        std::cout << path.domain_sequence[i];
    }
    std::cout << "\n";
    return 0;
}

struct AnalyzeArgs {
    int m = 0, n = 0;
    std::string betas = "1", taus, intra_degree, inter_degree, weights, config;
};

int do_analyze(const AnalyzeArgs& a) {
    if (a.m < 2) throw ValidationError("--m must be at least 2");
    if (a.n < 2) throw ValidationError("--n must be at least 2");
    if (a.intra_degree.empty()) throw ValidationError("--intra-degree is required");
    if (a.inter_degree.empty()) throw ValidationError("--inter-degree is required");
    if (a.weights.empty()) throw ValidationError("--weights is required");
    const std::vector<int> betas = parse_int_list(a.betas, "--betas", 1);
    const std::vector<int> taus =
        a.taus.empty() ? std::vector<int>{} : parse_int_list(a.taus, "--taus", 1);

    ModelParams params;
    params.n = a.n;
    params.m = a.m;
    params.intra_degree = load_distribution(a.intra_degree);
    params.inter_degree = load_distribution(a.inter_degree);
    params.weight = load_distribution(a.weights);

    bool first = true;
    for (int beta : betas) {
        params.beta = beta;
        const AnalyticModel model(params);
        if (first) {
            std::cout << "delta=" << format_value(model.delta()) << "\n";
            first = false;
        }
        std::cout << "beta=" << beta << " gateways=" << format_value(model.gateways())
                  << " gateway_hops=" << format_value(model.gateway_hops())
                  << " mean_d=" << format_value(model.intra_distance().mean())
                  << " mean_m=" << format_value(model.min_gateway_distance().mean()) << "\n";
        std::cout << "ms " << format_value(model.apl_ms().value) << "\n";
        std::cout << "ss " << format_value(model.apl_ss().value) << "\n";
        for (int tau : taus)
            std::cout << scenario_label(Scenario::PS, tau) << " "
                      << format_value(model.apl_ps(tau).value) << "\n";
        std::cout << "cs " << format_value(model.apl_cs().value) << "\n";
    }
    return 0;
}

struct ExperimentArgs {
    ExperimentConfig cfg;
    std::string betas = "1,4,16", taus = "2,3";
    std::string intra = "ba:1", inter = "er:0.1", weights;
    std::string out_dir = ".";
    std::string config;
};

int do_experiment(const ExperimentArgs& a) {
    ExperimentConfig cfg = a.cfg;
    cfg.betas = parse_int_list(a.betas, "--betas", 1);
    cfg.taus = a.taus.empty() ? std::vector<int>{} : parse_int_list(a.taus, "--taus", 1);
    cfg.intra = parse_source(a.intra, "--intra");
    cfg.inter = parse_source(a.inter, "--inter");
    if (!a.weights.empty()) cfg.weight = load_distribution(a.weights);

    std::error_code ec;
    std::filesystem::create_directories(a.out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + a.out_dir);

    const ExperimentResult result = run_experiment(cfg);
    const std::string summary = summarize(result);
    write_text(a.out_dir + "/results.csv", results_to_csv(result));
    write_text(a.out_dir + "/summary.txt", summary);
    std::cout << summary;
    return 0;
}

struct PlotArgs {
    std::string results, out;
};

int do_plot(const PlotArgs& a) {
    const std::vector<ResultRow> rows = load_results_csv(a.results);
    write_text(a.out, render_apl_chart(rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-layer SDN average path length toolkit"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* gen_cmd = app.add_subcommand("generate", "generate a two-layer network dump");
    gen_cmd->add_option("--m", gen.m, "number of domains")->required();
    gen_cmd->add_option("--n", gen.n, "nodes per domain")->required();
    gen_cmd->add_option("--beta", gen.beta, "inter-domain link rounds per adjacent pair")
        ->required();
    gen_cmd->add_option("--intra", gen.intra, "intra-domain topology (ba:RHO, er:P, pmf:FILE)")
        ->required();
    gen_cmd->add_option("--inter", gen.inter, "domain-wise topology (ba:RHO, er:P, pmf:FILE)")
        ->required();
    gen_cmd->add_option("--weights", gen.weights, "weight pmf file (omitted: unit weights)");
    gen_cmd->add_option("--seed", gen.seed, "rng seed");
    gen_cmd->add_option("--out", gen.out, "output network file")->required();
    gen_cmd->add_flag("--reject-disconnected", gen.reject_disconnected,
                      "redraw disconnected topologies instead of repairing them");

    RouteArgs rt;
    CLI::App* rt_cmd = app.add_subcommand("route", "route one flow request on a network dump");
    rt_cmd->add_option("--net", rt.net, "network dump file")->required();
    rt_cmd->add_option("--src", rt.src, "source as DOMAIN:NODE")->required();
    rt_cmd->add_option("--dst", rt.dst, "destination as DOMAIN:NODE")->required();
    rt_cmd->add_option("--scenario", rt.scenario, "ms, ss, ps or cs");
    rt_cmd->add_option("--tau", rt.tau, "cluster size for ps");
    rt_cmd->add_option("--seed", rt.seed, "rng seed for tie-breaks");

    AnalyzeArgs an;
    CLI::App* an_cmd = app.add_subcommand("analyze", "print analytic predictions");
    an_cmd->add_option("--config", an.config, "flat key=value config file; flags override");
    an_cmd->add_option("--m", an.m, "number of domains");
    an_cmd->add_option("--n", an.n, "nodes per domain");
    an_cmd->add_option("--betas", an.betas, "comma separated beta values");
    an_cmd->add_option("--taus", an.taus, "comma separated ps cluster sizes");
    an_cmd->add_option("--intra-degree", an.intra_degree, "intra-domain degree pmf file");
    an_cmd->add_option("--inter-degree", an.inter_degree, "domain-wise degree pmf file");
    an_cmd->add_option("--weights", an.weights, "weight pmf file");

    ExperimentArgs ex;
    CLI::App* ex_cmd = app.add_subcommand("experiment", "run a simulation campaign");
    ex_cmd->add_option("--config", ex.config, "flat key=value config file; flags override");
    ex_cmd->add_option("--m", ex.cfg.m, "number of domains");
    ex_cmd->add_option("--n", ex.cfg.n, "nodes per domain");
    ex_cmd->add_option("--betas", ex.betas, "comma separated beta values");
    ex_cmd->add_option("--taus", ex.taus, "comma separated ps cluster sizes");
    ex_cmd->add_option("--intra", ex.intra, "intra-domain topology (ba:RHO, er:P, pmf:FILE)");
    ex_cmd->add_option("--inter", ex.inter, "domain-wise topology (ba:RHO, er:P, pmf:FILE)");
    ex_cmd->add_option("--weights", ex.weights, "weight pmf file (omitted: unit weights)");
    ex_cmd->add_option("--realizations", ex.cfg.realizations, "networks per beta");
    ex_cmd->add_option("--samples", ex.cfg.samples, "flow requests per network");
    ex_cmd->add_option("--seed", ex.cfg.seed, "master rng seed");
    ex_cmd->add_option("--threads", ex.cfg.threads, "worker threads (0: auto)");
    ex_cmd->add_option("--out-dir", ex.out_dir, "directory for results.csv and summary.txt");

    PlotArgs pl;
    CLI::App* pl_cmd = app.add_subcommand("plot", "render an SVG chart from experiment results");
    pl_cmd->add_option("--results", pl.results, "results csv file")->required();
    pl_cmd->add_option("--out", pl.out, "output svg file")->required();

    try {
        app.parse(argc, argv);
        if (gen_cmd->parsed()) return do_generate(gen);
        if (rt_cmd->parsed()) return do_route(rt);
        if (an_cmd->parsed()) {
            apply_config(*an_cmd, an.config,
                         {{"m", "--m", [&](const std::string& v) {
                               an.m = parse_int_strict(v, "config m");
                           }},
                          {"n", "--n", [&](const std::string& v) {
                               an.n = parse_int_strict(v, "config n");
                           }},
                          {"betas", "--betas", [&](const std::string& v) { an.betas = v; }},
                          {"taus", "--taus", [&](const std::string& v) { an.taus = v; }},
                          {"intra-degree", "--intra-degree",
                           [&](const std::string& v) { an.intra_degree = v; }},
                          {"inter-degree", "--inter-degree",
                           [&](const std::string& v) { an.inter_degree = v; }},
                          {"weights", "--weights",
                           [&](const std::string& v) { an.weights = v; }}});
            return do_analyze(an);
        }
        if (ex_cmd->parsed()) {
            apply_config(*ex_cmd, ex.config,
                         {{"m", "--m", [&](const std::string& v) {
                               ex.cfg.m = parse_int_strict(v, "config m");
                           }},
                          {"n", "--n", [&](const std::string& v) {
                               ex.cfg.n = parse_int_strict(v, "config n");
                           }},
                          {"betas", "--betas", [&](const std::string& v) { ex.betas = v; }},
                          {"taus", "--taus", [&](const std::string& v) { ex.taus = v; }},
                          {"intra", "--intra", [&](const std::string& v) { ex.intra = v; }},
                          {"inter", "--inter", [&](const std::string& v) { ex.inter = v; }},
                          {"weights", "--weights",
                           [&](const std::string& v) { ex.weights = v; }},
                          {"realizations", "--realizations",
                           [&](const std::string& v) {
                               ex.cfg.realizations = parse_int_strict(v, "config realizations");
                           }},
                          {"samples", "--samples",
                           [&](const std::string& v) {
                               ex.cfg.samples = parse_int_strict(v, "config samples");
                           }},
                          {"seed", "--seed",
                           [&](const std::string& v) {
                               char* end = nullptr;
                               ex.cfg.seed = std::strtoull(v.c_str(), &end, 10);
                               if (end == v.c_str() || *end != '\0')
                                   throw ValidationError(
                                       "config seed: expected an integer, got '" + v + "'");
                           }},
                          {"threads", "--threads",
                           [&](const std::string& v) {
                               ex.cfg.threads = parse_int_strict(v, "config threads");
                           }},
                          {"out-dir", "--out-dir",
                           [&](const std::string& v) { ex.out_dir = v; }}});
            return do_experiment(ex);
        }
        if (pl_cmd->parsed()) return do_plot(pl);
        throw sdnapl::ValidationError("no subcommand given");
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sdnapl::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const sdnapl::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
