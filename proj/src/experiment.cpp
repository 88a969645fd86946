#include "sdnapl/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "sdnapl/errors.hpp"
#include "sdnapl/routing.hpp"
#include "sdnapl/rng.hpp"

namespace sdnapl {

namespace {

constexpr char kCsvHeader[] = "beta,scenario,analytic,simulated,std_err,rel_err,samples";

struct ScenarioSlot {
    Scenario scenario = Scenario::MS;
    int tau = 0;
};

std::vector<ScenarioSlot> scenario_slots(const ExperimentConfig& cfg) {
    std::vector<ScenarioSlot> slots{{Scenario::MS, 0}, {Scenario::SS, 0}};
    for (int tau : cfg.taus) slots.push_back({Scenario::PS, tau});
    slots.push_back({Scenario::CS, 0});
    return slots;
}

std::uint64_t job_seed(std::uint64_t master, int realization, int beta) {
    std::uint64_t s = RngStream::mix(master ^ 0x6a09e667f3bcc908ULL);
    s = RngStream::mix(s ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(realization) + 1));
    s = RngStream::mix(s ^ (0xbf58476d1ce4e5b9ULL * static_cast<std::uint64_t>(beta) + 1));
    return s;
}

struct JobOutput {
    std::vector<double> sum;    // per scenario slot
    std::vector<double> sumsq;  // per scenario slot
    std::vector<std::vector<double>> values;
    std::vector<std::int64_t> intra_degree_counts;
    std::vector<std::int64_t> domain_degree_counts;
};

void bump(std::vector<std::int64_t>& counts, std::size_t degree) {
    if (counts.size() <= degree) counts.resize(degree + 1, 0);
    counts[degree] += 1;
}

JobOutput run_job(const ExperimentConfig& cfg, const std::vector<ScenarioSlot>& slots, int beta,
                  int realization) {
    const std::uint64_t seed = job_seed(cfg.seed, realization, beta);
    const Assembled assembled =
        assemble(cfg.m, cfg.n, beta, cfg.intra, cfg.inter, cfg.weight, seed);
    const TwoLayerNetwork& net = assembled.net;

    JobOutput out;
    out.sum.assign(slots.size(), 0.0);
    out.sumsq.assign(slots.size(), 0.0);
    if (cfg.collect_values) out.values.assign(slots.size(), {});
    for (const IntraDomainGraph& dom : net.domains)
        for (const auto& nbrs : dom.adj) bump(out.intra_degree_counts, nbrs.size());
    for (const auto& nbrs : net.domain_wise.adj) bump(out.domain_degree_counts, nbrs.size());

    RouterContext ctx(net);
    RngStream req_rng(RngStream::mix(seed ^ 0x243f6a8885a308d3ULL));
    for (int s = 0; s < cfg.samples; ++s) {
        RngStream sample_rng = req_rng.fork(static_cast<std::uint64_t>(s) + 1);
        FlowRequest req;
        req.src.domain = sample_rng.uniform_int(cfg.m);
        req.src.node = sample_rng.uniform_int(cfg.n);
        do {
            req.dst.domain = sample_rng.uniform_int(cfg.m);
        } while (req.dst.domain == req.src.domain);
        req.dst.node = sample_rng.uniform_int(cfg.n);

        for (std::size_t i = 0; i < slots.size(); ++i) {
            RngStream scen_rng = sample_rng.fork(0x100 + static_cast<std::uint64_t>(i));
            const RoutePath path = ctx.route(slots[i].scenario, req, slots[i].tau, scen_rng);
            const double w = static_cast<double>(path.total_weight);
            out.sum[i] += w;
            out.sumsq[i] += w * w;
            if (cfg.collect_values) out.values[i].push_back(w);
        }
    }
    return out;
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.m < 2) throw ValidationError("experiment needs at least two domains");
    if (cfg.n < 2) throw ValidationError("experiment needs at least two nodes per domain");
    if (cfg.betas.empty()) throw ValidationError("no beta values given");
    for (int b : cfg.betas)
        if (b < 1) throw ValidationError("beta values must be positive");
    for (int t : cfg.taus)
        if (t < 1) throw ValidationError("tau values must be positive");
    if (cfg.realizations < 1) throw ValidationError("realizations must be positive");
    if (cfg.samples < 1) throw ValidationError("samples must be positive");
}

DiscretePmf pmf_from_counts(const std::vector<std::int64_t>& counts) {
    std::int64_t total = 0;
    for (std::int64_t c : counts) total += c;
    if (total == 0) throw InternalError("empty degree histogram");
    std::vector<std::pair<int, double>> table;
    for (std::size_t d = 0; d < counts.size(); ++d)
        if (counts[d] > 0)
            table.emplace_back(static_cast<int>(d),
                               static_cast<double>(counts[d]) / static_cast<double>(total));
    return DiscretePmf::from_table(table);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

int resolve_thread_count(int configured) {
    if (configured > 0) return configured;
    if (const char* env = std::getenv("SDNAPL_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1 || v > 4096)
            throw ValidationError("SDNAPL_THREADS must be a positive integer");
        return static_cast<int>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate_config(cfg);
    const std::vector<ScenarioSlot> slots = scenario_slots(cfg);

    struct Job {
        std::size_t beta_index;
        int realization;
    };
    std::vector<Job> jobs;
    for (std::size_t b = 0; b < cfg.betas.size(); ++b)
        for (int r = 0; r < cfg.realizations; ++r) jobs.push_back({b, r});
    std::vector<JobOutput> outputs(jobs.size());

    const int threads = std::min<int>(resolve_thread_count(cfg.threads),
                                      static_cast<int>(jobs.size()));
    std::atomic<std::size_t> next{0};
    std::mutex fail_mutex;
    std::exception_ptr failure;
    auto worker = [&]() {
        for (std::size_t j = next.fetch_add(1); j < jobs.size(); j = next.fetch_add(1)) {
            try {
                outputs[j] = run_job(cfg, slots, cfg.betas[jobs[j].beta_index], jobs[j].realization);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(fail_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Deterministic reduction in (beta, realization) order, independent of
    // which worker produced each output.
    ExperimentResult result;
    result.config = cfg;
    const std::int64_t request_count =
        static_cast<std::int64_t>(cfg.realizations) * static_cast<std::int64_t>(cfg.samples);
    for (std::size_t b = 0; b < cfg.betas.size(); ++b) {
        BetaResult br;
        br.beta = cfg.betas[b];
        std::vector<double> sum(slots.size(), 0.0), sumsq(slots.size(), 0.0);
        std::vector<std::int64_t> intra_counts, domain_counts;
        if (cfg.collect_values) br.values.assign(slots.size(), {});
        for (std::size_t j = 0; j < jobs.size(); ++j) {
            if (jobs[j].beta_index != b) continue;
            const JobOutput& out = outputs[j];
            for (std::size_t i = 0; i < slots.size(); ++i) {
                sum[i] += out.sum[i];
                sumsq[i] += out.sumsq[i];
                if (cfg.collect_values)
                    br.values[i].insert(br.values[i].end(), out.values[i].begin(),
                                        out.values[i].end());
            }
            for (std::size_t d = 0; d < out.intra_degree_counts.size(); ++d)
                if (out.intra_degree_counts[d] > 0) {
                    if (intra_counts.size() <= d) intra_counts.resize(d + 1, 0);
                    intra_counts[d] += out.intra_degree_counts[d];
                }
            for (std::size_t d = 0; d < out.domain_degree_counts.size(); ++d)
                if (out.domain_degree_counts[d] > 0) {
                    if (domain_counts.size() <= d) domain_counts.resize(d + 1, 0);
                    domain_counts[d] += out.domain_degree_counts[d];
                }
        }

        ModelParams params;
        params.n = cfg.n;
        params.m = cfg.m;
        params.beta = br.beta;
        params.intra_degree = pmf_from_counts(intra_counts);
        params.inter_degree = pmf_from_counts(domain_counts);
        params.weight = cfg.weight;
        const AnalyticModel model(params);

        for (std::size_t i = 0; i < slots.size(); ++i) {
            ScenarioStats row;
            row.scenario = slots[i].scenario;
            row.tau = slots[i].tau;
            row.analytic = model.apl(slots[i].scenario, slots[i].tau).value;
            const double nd = static_cast<double>(request_count);
            row.simulated = sum[i] / nd;
            double var = 0.0;
            if (request_count > 1)
                var = std::max(0.0, (sumsq[i] - nd * row.simulated * row.simulated) / (nd - 1.0));
            row.std_error = std::sqrt(var / nd);
            row.rel_error = row.simulated != 0.0
                                ? std::fabs(row.simulated - row.analytic) / row.simulated
                                : 0.0;
            row.samples = request_count;
            br.rows.push_back(row);
        }
        result.betas.push_back(std::move(br));
    }
    return result;
}

std::string results_to_csv(const ExperimentResult& result) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const BetaResult& br : result.betas)
        for (const ScenarioStats& row : br.rows) {
            out += std::to_string(br.beta);
            out += ',';
            out += scenario_label(row.scenario, row.tau);
            out += ',';
            out += format_double(row.analytic);
            out += ',';
            out += format_double(row.simulated);
            out += ',';
            out += format_double(row.std_error);
            out += ',';
            out += format_double(row.rel_error);
            out += ',';
            out += std::to_string(row.samples);
            out += '\n';
        }
    return out;
}

std::vector<ResultRow> parse_results_csv(const std::string& text, const std::string& origin) {
    std::vector<ResultRow> rows;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    auto fail = [&](const std::string& why) {
        throw ParseError(origin + ":" + std::to_string(line_no) + ": " + why);
    };
    while (std::getline(stream, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kCsvHeader) fail("expected header '" + std::string(kCsvHeader) + "'");
            saw_header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            fields.push_back(line.substr(start, pos == std::string::npos ? pos : pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        if (fields.size() != 7) fail("expected 7 comma separated fields");
        ResultRow row;
        char* end = nullptr;
        row.beta = static_cast<int>(std::strtol(fields[0].c_str(), &end, 10));
        if (end == fields[0].c_str() || *end != '\0' || row.beta < 1) fail("bad beta field");
        if (fields[1].empty()) fail("empty scenario field");
        row.scenario = fields[1];
        double* numeric[4] = {&row.analytic, &row.simulated, &row.std_error, &row.rel_error};
        for (int i = 0; i < 4; ++i) {
            const std::string& f = fields[static_cast<std::size_t>(i) + 2];
            *numeric[i] = std::strtod(f.c_str(), &end);
            if (end == f.c_str() || *end != '\0') fail("bad numeric field");
        }
        row.samples = std::strtoll(fields[6].c_str(), &end, 10);
        if (end == fields[6].c_str() || *end != '\0' || row.samples < 1) fail("bad samples field");
        rows.push_back(std::move(row));
    }
    if (!saw_header) throw ParseError(origin + ": empty results file");
    return rows;
}

std::vector<ResultRow> load_results_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open results file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("cannot read results file: " + path);
    return parse_results_csv(buf.str(), path);
}

std::string summarize(const ExperimentResult& result) {
    const ExperimentConfig& cfg = result.config;
    char buf[256];
    std::string out;
    std::snprintf(buf, sizeof buf,
                  "domains=%d nodes=%d realizations=%d samples=%d seed=%llu\n", cfg.m, cfg.n,
                  cfg.realizations, cfg.samples, static_cast<unsigned long long>(cfg.seed));
    out += buf;
    out += "average path length per flow request, weight units\n";
    for (const BetaResult& br : result.betas) {
        std::snprintf(buf, sizeof buf, "beta=%d\n", br.beta);
        out += buf;
        std::snprintf(buf, sizeof buf, "  %-8s %12s %12s %10s %9s %12s\n", "scenario", "analytic",
                      "simulated", "std_err", "rel_err", "vs_ms");
        out += buf;
        const ScenarioStats* ms = nullptr;
        for (const ScenarioStats& row : br.rows)
            if (row.scenario == Scenario::MS) ms = &row;
        for (const ScenarioStats& row : br.rows) {
            std::snprintf(buf, sizeof buf, "  %-8s %12.4f %12.4f %10.4f %8.2f%%",
                          scenario_label(row.scenario, row.tau).c_str(), row.analytic,
                          row.simulated, row.std_error, row.rel_error * 100.0);
            out += buf;
            // Reduction achieved over the hop-greedy baseline, when present.
            if (ms != nullptr && row.scenario != Scenario::MS && ms->simulated > 0.0) {
                std::snprintf(buf, sizeof buf, " %11.2f%%",
                              (ms->simulated - row.simulated) / ms->simulated * 100.0);
                out += buf;
            }
            out += '\n';
        }
        const ScenarioStats* ss = nullptr;
        const ScenarioStats* ps2 = nullptr;
        const ScenarioStats* ps3 = nullptr;
        for (const ScenarioStats& row : br.rows) {
            if (row.scenario == Scenario::SS) ss = &row;
            if (row.scenario == Scenario::PS && row.tau == 2) ps2 = &row;
            if (row.scenario == Scenario::PS && row.tau == 3) ps3 = &row;
        }
        if (ss != nullptr && ps2 != nullptr && ps3 != nullptr) {
            std::snprintf(buf, sizeof buf,
                          "  step gains: ss->ps2 %.4f, ps2->ps3 %.4f weight units\n",
                          ss->simulated - ps2->simulated, ps2->simulated - ps3->simulated);
            out += buf;
        }
    }
    return out;
}

}  // namespace sdnapl
