#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdnapl/analytic.hpp"
#include "sdnapl/netgen.hpp"
#include "sdnapl/pmf.hpp"
#include "sdnapl/scenario.hpp"

namespace sdnapl {

// Simulation campaign: for every beta, generate `realizations` independent
// networks, route `samples` paired flow requests per network under every
// scenario, and compare the averages against the analytic model fed with the
// degree histograms pooled over the generated networks.
struct ExperimentConfig {
    int m = 30;
    int n = 50;
    std::vector<int> betas{1, 4, 16};
    std::vector<int> taus{2, 3};  // cluster sizes evaluated for PS
    TopologySource intra = TopologySource::ba(1);
    TopologySource inter = TopologySource::er(0.1);
    DiscretePmf weight = DiscretePmf::point_mass(1);
    int realizations = 20;  // networks per beta
    int samples = 50;       // flow requests per network
    std::uint64_t seed = 1;
    int threads = 0;  // 0: SDNAPL_THREADS env or hardware concurrency
    bool collect_values = false;  // keep per-request path weights
};

struct ScenarioStats {
    Scenario scenario = Scenario::MS;
    int tau = 0;  // only meaningful for PS
    double analytic = 0.0;
    double simulated = 0.0;
    double std_error = 0.0;  // sd over all requests / sqrt(realizations * samples)
    double rel_error = 0.0;  // |simulated - analytic| / simulated
    std::int64_t samples = 0;
};

struct BetaResult {
    int beta = 0;
    std::vector<ScenarioStats> rows;  // ms, ss, ps per tau, cs
    // Per scenario, per request (realization-major order); filled only when
    // collect_values is set.  Index i across vectors refers to the same
    // request, so the lists are directly comparable pairwise.
    std::vector<std::vector<double>> values;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<BetaResult> betas;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string results_to_csv(const ExperimentResult& result);

struct ResultRow {
    int beta = 0;
    std::string scenario;
    double analytic = 0.0;
    double simulated = 0.0;
    double std_error = 0.0;
    double rel_error = 0.0;
    std::int64_t samples = 0;
};

std::vector<ResultRow> parse_results_csv(const std::string& text, const std::string& origin);
std::vector<ResultRow> load_results_csv(const std::string& path);

std::string summarize(const ExperimentResult& result);

// Worker count resolution used by run_experiment: explicit config value,
// else the SDNAPL_THREADS environment variable, else hardware concurrency.
int resolve_thread_count(int configured);

}  // namespace sdnapl
