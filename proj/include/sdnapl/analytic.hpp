#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "sdnapl/pmf.hpp"
#include "sdnapl/scenario.hpp"

namespace sdnapl {

// First/second factorial-style moments of a degree distribution together with
// the geometric neighborhood-shell expansion they generate:
//   z1 = <k>, z2 = <k^2> - <k>, shell i holds z1 * (z2/z1)^(i-1) vertices.
// h_max is the largest i whose cumulative shell population (root included)
// still fits inside `population`.
struct NeighborhoodMoments {
    double z1 = 0.0;
    double z2 = 0.0;
    int h_max = 0;
    std::vector<double> shell_sizes;  // shell_sizes[i-1] = size of shell i, i = 1..h_max

    double shell(int i) const { return shell_sizes[static_cast<std::size_t>(i) - 1]; }
};

// Throws DegenerateBranchingError when z2 <= z1 (shells would not grow).
NeighborhoodMoments neighborhood_moments(const DiscretePmf& degree, double population);

// Average number of hops between two domains in the domain-wise topology.
double domain_wise_apl(double m, const NeighborhoodMoments& inter);

// Expected number of distinct gateways a domain gains from beta link rounds
// toward one neighbor domain: n * (1 - (1 - 1/n)^beta).
double expected_gateways(double n, int beta);

// Expected hop distance from a non-gateway node to its nearest gateway, given
// gamma gateways scattered in a domain of n nodes.
double hops_to_nearest_gateway(double n, double gamma, const NeighborhoodMoments& intra);

// Weighted distance from a random node to another random node in one domain:
// a shell-weighted mixture of i-fold convolutions of the weight pmf.
DiscretePmf intra_distance_pmf(const NeighborhoodMoments& intra, const DiscretePmf& weight,
                               int max_value = kDefaultMaxValue);

struct ModelParams {
    int n = 0;      // nodes per domain
    int m = 0;      // domains
    int beta = 1;   // inter-domain link rounds per adjacent pair
    DiscretePmf intra_degree = DiscretePmf::point_mass(0);
    DiscretePmf inter_degree = DiscretePmf::point_mass(0);
    DiscretePmf weight = DiscretePmf::point_mass(0);
};

struct AnalyticOptions {
    int max_value = kDefaultMaxValue;
    // Cap on the number of iid copies the approximate bus computation may
    // minimize over (beta^(k-1) grows fast).
    std::int64_t min_count_ceiling = 1000000;
};

enum class BusMode { Exact, Approximate };

// Distance distributions through a chain ("bus") of k domains glued by
// inter-domain links: d = distance from an entry node in the first domain to
// a random node in the k-th, min_to_gateway = same but to the nearest gateway
// leading onward.
struct BusPmfs {
    DiscretePmf d;
    DiscretePmf min_to_gateway;
};

struct AplPrediction {
    Scenario scenario = Scenario::MS;
    int tau = 0;                 // only meaningful for PS
    double value = 0.0;          // predicted average path length, weight units
    double delta = 0.0;          // domain-wise APL
    double gateways = 0.0;       // expected gateways per neighbor domain
    double gateway_hops = 0.0;   // expected hops to nearest gateway
    double mean_d = 0.0;         // E[intra-domain distance]
    double mean_m = 0.0;         // E[min gateway distance]
    std::vector<std::pair<int, double>> mean_dk;  // (k, E[bus distance])
    std::vector<std::pair<int, double>> mean_mk;  // (k, E[bus gateway distance])
};

// Prediction engine for one parameter set.  Moments and the per-domain
// distance distributions are computed once at construction; bus distributions
// are derived on demand.  Instances are immutable and safe to share across
// threads.
class AnalyticModel {
public:
    explicit AnalyticModel(ModelParams params, AnalyticOptions opts = {});

    const ModelParams& params() const { return params_; }
    const NeighborhoodMoments& intra_moments() const { return intra_; }
    const NeighborhoodMoments& inter_moments() const { return inter_; }

    double delta() const { return delta_; }
    double gateways() const { return gamma_; }
    double gateway_hops() const { return l_; }

    const DiscretePmf& intra_distance() const { return d_; }
    const DiscretePmf& min_gateway_distance() const { return m_; }

    BusPmfs bus_network_pmfs(int k, BusMode mode) const;

    AplPrediction apl_ms() const;
    AplPrediction apl_ss() const;
    AplPrediction apl_ps(int tau, BusMode mode = BusMode::Approximate) const;
    AplPrediction apl_cs(BusMode mode = BusMode::Approximate) const;

    AplPrediction apl(Scenario s, int tau = 0, BusMode mode = BusMode::Approximate) const;

private:
    // Integer bracket around delta used to average per-path-length terms:
    // one or two (hop count, weight) pairs whose mean is exactly delta.
    std::vector<std::pair<int, double>> domain_hop_weights() const;

    ModelParams params_;
    AnalyticOptions opts_;
    NeighborhoodMoments intra_;
    NeighborhoodMoments inter_;
    double delta_ = 0.0;
    double gamma_ = 0.0;
    double l_ = 0.0;
    DiscretePmf d_;
    DiscretePmf m_;
};

}  // namespace sdnapl
