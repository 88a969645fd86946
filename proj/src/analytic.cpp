#include "sdnapl/analytic.hpp"

#include <cmath>
#include <string>

#include "sdnapl/errors.hpp"

namespace sdnapl {

NeighborhoodMoments neighborhood_moments(const DiscretePmf& degree, double population) {
    if (population < 2.0) throw ValidationError("population must be at least 2");
    NeighborhoodMoments mo;
    mo.z1 = degree.mean();
    const double second_raw = degree.variance() + mo.z1 * mo.z1;
    mo.z2 = second_raw - mo.z1;
    if (mo.z1 <= 0.0) throw ValidationError("degree distribution has zero mean");
    if (mo.z2 <= mo.z1)
        throw DegenerateBranchingError("branching ratio z2/z1 <= 1 (z1=" + std::to_string(mo.z1) +
                                       ", z2=" + std::to_string(mo.z2) + ")");
    const double ratio = mo.z2 / mo.z1;
    double cumulative = 1.0;  // root vertex
    double shell = mo.z1;
    while (cumulative + shell <= population) {
        mo.shell_sizes.push_back(shell);
        cumulative += shell;
        ++mo.h_max;
        shell *= ratio;
    }
    return mo;
}

double domain_wise_apl(double m, const NeighborhoodMoments& inter) {
    return std::log(m / inter.z1) / std::log(inter.z2 / inter.z1) + 1.0;
}

double expected_gateways(double n, int beta) {
    if (beta < 1) throw ValidationError("beta must be at least 1");
    // >= 1 for beta >= 1 by Bernoulli; the max guards fp rounding at beta=1.
    return std::max(1.0, n * (1.0 - std::pow(1.0 - 1.0 / n, beta)));
}

double hops_to_nearest_gateway(double n, double gamma, const NeighborhoodMoments& intra) {
    if (gamma < 1.0) throw ValidationError("gamma must be at least 1");
    if (gamma > (n + 1.0) / (intra.z1 + 1.0)) return 1.0;
    return std::log((n + 1.0 - gamma) / (intra.z1 * gamma)) / std::log(intra.z2 / intra.z1) + 1.0;
}

DiscretePmf intra_distance_pmf(const NeighborhoodMoments& intra, const DiscretePmf& weight,
                               int max_value) {
    // Shell i contributes weight z_i/n to the i-fold convolution of the link
    // weight pmf; the root contributes the point mass at 0.  The shell masses
    // cover at most (1 + sum z_i)/n of the probability, so normalize before
    // mixing.
    std::vector<std::pair<double, DiscretePmf>> components;
    double total = 1.0;
    for (int i = 1; i <= intra.h_max; ++i) total += intra.shell(i);
    components.emplace_back(1.0 / total, DiscretePmf::point_mass(0));
    for (int i = 1; i <= intra.h_max; ++i)
        components.emplace_back(intra.shell(i) / total, convolve_power(weight, i, max_value));
    return mixture(components);
}

AnalyticModel::AnalyticModel(ModelParams params, AnalyticOptions opts)
    : params_(std::move(params)),
      opts_(opts),
      intra_(neighborhood_moments(params_.intra_degree, params_.n)),
      inter_(neighborhood_moments(params_.inter_degree, params_.m)),
      delta_(domain_wise_apl(params_.m, inter_)),
      gamma_(expected_gateways(params_.n, params_.beta)),
      l_(hops_to_nearest_gateway(params_.n, gamma_, intra_)),
      d_(intra_distance_pmf(intra_, params_.weight, opts_.max_value)),
      m_(min_of_iid(d_, params_.beta)) {
    if (params_.n < 2) throw ValidationError("n must be at least 2");
    if (params_.m < 2) throw ValidationError("m must be at least 2");
    if (params_.intra_degree.mean() < 1.0 || params_.inter_degree.mean() < 1.0)
        throw ValidationError("degree distributions must have mean >= 1");
}

BusPmfs AnalyticModel::bus_network_pmfs(int k, BusMode mode) const {
    if (k < 1) throw ValidationError("bus length k must be at least 1");
    const int mv = opts_.max_value;
    if (mode == BusMode::Exact) {
        // d_k = min over beta iid copies of (d_{k-1} + d + 1),
        // m_k = min over beta iid copies of (d_{k-1} + m + 1).
        DiscretePmf dk = d_;
        DiscretePmf mk = m_;
        for (int j = 2; j <= k; ++j) {
            const DiscretePmf prev = dk;
            dk = min_of_iid(shift(convolve(prev, d_, mv), 1, mv), params_.beta);
            mk = min_of_iid(shift(convolve(prev, m_, mv), 1, mv), params_.beta);
        }
        return {dk, mk};
    }
    // Approximate: treat all beta^(k-1) gateway choices through the bus as
    // independent end-to-end alternatives, each distributed as the k-fold
    // (resp. (k-1)-fold plus gateway leg) sum of per-domain distances plus
    // the k-1 crossing links.
    std::int64_t count = 1;
    for (int j = 1; j < k; ++j) {
        count *= params_.beta;
        if (count >= opts_.min_count_ceiling) {
            count = opts_.min_count_ceiling;
            break;
        }
    }
    const DiscretePmf sum_k1 = convolve_power(d_, k - 1, mv);
    DiscretePmf dk = min_of_iid(shift(convolve(sum_k1, d_, mv), k - 1, mv), count);
    DiscretePmf mk = min_of_iid(shift(convolve(sum_k1, m_, mv), k - 1, mv), count);
    return {dk, mk};
}

std::vector<std::pair<int, double>> AnalyticModel::domain_hop_weights() const {
    // Smallest integer-supported distribution of the domain-wise hop count
    // with mean exactly delta.
    const double delta = std::max(delta_, 1.0);
    const int lo = static_cast<int>(std::floor(delta));
    const double frac = delta - lo;
    std::vector<std::pair<int, double>> w;
    if (frac < 1e-12) {
        w.emplace_back(lo, 1.0);
    } else {
        w.emplace_back(lo, 1.0 - frac);
        w.emplace_back(lo + 1, frac);
    }
    return w;
}

AplPrediction AnalyticModel::apl_ms() const {
    AplPrediction p;
    p.scenario = Scenario::MS;
    p.delta = delta_;
    p.gateways = gamma_;
    p.gateway_hops = l_;
    p.mean_d = d_.mean();
    p.mean_m = m_.mean();
    const double n = params_.n;
    const double mean_w = params_.weight.mean();
    const double last_leg = std::log(n / intra_.z1) / std::log(intra_.z2 / intra_.z1) + 1.0;
    p.value = ((n - gamma_) * l_ * delta_ / n + last_leg) * mean_w + delta_;
    return p;
}

AplPrediction AnalyticModel::apl_ss() const {
    AplPrediction p;
    p.scenario = Scenario::SS;
    p.delta = delta_;
    p.gateways = gamma_;
    p.gateway_hops = l_;
    p.mean_d = d_.mean();
    p.mean_m = m_.mean();
    p.value = delta_ * (p.mean_m + 1.0) + p.mean_d;
    return p;
}

AplPrediction AnalyticModel::apl_ps(int tau, BusMode mode) const {
    if (tau < 1) throw ValidationError("tau must be at least 1");
    AplPrediction p;
    p.scenario = Scenario::PS;
    p.tau = tau;
    p.delta = delta_;
    p.gateways = gamma_;
    p.gateway_hops = l_;
    p.mean_d = d_.mean();
    p.mean_m = m_.mean();

    // E[d_j] for j = 1..tau (theta legs and the full-cluster leg) and E[m_tau].
    std::vector<double> mean_d(static_cast<std::size_t>(tau) + 1, 0.0);
    double mean_m_tau = 0.0;
    for (int j = 1; j <= tau; ++j) {
        const BusPmfs bus = bus_network_pmfs(j, mode);
        mean_d[static_cast<std::size_t>(j)] = bus.d.mean();
        p.mean_dk.emplace_back(j, bus.d.mean());
        if (j == tau) {
            mean_m_tau = bus.min_to_gateway.mean();
            p.mean_mk.emplace_back(j, mean_m_tau);
        }
    }

    // A request whose domain-wise path spans q domains crosses floor(q/tau)
    // full clusters of tau domains plus a final partial cluster of
    // theta = q mod tau domains.
    double value = 0.0;
    for (const auto& [hops, weight] : domain_hop_weights()) {
        const int q = hops + 1;
        const int theta = q % tau;
        double lq;
        if (theta == 0) {
            lq = (q / tau - 1) * (mean_m_tau + 1.0) + mean_d[static_cast<std::size_t>(tau)];
        } else {
            lq = (q / tau) * (mean_m_tau + 1.0) + mean_d[static_cast<std::size_t>(theta)];
        }
        value += weight * lq;
    }
    p.value = value;
    return p;
}

AplPrediction AnalyticModel::apl_cs(BusMode mode) const {
    AplPrediction p;
    p.scenario = Scenario::CS;
    p.delta = delta_;
    p.gateways = gamma_;
    p.gateway_hops = l_;
    p.mean_d = d_.mean();
    p.mean_m = m_.mean();
    double value = 0.0;
    for (const auto& [hops, weight] : domain_hop_weights()) {
        const int k = hops + 1;
        const BusPmfs bus = bus_network_pmfs(k, mode);
        p.mean_dk.emplace_back(k, bus.d.mean());
        value += weight * bus.d.mean();
    }
    p.value = value;
    return p;
}

AplPrediction AnalyticModel::apl(Scenario s, int tau, BusMode mode) const {
    switch (s) {
        case Scenario::MS: return apl_ms();
        case Scenario::SS: return apl_ss();
        case Scenario::PS: return apl_ps(tau, mode);
        case Scenario::CS: return apl_cs(mode);
    }
    throw ValidationError("unknown scenario");
}

}  // namespace sdnapl
