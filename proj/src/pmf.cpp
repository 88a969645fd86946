#include "sdnapl/pmf.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sdnapl/errors.hpp"

namespace sdnapl {

namespace {

constexpr double kNormTolerance = 1e-6;
constexpr double kMassEps = 1e-15;

void trim_trailing_zeros(std::vector<double>& masses) {
    while (masses.size() > 1 && masses.back() == 0.0) masses.pop_back();
}

}  // namespace

DiscretePmf::DiscretePmf(std::vector<double> masses, double tail_mass)
    : masses_(std::move(masses)), tail_mass_(std::min(tail_mass, 1.0)) {
    trim_trailing_zeros(masses_);
}

DiscretePmf DiscretePmf::point_mass(int value) {
    if (value < 0) throw NegativeValueError("point mass value must be non-negative");
    std::vector<double> m(static_cast<std::size_t>(value) + 1, 0.0);
    m.back() = 1.0;
    return DiscretePmf(std::move(m), 0.0);
}

DiscretePmf DiscretePmf::from_table(const std::vector<std::pair<int, double>>& entries) {
    if (entries.empty()) throw EmptyTableError("distribution table is empty");
    int max_v = 0;
    for (const auto& [value, prob] : entries) {
        if (value < 0) throw NegativeValueError("value " + std::to_string(value) + " is negative");
        if (prob < 0.0) throw NegativeValueError("probability for value " + std::to_string(value) + " is negative");
        max_v = std::max(max_v, value);
    }
    std::vector<double> m(static_cast<std::size_t>(max_v) + 1, 0.0);
    double sum = 0.0;
    for (const auto& [value, prob] : entries) {
        m[static_cast<std::size_t>(value)] += prob;
        sum += prob;
    }
    if (std::abs(sum - 1.0) > kNormTolerance)
        throw NonNormalizedError("probabilities sum to " + std::to_string(sum) + ", expected 1");
    for (double& p : m) p /= sum;
    return DiscretePmf(std::move(m), 0.0);
}

int DiscretePmf::min_support() const {
    for (std::size_t v = 0; v < masses_.size(); ++v)
        if (masses_[v] > kMassEps) return static_cast<int>(v);
    return 0;
}

double DiscretePmf::mean() const {
    double s = 0.0;
    for (std::size_t v = 0; v < masses_.size(); ++v)
        s += static_cast<double>(v) * masses_[v];
    return s;
}

double DiscretePmf::variance() const {
    const double mu = mean();
    double s = 0.0;
    for (std::size_t v = 0; v < masses_.size(); ++v) {
        const double d = static_cast<double>(v) - mu;
        s += d * d * masses_[v];
    }
    return s;
}

double DiscretePmf::total_mass() const {
    double s = 0.0;
    for (double p : masses_) s += p;
    return s;
}

DiscretePmf convolve(const DiscretePmf& a, const DiscretePmf& b, int max_value) {
    if (max_value < 0) throw ValidationError("max_value must be non-negative");
    const auto& pa = a.masses();
    const auto& pb = b.masses();
    const int natural_max = a.max_value() + b.max_value();
    const int out_max = std::min(natural_max, max_value);
    std::vector<double> out(static_cast<std::size_t>(out_max) + 1, 0.0);
    double folded = 0.0;
    for (int i = 0; i <= a.max_value(); ++i) {
        if (pa[static_cast<std::size_t>(i)] == 0.0) continue;
        const double w = pa[static_cast<std::size_t>(i)];
        for (int j = 0; j <= b.max_value(); ++j) {
            const double q = pb[static_cast<std::size_t>(j)];
            if (q == 0.0) continue;
            const int v = i + j;
            if (v >= out_max) {
                if (v > out_max) folded += w * q;
                out[static_cast<std::size_t>(out_max)] += w * q;
            } else {
                out[static_cast<std::size_t>(v)] += w * q;
            }
        }
    }
    return DiscretePmf(std::move(out), a.tail_mass() + b.tail_mass() + folded);
}

DiscretePmf convolve_power(const DiscretePmf& w, int count, int max_value) {
    if (count < 0) throw ValidationError("count must be non-negative");
    DiscretePmf acc = DiscretePmf::point_mass(0);
    // Square-and-multiply keeps the number of convolutions logarithmic.
    DiscretePmf base = w;
    int k = count;
    bool acc_is_identity = true;
    while (k > 0) {
        if (k & 1) {
            acc = acc_is_identity ? base : convolve(acc, base, max_value);
            acc_is_identity = false;
        }
        k >>= 1;
        if (k > 0) base = convolve(base, base, max_value);
    }
    return acc;
}

DiscretePmf min_of_iid(const DiscretePmf& d, std::int64_t count) {
    if (count < 1) throw ValidationError("count must be at least 1");
    const auto& p = d.masses();
    const int n = d.max_value();
    // Survival function computed as a reverse cumulative sum: accurate where
    // the CDF is close to 1.
    std::vector<double> surv(static_cast<std::size_t>(n) + 1, 0.0);
    double run = 0.0;
    for (int v = n; v >= 0; --v) {
        run += p[static_cast<std::size_t>(v)];
        surv[static_cast<std::size_t>(v)] = run;  // P(X >= v)
    }
    const double c = static_cast<double>(count);
    std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
    // P(min = v) = P(X >= v)^c - P(X >= v+1)^c.
    double upper = std::pow(surv[0], c);
    for (int v = 0; v <= n; ++v) {
        const double next = (v == n) ? 0.0 : std::pow(surv[static_cast<std::size_t>(v) + 1], c);
        double mass = upper - next;
        if (mass < 0.0) mass = 0.0;
        out[static_cast<std::size_t>(v)] = mass;
        upper = next;
    }
    const double tail = std::min(1.0, d.tail_mass() * c);
    return DiscretePmf(std::move(out), tail);
}

DiscretePmf mixture(const std::vector<std::pair<double, DiscretePmf>>& components) {
    if (components.empty()) throw EmptyTableError("mixture has no components");
    double wsum = 0.0;
    int max_v = 0;
    for (const auto& [weight, pmf] : components) {
        if (weight < 0.0) throw NegativeValueError("mixture weight is negative");
        wsum += weight;
        max_v = std::max(max_v, pmf.max_value());
    }
    if (std::abs(wsum - 1.0) > kNormTolerance)
        throw NonNormalizedError("mixture weights sum to " + std::to_string(wsum) + ", expected 1");
    std::vector<double> out(static_cast<std::size_t>(max_v) + 1, 0.0);
    double tail = 0.0;
    for (const auto& [weight, pmf] : components) {
        const auto& p = pmf.masses();
        for (std::size_t v = 0; v < p.size(); ++v) out[v] += weight * p[v];
        tail += weight * pmf.tail_mass();
    }
    double total = 0.0;
    for (double p : out) total += p;
    for (double& p : out) p /= total;
    return DiscretePmf(std::move(out), tail / total);
}

DiscretePmf shift(const DiscretePmf& d, int offset, int max_value) {
    if (offset < 0) throw ValidationError("shift offset must be non-negative");
    if (max_value < 0) throw ValidationError("max_value must be non-negative");
    const auto& p = d.masses();
    const int natural_max = d.max_value() + offset;
    const int out_max = std::min(natural_max, max_value);
    std::vector<double> out(static_cast<std::size_t>(out_max) + 1, 0.0);
    double folded = 0.0;
    for (int v = 0; v <= d.max_value(); ++v) {
        const double q = p[static_cast<std::size_t>(v)];
        if (q == 0.0) continue;
        const int s = v + offset;
        if (s >= out_max) {
            if (s > out_max) folded += q;
            out[static_cast<std::size_t>(out_max)] += q;
        } else {
            out[static_cast<std::size_t>(s)] += q;
        }
    }
    return DiscretePmf(std::move(out), d.tail_mass() + folded);
}

}  // namespace sdnapl
