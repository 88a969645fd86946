#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace sdnapl {

// Reproducible random stream.  All sampling helpers are hand-rolled on top of
// the raw 64-bit output so that sequences are identical across standard
// library implementations (std::uniform_int_distribution and friends are not
// portable).
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(mix(seed)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound).  bound must be positive.
    int uniform_int(int bound) {
        // Rejection sampling keeps the draw unbiased.
        const std::uint64_t b = static_cast<std::uint64_t>(bound);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % b;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return static_cast<int>(x % b);
    }

    // Child stream independent of this stream's current position.  Equal tags
    // give equal children; callers pick distinct tags.
    RngStream fork(std::uint64_t tag) const {
        return RngStream(mix(seed_ ^ (tag * 0x9E3779B97F4A7C15ull)));
    }

    std::uint64_t seed() const { return seed_; }

    // splitmix64 finalizer; also used to derive child seeds.
    static std::uint64_t mix(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

// Inverse-CDF sampler over a small integer-valued table, built once and then
// cheap per draw.
class CdfSampler {
public:
    CdfSampler(std::vector<int> values, const std::vector<double>& masses)
        : values_(std::move(values)) {
        cdf_.reserve(masses.size());
        double run = 0.0;
        for (double p : masses) {
            run += p;
            cdf_.push_back(run);
        }
        if (!cdf_.empty()) cdf_.back() = 1.0;
    }

    int sample(RngStream& rng) const {
        const double u = rng.next_double();
        std::size_t lo = 0, hi = cdf_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u <= cdf_[mid]) hi = mid; else lo = mid + 1;
        }
        return values_[lo];
    }

private:
    std::vector<int> values_;
    std::vector<double> cdf_;
};

}  // namespace sdnapl
