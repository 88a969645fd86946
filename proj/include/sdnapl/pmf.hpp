#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sdnapl {

// Truncation bound used when no explicit max_value is given.
inline constexpr int kDefaultMaxValue = 4096;

// Probability mass function over non-negative integer values, stored densely
// as masses[value].  Immutable after construction; every operation returns a
// new pmf.  Operations that hit the truncation bound fold the excess into the
// last bin and account for it in tail_mass(), which propagates through later
// operations as an upper bound on misplaced probability.
class DiscretePmf {
public:
    // All mass on a single value.
    static DiscretePmf point_mass(int value);

    // Build from (value, probability) entries.  Probabilities must be
    // non-negative and sum to 1 within 1e-6; the result is normalized
    // exactly.  Duplicate values accumulate.
    static DiscretePmf from_table(const std::vector<std::pair<int, double>>& entries);

    // Mass at value; 0 outside the stored range.
    double at(int value) const {
        if (value < 0 || value >= static_cast<int>(masses_.size())) return 0.0;
        return masses_[static_cast<std::size_t>(value)];
    }

    const std::vector<double>& masses() const { return masses_; }

    // Largest stored value (masses().size() - 1).
    int max_value() const { return static_cast<int>(masses_.size()) - 1; }

    // Smallest value carrying mass above tolerance.
    int min_support() const;

    double tail_mass() const { return tail_mass_; }

    double mean() const;
    double variance() const;

    // Total mass; 1 within floating-point error for every constructed pmf.
    double total_mass() const;

private:
    DiscretePmf(std::vector<double> masses, double tail_mass);

    std::vector<double> masses_;
    double tail_mass_ = 0.0;

    friend DiscretePmf convolve(const DiscretePmf&, const DiscretePmf&, int);
    friend DiscretePmf min_of_iid(const DiscretePmf&, std::int64_t);
    friend DiscretePmf mixture(const std::vector<std::pair<double, DiscretePmf>>&);
    friend DiscretePmf shift(const DiscretePmf&, int, int);
};

// Distribution of X + Y for independent X ~ a, Y ~ b, truncated at max_value.
DiscretePmf convolve(const DiscretePmf& a, const DiscretePmf& b,
                     int max_value = kDefaultMaxValue);

// Distribution of the sum of `count` independent draws; count = 0 gives a
// point mass at 0.
DiscretePmf convolve_power(const DiscretePmf& w, int count,
                           int max_value = kDefaultMaxValue);

// Distribution of the minimum of `count` independent draws (count >= 1).
DiscretePmf min_of_iid(const DiscretePmf& d, std::int64_t count);

// Weighted mixture.  Weights must be non-negative and sum to 1 within 1e-6;
// the result is renormalized exactly.
DiscretePmf mixture(const std::vector<std::pair<double, DiscretePmf>>& components);

// Distribution of X + offset (offset >= 0); equivalent to convolving with a
// point mass, truncated at max_value.
DiscretePmf shift(const DiscretePmf& d, int offset,
                  int max_value = kDefaultMaxValue);

}  // namespace sdnapl
