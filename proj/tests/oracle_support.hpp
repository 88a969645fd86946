#pragma once

// Brute-force reference implementations used to cross-check the distribution
// calculus.  Everything here works on sparse (value, probability) tables and
// enumerates outcome tuples directly, deliberately sharing no code with the
// dense-vector library implementation.

#include <map>
#include <utility>
#include <vector>

#include "sdnapl/pmf.hpp"

namespace oracle {

using Table = std::vector<std::pair<int, double>>;

inline Table table_of(const sdnapl::DiscretePmf& p) {
    Table t;
    for (int v = 0; v <= p.max_value(); ++v)
        if (p.at(v) > 0.0) t.emplace_back(v, p.at(v));
    return t;
}

// Sum of one draw from each table, folding values past max_value into the
// max_value bin (mirrors the library's truncation contract).
inline std::map<int, double> enum_sum(const Table& a, const Table& b, int max_value) {
    std::map<int, double> out;
    for (const auto& [va, pa] : a)
        for (const auto& [vb, pb] : b) out[std::min(va + vb, max_value)] += pa * pb;
    return out;
}

// Sum of `count` iid draws by full tuple enumeration.
inline std::map<int, double> enum_power(const Table& t, int count, int max_value) {
    std::map<int, double> acc{{0, 1.0}};
    for (int i = 0; i < count; ++i) {
        std::map<int, double> next;
        for (const auto& [v, p] : acc)
            for (const auto& [w, q] : t) next[std::min(v + w, max_value)] += p * q;
        acc = std::move(next);
    }
    return acc;
}

// Minimum of `count` iid draws by full tuple enumeration.
inline std::map<int, double> enum_min(const Table& t, int count) {
    std::map<int, double> out;
    std::vector<std::size_t> idx(static_cast<std::size_t>(count), 0);
    while (true) {
        double p = 1.0;
        int lo = t[idx[0]].first;
        for (int i = 0; i < count; ++i) {
            p *= t[idx[static_cast<std::size_t>(i)]].second;
            lo = std::min(lo, t[idx[static_cast<std::size_t>(i)]].first);
        }
        out[lo] += p;
        int pos = count - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == t.size()) {
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return out;
}

inline std::map<int, double> enum_mixture(const std::vector<std::pair<double, Table>>& parts) {
    std::map<int, double> out;
    double total = 0.0;
    for (const auto& [w, t] : parts) total += w;
    for (const auto& [w, t] : parts)
        for (const auto& [v, p] : t) out[v] += w / total * p;
    return out;
}

inline double max_abs_diff(const sdnapl::DiscretePmf& got, const std::map<int, double>& want) {
    double worst = 0.0;
    for (int v = 0; v <= got.max_value(); ++v) {
        const auto it = want.find(v);
        const double expect = it == want.end() ? 0.0 : it->second;
        worst = std::max(worst, std::abs(got.at(v) - expect));
    }
    for (const auto& [v, p] : want)
        if (v > got.max_value()) worst = std::max(worst, p);
    return worst;
}

}  // namespace oracle
