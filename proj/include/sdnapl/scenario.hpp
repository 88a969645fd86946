#pragma once

#include <string>

namespace sdnapl {

// Synchronization scenarios, from least to most shared knowledge:
//   MS: per-domain hop-count greedy (controllers know only their own domain's
//       topology, no link weights beyond it),
//   SS: per-domain weighted greedy,
//   PS: weighted greedy over clusters of tau consecutive domains,
//   CS: globally optimal.
enum class Scenario { MS, SS, PS, CS };

// Compact label used in results files and charts: ms, ss, ps<tau>, cs.
inline std::string scenario_label(Scenario s, int tau = 0) {
    switch (s) {
        case Scenario::MS: return "ms";
        case Scenario::SS: return "ss";
        case Scenario::PS: return "ps" + std::to_string(tau);
        case Scenario::CS: return "cs";
    }
    return "?";
}

}  // namespace sdnapl
