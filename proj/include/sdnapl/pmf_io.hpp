#pragma once

#include <string>

#include "sdnapl/pmf.hpp"

namespace sdnapl {

// Parses "value,probability" lines; '#' starts a comment, blank lines are
// skipped.  Used for both weight and degree distributions.
DiscretePmf parse_distribution(const std::string& text, const std::string& origin = "<string>");

DiscretePmf load_distribution(const std::string& path);

}  // namespace sdnapl
