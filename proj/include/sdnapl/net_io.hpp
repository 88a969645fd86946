#pragma once

#include <string>

#include "sdnapl/netgen.hpp"

namespace sdnapl {

// Plain-text network dump:
//   m n beta seed
//   d u v w          one line per intra-domain edge (u < v)
//   X da ua db ub    one line per inter-domain link (da < db)
// Lines are emitted in canonical sorted order, so dump(load(text)) == text.
std::string dump_network(const TwoLayerNetwork& net);

TwoLayerNetwork parse_network(const std::string& text, const std::string& origin = "<string>");

void write_network(const std::string& path, const TwoLayerNetwork& net);
TwoLayerNetwork load_network(const std::string& path);

}  // namespace sdnapl
