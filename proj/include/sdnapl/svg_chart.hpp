#pragma once

#include <string>
#include <vector>

#include "sdnapl/experiment.hpp"

namespace sdnapl {

// Deterministic SVG line chart of average path length against beta: one solid
// polyline per scenario for the simulated averages and a dashed one for the
// analytic predictions.  Byte-identical output for identical input rows.
std::string render_apl_chart(const std::vector<ResultRow>& rows);

}  // namespace sdnapl
