#pragma once

#include <vector>

#include "qrepsim/strategies.hpp"

namespace qrepsim {

// Runs every configuration on a pool of worker threads (jobs <= 0 uses the
// hardware thread count). Results keep the input ordering regardless of which
// worker finished first; the first failure is rethrown after the pool drains.
std::vector<RunResult> run_points(const std::vector<StrategyConfig>& points, int jobs);

} // namespace qrepsim
