#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "batopt/constraints.hpp"

namespace batopt {

/// Best-so-far snapshot, one per iteration (BA) or generation (baselines).
struct TracePoint {
    double objective = 0.0;
    double total_violation = 0.0;
    bool feasible = false;
};

/// Common output of every optimizer in the library.
struct OptimizationResult {
    std::string algorithm;
    EvaluatedPoint best;
    /// Raw g values at the best point, see raw_constraint_values().
    Vector constraint_values;
    bool feasible = false;
    std::uint64_t evaluation_count = 0;
    std::vector<TracePoint> trace;
};

}  // namespace batopt
