#pragma once

#include <compare>
#include <span>

#include "batopt/problem.hpp"

namespace batopt {

/// A position together with everything needed to rank it.
struct EvaluatedPoint {
    Vector position;
    double objective = std::numeric_limits<double>::infinity();
    /// One entry per one-sided constraint, each max(0, .).
    Vector violations;
    double total_violation = 0.0;
};

enum class HandlerMode { feasibility_first, static_penalty };

/// Ranking rule for evaluated points.
///
/// feasibility_first: a feasible point beats any infeasible one, feasible points
/// rank by objective, infeasible points by total violation (ties by objective).
/// static_penalty: rank by objective + penalty_coefficient * total_violation.
struct ConstraintHandler {
    HandlerMode mode = HandlerMode::feasibility_first;
    double penalty_coefficient = 1e6;
    /// A point is feasible when every violation entry is <= tolerance.
    double tolerance = 1e-9;

    bool feasible(const EvaluatedPoint& point) const noexcept;
    std::weak_ordering compare(const EvaluatedPoint& a, const EvaluatedPoint& b) const noexcept;
    bool better(const EvaluatedPoint& a, const EvaluatedPoint& b) const noexcept {
        return compare(a, b) == std::weak_ordering::less;
    }

    static ConstraintHandler penalty(double coefficient);
};

/// Violation vector of `x`: every range constraint contributes max(0, lower - g)
/// and/or max(0, g - upper), in declaration order (lower side first).
Vector normalize_constraints(const Problem& problem, std::span<const double> x);

/// Raw constraint values g(x) - upper (the "g <= 0" form) for one-sided constraints and
/// the value itself for double-sided ones. Used for reporting.
Vector raw_constraint_values(const Problem& problem, std::span<const double> x);

/// Objective plus violation bookkeeping. Does not repair x.
EvaluatedPoint evaluate(const Problem& problem, Vector x);

/// Componentwise median(lo, x, hi).
Vector clamp_to_bounds(std::span<const double> x, std::span<const double> lower, std::span<const double> upper);

/// Replace each discrete coordinate by its nearest allowed value (ties to the smaller value).
Vector snap_discrete(std::span<const double> x, const std::vector<std::optional<Vector>>& discrete_sets);

/// clamp_to_bounds followed by snap_discrete; every optimizer repairs through this.
Vector repair(const Problem& problem, std::span<const double> x);

}  // namespace batopt
