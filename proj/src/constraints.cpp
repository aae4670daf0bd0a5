#include "batopt/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace batopt {

std::size_t Problem::violation_count() const noexcept {
    std::size_t count = 0;
    for (const auto& c : constraints) {
        count += c.one_sided_count();
    }
    return count;
}

void Problem::validate() const {
    if (dimension == 0) {
        throw std::invalid_argument(name + ": dimension must be positive");
    }
    if (lower.size() != dimension || upper.size() != dimension) {
        throw std::invalid_argument(name + ": bounds length does not match dimension");
    }
    if (!discrete_sets.empty() && discrete_sets.size() != dimension) {
        throw std::invalid_argument(name + ": discrete_sets length does not match dimension");
    }
    for (std::size_t k = 0; k < dimension; ++k) {
        if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]) || lower[k] > upper[k]) {
            throw std::invalid_argument(name + ": malformed bounds at coordinate " + std::to_string(k + 1));
        }
        if (!discrete_sets.empty() && discrete_sets[k] && discrete_sets[k]->empty()) {
            throw std::invalid_argument(name + ": empty discrete set at coordinate " + std::to_string(k + 1));
        }
    }
    if (!objective) {
        throw std::invalid_argument(name + ": missing objective");
    }
    for (const auto& c : constraints) {
        if (!c.value || c.one_sided_count() == 0 || c.lower > c.upper) {
            throw std::invalid_argument(name + ": malformed constraint " + c.label);
        }
    }
}

namespace {

// NaN ranks worst.
double sanitized(double v) { return std::isnan(v) ? std::numeric_limits<double>::infinity() : v; }

}  // namespace

bool ConstraintHandler::feasible(const EvaluatedPoint& point) const noexcept {
    return std::all_of(point.violations.begin(), point.violations.end(),
                       [this](double v) { return v <= tolerance; });
}

std::weak_ordering ConstraintHandler::compare(const EvaluatedPoint& a, const EvaluatedPoint& b) const noexcept {
    const double fa = sanitized(a.objective);
    const double fb = sanitized(b.objective);
    if (mode == HandlerMode::static_penalty) {
        const double pa = fa + penalty_coefficient * sanitized(a.total_violation);
        const double pb = fb + penalty_coefficient * sanitized(b.total_violation);
        return std::weak_order(pa, pb);
    }
    const bool feas_a = feasible(a);
    const bool feas_b = feasible(b);
    if (feas_a != feas_b) {
        return feas_a ? std::weak_ordering::less : std::weak_ordering::greater;
    }
    if (!feas_a) {
        const auto by_violation = std::weak_order(sanitized(a.total_violation), sanitized(b.total_violation));
        if (by_violation != 0) {
            return by_violation;
        }
    }
    return std::weak_order(fa, fb);
}

ConstraintHandler ConstraintHandler::penalty(double coefficient) {
    if (!(coefficient > 0.0)) {
        throw std::invalid_argument("penalty coefficient must be positive");
    }
    ConstraintHandler handler;
    handler.mode = HandlerMode::static_penalty;
    handler.penalty_coefficient = coefficient;
    return handler;
}

Vector normalize_constraints(const Problem& problem, std::span<const double> x) {
    Vector violations;
    violations.reserve(problem.violation_count());
    for (const auto& c : problem.constraints) {
        const double g = c.value(x);
        if (c.lower > -kUnbounded) {
            violations.push_back(std::max(0.0, c.lower - g));
        }
        if (c.upper < kUnbounded) {
            violations.push_back(std::max(0.0, g - c.upper));
        }
    }
    return violations;
}

Vector raw_constraint_values(const Problem& problem, std::span<const double> x) {
    Vector values;
    values.reserve(problem.constraints.size());
    for (const auto& c : problem.constraints) {
        const double g = c.value(x);
        values.push_back(c.double_sided() ? g : (c.upper < kUnbounded ? g - c.upper : c.lower - g));
    }
    return values;
}

EvaluatedPoint evaluate(const Problem& problem, Vector x) {
    if (x.size() != problem.dimension) {
        throw std::invalid_argument(problem.name + ": point has wrong dimension");
    }
    EvaluatedPoint point;
    point.objective = problem.objective(x);
    point.violations = normalize_constraints(problem, x);
    point.total_violation = 0.0;
    for (double v : point.violations) {
        point.total_violation += v;
    }
    point.position = std::move(x);
    return point;
}

Vector clamp_to_bounds(std::span<const double> x, std::span<const double> lower, std::span<const double> upper) {
    if (lower.size() != x.size() || upper.size() != x.size()) {
        throw std::invalid_argument("clamp_to_bounds: length mismatch");
    }
    Vector out(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(lower[k] <= upper[k])) {
            throw std::invalid_argument("clamp_to_bounds: lower > upper at coordinate " + std::to_string(k + 1));
        }
        out[k] = std::clamp(x[k], lower[k], upper[k]);
    }
    return out;
}

Vector snap_discrete(std::span<const double> x, const std::vector<std::optional<Vector>>& discrete_sets) {
    Vector out(x.begin(), x.end());
    if (discrete_sets.empty()) {
        return out;
    }
    if (discrete_sets.size() != x.size()) {
        throw std::invalid_argument("snap_discrete: length mismatch");
    }
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!discrete_sets[k]) {
            continue;
        }
        const Vector& allowed = *discrete_sets[k];
        if (allowed.empty()) {
            throw std::invalid_argument("snap_discrete: empty value set at coordinate " + std::to_string(k + 1));
        }
        double best = allowed.front();
        double best_distance = std::abs(x[k] - best);
        for (double candidate : allowed) {
            const double distance = std::abs(x[k] - candidate);
            // Distances equal up to rounding count as a tie (e.g. a decimal midpoint).
            const double slack = 4.0 * std::numeric_limits<double>::epsilon() *
                                 std::max({std::abs(x[k]), std::abs(candidate), std::abs(best)});
            const bool tie = std::abs(distance - best_distance) <= slack;
            if ((!tie && distance < best_distance) || (tie && candidate < best)) {
                best = candidate;
                best_distance = distance;
            }
        }
        out[k] = best;
    }
    return out;
}

Vector repair(const Problem& problem, std::span<const double> x) {
    return snap_discrete(clamp_to_bounds(x, problem.lower, problem.upper), problem.discrete_sets);
}

}  // namespace batopt
