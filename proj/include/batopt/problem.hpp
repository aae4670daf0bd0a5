#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace batopt {

using Vector = std::vector<double>;
using ScalarFunction = std::function<double(std::span<const double>)>;

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// lower <= value(x) <= upper. A one-sided "g(x) <= 0" constraint has lower = -inf, upper = 0.
struct Constraint {
    std::string label;
    ScalarFunction value;
    double lower = -kUnbounded;
    double upper = 0.0;

    bool double_sided() const noexcept { return lower > -kUnbounded && upper < kUnbounded; }
    /// Number of one-sided entries this constraint expands to.
    std::size_t one_sided_count() const noexcept {
        return static_cast<std::size_t>(lower > -kUnbounded) + static_cast<std::size_t>(upper < kUnbounded);
    }
};

/// Reference solution carried with a problem. `provenance` is "paper-quoted",
/// "literature" or "oracle".
struct KnownBest {
    Vector x;
    double objective = 0.0;
    std::string provenance;
};

/// Immutable minimization target: objective, constraints, box and optional discrete sets.
struct Problem {
    std::string name;
    std::size_t dimension = 0;
    ScalarFunction objective;
    std::vector<Constraint> constraints;
    Vector lower;
    Vector upper;
    /// Empty, or one entry per coordinate (nullopt = continuous).
    std::vector<std::optional<Vector>> discrete_sets;
    std::optional<KnownBest> known_best;
    std::string description;

    /// Total one-sided constraint count after expanding double-sided ranges.
    std::size_t violation_count() const noexcept;

    /// Throws std::invalid_argument if fields disagree on dimension or bounds are unordered.
    void validate() const;
};

}  // namespace batopt
