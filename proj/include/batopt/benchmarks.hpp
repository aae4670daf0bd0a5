#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "batopt/problem.hpp"

namespace batopt {

/// sum sqrt(i) (x_i - 1)^2 + (sum x_i^2 - 25)^2 with N/4 ranged constraints 0 <= g_j <= 30.
/// Throws std::invalid_argument unless n is a positive multiple of 4.
Problem mathematical_problem(std::size_t n);

/// Himmelblau's nonlinear problem, 5 variables, three ranged constraints.
Problem himmelblau();

/// Volume of the statically loaded three-bar truss, 2 variables, 3 stress constraints.
Problem three_bar_truss();

/// Golinski speed reducer weight. `eleven_constraints` selects the standard set
/// including the two shaft-geometry constraints; false keeps only g1..g9.
Problem speed_reducer(bool eleven_constraints = true);

/// Five-step rectangular cantilever volume, 10 variables, 11 constraints.
Problem cantilever_beam();

/// Heat exchanger network cost x1 + x2 + x3, 8 variables, 6 constraints.
Problem heat_exchanger();

/// Car side-impact weight with ten crash-response constraints; x8, x9 are material choices.
Problem car_side_impact();

/// Suggested swarm size and iteration budget for a registered problem.
struct Budget {
    std::size_t population = 25;
    std::size_t iterations = 1000;
};

struct RegistryEntry {
    std::string name;
    std::string summary;
    Budget budget;
};

class UnknownProblem : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// All registered names with default budgets.
const std::vector<RegistryEntry>& registry();

/// Problem by registered name; "mathematical_<N>" accepts any positive multiple of 4.
/// Unknown names throw UnknownProblem listing the valid names.
Problem registry_lookup(const std::string& name);

/// Budget for `name` (falls back to 25 x 1000).
Budget default_budget(const std::string& name);

/// Multi-line human-readable dump: dimension, bounds, constraints, discrete sets, known best.
std::string describe(const Problem& problem);

}  // namespace batopt
