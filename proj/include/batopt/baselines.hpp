#pragma once

#include <cstdint>
#include <string>

#include "batopt/constraints.hpp"
#include "batopt/problem.hpp"
#include "batopt/result.hpp"

namespace batopt {

enum class BaselineAlgorithm { pso, de, ga };

/// Canonical textbook variants: global-best PSO with inertia weight,
/// DE/rand/1/bin, and a real-coded generational GA (tournament selection,
/// blend crossover, Gaussian mutation, single elite).
struct BaselineConfig {
    BaselineAlgorithm algorithm = BaselineAlgorithm::pso;
    std::size_t population = 20;
    std::uint64_t max_evaluations = 20000;
    std::uint64_t seed = 1;

    // PSO
    double inertia = 0.729;
    double cognitive = 1.49445;
    double social = 1.49445;
    /// Velocity limit as a fraction of each coordinate's range.
    double max_velocity_fraction = 0.2;

    // DE
    double differential_weight = 0.5;
    double crossover_probability = 0.9;

    // GA
    double ga_crossover_rate = 0.9;
    /// Per-gene mutation probability; <= 0 selects 1/d.
    double ga_mutation_rate = 0.0;
    /// Mutation standard deviation as a fraction of each coordinate's range.
    double ga_mutation_scale = 0.01;
    double blend_alpha = 0.5;
    std::size_t tournament_size = 2;

    void validate() const;
};

std::string to_string(BaselineAlgorithm algorithm);
/// Accepts "pso", "de", "ga".
BaselineAlgorithm parse_baseline(const std::string& name);

/// Runs the selected baseline; evaluation_count never exceeds config.max_evaluations.
OptimizationResult run_baseline(const Problem& problem, const BaselineConfig& config,
                                const ConstraintHandler& handler = {});

}  // namespace batopt
