#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "batopt/constraints.hpp"
#include "batopt/problem.hpp"
#include "batopt/result.hpp"
#include "batopt/rng.hpp"

namespace batopt {

/// What `t` means in the pulse-rate schedule r = r0 (1 - exp(-gamma t)).
enum class PulseSchedule {
    acceptance_count,  ///< t = number of accepted moves of this bat
    global_iteration,  ///< t = iteration at which the acceptance happened
};

struct SwarmConfig {
    std::size_t n_bats = 25;
    std::size_t max_iterations = 1000;
    double f_min = 0.0;
    double f_max = 100.0;
    double alpha = 0.9;
    double gamma = 0.9;
    std::array<double, 2> loudness_init_range{1.0, 2.0};
    std::array<double, 2> pulse_init_range{0.0, 1.0};
    std::uint64_t seed = 1;
    PulseSchedule pulse_schedule = PulseSchedule::acceptance_count;
    /// When false, an improving candidate is always accepted (the rand < A_i draw is still consumed).
    bool loudness_gate = true;
    /// Keep A_i and r_i at their initial values for the whole run (r_i starts at r_i^0).
    bool frozen_schedules = false;
    /// When true the local walk step in coordinate k is eps * A^t * (upper_k - lower_k)
    /// instead of eps * A^t, so loudness acts as a fraction of the box.
    bool box_relative_walk = false;

    void validate() const;
};

/// One swarm member.
struct Bat {
    Vector position;
    Vector velocity;
    double frequency = 0.0;
    double loudness = 1.0;
    double pulse_rate = 0.0;
    double initial_pulse_rate = 0.0;
    std::size_t acceptances = 0;
    EvaluatedPoint best_eval;
};

struct SwarmState {
    std::vector<Bat> bats;
    EvaluatedPoint global_best;
    std::size_t iteration = 0;
    std::uint64_t evaluation_count = 0;
    /// Number of local random walks performed so far (diagnostic).
    std::uint64_t local_walks = 0;
};

/// f_min + (f_max - f_min) * beta.
double draw_frequency(const SwarmConfig& config, double beta);

/// v_prev + (x - x_star) * f, componentwise.
Vector update_velocity(std::span<const double> v_prev, std::span<const double> x, std::span<const double> x_star,
                       double f);

/// x_prev + v, componentwise.
Vector update_position(std::span<const double> x_prev, std::span<const double> v);

/// x_base + eps * mean_loudness with an independent eps ~ U[-1, 1) per coordinate.
Vector local_walk(std::span<const double> x_base, double mean_loudness, RandomStream& stream);

/// Same walk with the step in coordinate k multiplied by scale[k].
Vector local_walk(std::span<const double> x_base, double mean_loudness, std::span<const double> scale,
                  RandomStream& stream);

/// alpha * A.
double update_loudness(double loudness, double alpha);

/// r0 * (1 - exp(-gamma t)).
double update_pulse_rate(double r0, double gamma, double t);

/// Random swarm inside the box, every bat evaluated once.
///
/// Draw order per bat: position coordinates, frequency beta, loudness, r_i^0.
SwarmState init_swarm(const Problem& problem, const SwarmConfig& config, RandomStream& stream);

/// One BA iteration over all bats in index order.
///
/// Per bat the stream is consumed as: beta, pulse gate, walk eps (only when the
/// walk fires), loudness gate. The loudness-gate draw happens for every bat so the
/// trajectory does not depend on which comparisons succeed.
void step(SwarmState& state, const Problem& problem, const SwarmConfig& config, const ConstraintHandler& handler,
          RandomStream& stream);

/// init_swarm followed by config.max_iterations steps. trace[0] is the initial best.
OptimizationResult run_bat(const Problem& problem, const SwarmConfig& config,
                           const ConstraintHandler& handler = {});

}  // namespace batopt
