#include "batopt/bat.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace batopt {

void SwarmConfig::validate() const {
    if (n_bats == 0) {
        throw std::invalid_argument("n_bats must be positive");
    }
    if (!(f_min < f_max)) {
        throw std::invalid_argument("f_min must be below f_max");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("gamma must be positive");
    }
    if (!(loudness_init_range[0] >= 0.0 && loudness_init_range[0] <= loudness_init_range[1])) {
        throw std::invalid_argument("loudness_init_range must be ordered and non-negative");
    }
    if (!(pulse_init_range[0] >= 0.0 && pulse_init_range[0] <= pulse_init_range[1] && pulse_init_range[1] <= 1.0)) {
        throw std::invalid_argument("pulse_init_range must be an ordered sub-range of [0, 1]");
    }
}

double draw_frequency(const SwarmConfig& config, double beta) {
    return config.f_min + (config.f_max - config.f_min) * beta;
}

Vector update_velocity(std::span<const double> v_prev, std::span<const double> x, std::span<const double> x_star,
                       double f) {
    if (x.size() != v_prev.size() || x_star.size() != v_prev.size()) {
        throw std::invalid_argument("update_velocity: length mismatch");
    }
    Vector v(v_prev.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = v_prev[k] + (x[k] - x_star[k]) * f;
    }
    return v;
}

Vector update_position(std::span<const double> x_prev, std::span<const double> v) {
    if (x_prev.size() != v.size()) {
        throw std::invalid_argument("update_position: length mismatch");
    }
    Vector x(x_prev.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = x_prev[k] + v[k];
    }
    return x;
}

Vector local_walk(std::span<const double> x_base, double mean_loudness, RandomStream& stream) {
    // Zero is admitted so that a silent swarm (all A_i = 0) degenerates to x_base.
    if (!(mean_loudness >= 0.0) || !std::isfinite(mean_loudness)) {
        throw std::invalid_argument("local_walk: mean loudness must be finite and non-negative");
    }
    Vector x(x_base.begin(), x_base.end());
    for (double& xk : x) {
        xk += stream.uniform_in(-1.0, 1.0) * mean_loudness;
    }
    return x;
}

Vector local_walk(std::span<const double> x_base, double mean_loudness, std::span<const double> scale,
                  RandomStream& stream) {
    if (scale.size() != x_base.size()) {
        throw std::invalid_argument("local_walk: scale length mismatch");
    }
    Vector x = local_walk(x_base, mean_loudness, stream);
    for (std::size_t k = 0; k < x.size(); ++k) {
        x[k] = x_base[k] + (x[k] - x_base[k]) * scale[k];
    }
    return x;
}

double update_loudness(double loudness, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("update_loudness: alpha must lie in (0, 1)");
    }
    return alpha * loudness;
}

double update_pulse_rate(double r0, double gamma, double t) {
    if (!(gamma > 0.0)) {
        throw std::invalid_argument("update_pulse_rate: gamma must be positive");
    }
    return r0 * -std::expm1(-gamma * t);
}

SwarmState init_swarm(const Problem& problem, const SwarmConfig& config, RandomStream& stream) {
    problem.validate();
    config.validate();
    const std::size_t d = problem.dimension;

    auto draw = [&stream](double lo, double hi) { return lo < hi ? stream.uniform_in(lo, hi) : lo; };

    SwarmState state;
    state.bats.reserve(config.n_bats);
    for (std::size_t i = 0; i < config.n_bats; ++i) {
        Bat bat;
        bat.position.resize(d);
        for (std::size_t k = 0; k < d; ++k) {
            bat.position[k] = draw(problem.lower[k], problem.upper[k]);
        }
        bat.position = repair(problem, bat.position);
        bat.velocity.assign(d, 0.0);
        bat.frequency = draw_frequency(config, stream.uniform01());
        bat.loudness = draw(config.loudness_init_range[0], config.loudness_init_range[1]);
        bat.initial_pulse_rate = draw(config.pulse_init_range[0], config.pulse_init_range[1]);
        bat.pulse_rate = config.frozen_schedules ? bat.initial_pulse_rate : 0.0;
        bat.best_eval = evaluate(problem, bat.position);
        ++state.evaluation_count;
        state.bats.push_back(std::move(bat));
    }

    const ConstraintHandler default_handler;
    state.global_best = state.bats.front().best_eval;
    for (const Bat& bat : state.bats) {
        if (default_handler.better(bat.best_eval, state.global_best)) {
            state.global_best = bat.best_eval;
        }
    }
    return state;
}

namespace {

double mean_loudness(const std::vector<Bat>& bats) {
    double sum = 0.0;
    for (const Bat& bat : bats) {
        sum += bat.loudness;
    }
    return sum / static_cast<double>(bats.size());
}

// Re-pick the global best under the run's handler (init_swarm uses the default rule).
void refresh_global_best(SwarmState& state, const ConstraintHandler& handler) {
    for (const Bat& bat : state.bats) {
        if (handler.better(bat.best_eval, state.global_best)) {
            state.global_best = bat.best_eval;
        }
    }
}

}  // namespace

void step(SwarmState& state, const Problem& problem, const SwarmConfig& config, const ConstraintHandler& handler,
          RandomStream& stream) {
    if (state.bats.empty()) {
        throw std::invalid_argument("step: swarm not initialized");
    }
    const double loudness_now = mean_loudness(state.bats);
    const std::size_t t = state.iteration + 1;
    Vector widths;
    if (config.box_relative_walk) {
        widths.resize(problem.dimension);
        for (std::size_t k = 0; k < widths.size(); ++k) {
            widths[k] = problem.upper[k] - problem.lower[k];
        }
    }

    for (Bat& bat : state.bats) {
        bat.frequency = draw_frequency(config, stream.uniform01());
        bat.velocity = update_velocity(bat.velocity, bat.position, state.global_best.position, bat.frequency);
        Vector candidate = update_position(bat.position, bat.velocity);

        if (stream.uniform01() > bat.pulse_rate) {
            candidate = config.box_relative_walk
                            ? local_walk(state.global_best.position, loudness_now, widths, stream)
                            : local_walk(state.global_best.position, loudness_now, stream);
            ++state.local_walks;
        }
        EvaluatedPoint trial = evaluate(problem, repair(problem, candidate));
        ++state.evaluation_count;

        const bool gate_open = stream.uniform01() < bat.loudness || !config.loudness_gate;
        if (gate_open && handler.better(trial, bat.best_eval)) {
            bat.position = trial.position;
            bat.best_eval = trial;
            ++bat.acceptances;
            if (!config.frozen_schedules) {
                bat.loudness = update_loudness(bat.loudness, config.alpha);
                const double schedule_t = config.pulse_schedule == PulseSchedule::acceptance_count
                                              ? static_cast<double>(bat.acceptances)
                                              : static_cast<double>(t);
                bat.pulse_rate = update_pulse_rate(bat.initial_pulse_rate, config.gamma, schedule_t);
            }
        }
        if (handler.better(trial, state.global_best)) {
            state.global_best = std::move(trial);
        }
    }
    state.iteration = t;
}

OptimizationResult run_bat(const Problem& problem, const SwarmConfig& config, const ConstraintHandler& handler) {
    RandomStream stream(config.seed);
    SwarmState state = init_swarm(problem, config, stream);
    refresh_global_best(state, handler);

    OptimizationResult result;
    result.algorithm = "ba";
    result.trace.reserve(config.max_iterations + 1);
    result.trace.push_back(
        {state.global_best.objective, state.global_best.total_violation, handler.feasible(state.global_best)});
    for (std::size_t it = 0; it < config.max_iterations; ++it) {
        step(state, problem, config, handler, stream);
        result.trace.push_back(
            {state.global_best.objective, state.global_best.total_violation, handler.feasible(state.global_best)});
    }
    result.best = state.global_best;
    result.constraint_values = raw_constraint_values(problem, result.best.position);
    result.feasible = handler.feasible(result.best);
    result.evaluation_count = state.evaluation_count;
    return result;
}

}  // namespace batopt
