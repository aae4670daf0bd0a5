#include "batopt/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "batopt/rng.hpp"

namespace batopt {

void BaselineConfig::validate() const {
    if (population < 2) {
        throw std::invalid_argument("baseline population must be at least 2");
    }
    if (max_evaluations < population) {
        throw std::invalid_argument("evaluation budget must cover the initial population");
    }
    switch (algorithm) {
        case BaselineAlgorithm::pso:
            if (!(inertia >= 0.0 && inertia < 1.0) || cognitive < 0.0 || social < 0.0 ||
                !(max_velocity_fraction > 0.0)) {
                throw std::invalid_argument("PSO knobs out of range");
            }
            break;
        case BaselineAlgorithm::de:
            if (population < 4) {
                throw std::invalid_argument("DE/rand/1 needs a population of at least 4");
            }
            if (!(differential_weight > 0.0 && differential_weight <= 2.0) ||
                !(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
                throw std::invalid_argument("DE knobs out of range");
            }
            break;
        case BaselineAlgorithm::ga:
            if (!(ga_crossover_rate >= 0.0 && ga_crossover_rate <= 1.0) || ga_mutation_rate > 1.0 ||
                !(ga_mutation_scale > 0.0) || blend_alpha < 0.0 || tournament_size == 0 ||
                tournament_size > population) {
                throw std::invalid_argument("GA knobs out of range");
            }
            break;
    }
}

std::string to_string(BaselineAlgorithm algorithm) {
    switch (algorithm) {
        case BaselineAlgorithm::pso: return "pso";
        case BaselineAlgorithm::de: return "de";
        case BaselineAlgorithm::ga: return "ga";
    }
    return "?";
}

BaselineAlgorithm parse_baseline(const std::string& name) {
    if (name == "pso") return BaselineAlgorithm::pso;
    if (name == "de") return BaselineAlgorithm::de;
    if (name == "ga") return BaselineAlgorithm::ga;
    throw std::invalid_argument("unknown baseline '" + name + "' (expected pso, de or ga)");
}

namespace {

// Shared bookkeeping: budgeted evaluation, best-so-far and trace.
class Run {
public:
    Run(const Problem& problem, const BaselineConfig& config, const ConstraintHandler& handler)
        : problem_(problem), config_(config), handler_(handler), stream_(config.seed) {}

    bool exhausted() const noexcept { return evaluations_ >= config_.max_evaluations; }

    EvaluatedPoint evaluate(std::span<const double> x) {
        EvaluatedPoint point = batopt::evaluate(problem_, repair(problem_, x));
        ++evaluations_;
        if (!has_best_ || handler_.better(point, best_)) {
            best_ = point;
            has_best_ = true;
        }
        return point;
    }

    Vector random_point() {
        Vector x(problem_.dimension);
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = problem_.lower[k] < problem_.upper[k] ? stream_.uniform_in(problem_.lower[k], problem_.upper[k])
                                                         : problem_.lower[k];
        }
        return x;
    }

    void record() { trace_.push_back({best_.objective, best_.total_violation, handler_.feasible(best_)}); }

    OptimizationResult finish(std::string algorithm) {
        OptimizationResult result;
        result.algorithm = std::move(algorithm);
        result.best = best_;
        result.constraint_values = raw_constraint_values(problem_, best_.position);
        result.feasible = handler_.feasible(best_);
        result.evaluation_count = evaluations_;
        result.trace = std::move(trace_);
        return result;
    }

    const Problem& problem() const { return problem_; }
    const ConstraintHandler& handler() const { return handler_; }
    RandomStream& stream() { return stream_; }
    double range(std::size_t k) const { return problem_.upper[k] - problem_.lower[k]; }

private:
    const Problem& problem_;
    const BaselineConfig& config_;
    const ConstraintHandler& handler_;
    RandomStream stream_;
    std::uint64_t evaluations_ = 0;
    EvaluatedPoint best_;
    bool has_best_ = false;
    std::vector<TracePoint> trace_;
};

std::vector<EvaluatedPoint> initial_population(Run& run, std::size_t size) {
    std::vector<EvaluatedPoint> population;
    population.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        population.push_back(run.evaluate(run.random_point()));
    }
    run.record();
    return population;
}

OptimizationResult run_pso(const Problem& problem, const BaselineConfig& config, const ConstraintHandler& handler) {
    Run run(problem, config, handler);
    const std::size_t d = problem.dimension;
    std::vector<EvaluatedPoint> personal = initial_population(run, config.population);
    std::vector<Vector> positions;
    for (const auto& p : personal) {
        positions.push_back(p.position);
    }
    std::vector<Vector> velocities(config.population, Vector(d, 0.0));
    auto global = [&] {
        std::size_t best = 0;
        for (std::size_t i = 1; i < personal.size(); ++i) {
            if (handler.better(personal[i], personal[best])) best = i;
        }
        return personal[best];
    };
    EvaluatedPoint leader = global();

    while (!run.exhausted()) {
        for (std::size_t i = 0; i < config.population && !run.exhausted(); ++i) {
            for (std::size_t k = 0; k < d; ++k) {
                const double limit = config.max_velocity_fraction * run.range(k);
                double v = config.inertia * velocities[i][k] +
                           config.cognitive * run.stream().uniform01() * (personal[i].position[k] - positions[i][k]) +
                           config.social * run.stream().uniform01() * (leader.position[k] - positions[i][k]);
                velocities[i][k] = limit > 0.0 ? std::clamp(v, -limit, limit) : 0.0;
                positions[i][k] += velocities[i][k];
            }
            EvaluatedPoint trial = run.evaluate(positions[i]);
            positions[i] = trial.position;
            if (handler.better(trial, personal[i])) {
                personal[i] = trial;
                if (handler.better(trial, leader)) {
                    leader = std::move(trial);
                }
            }
        }
        run.record();
    }
    return run.finish("pso");
}

OptimizationResult run_de(const Problem& problem, const BaselineConfig& config, const ConstraintHandler& handler) {
    Run run(problem, config, handler);
    const std::size_t d = problem.dimension;
    const std::size_t n = config.population;
    std::vector<EvaluatedPoint> population = initial_population(run, n);

    while (!run.exhausted()) {
        for (std::size_t i = 0; i < n && !run.exhausted(); ++i) {
            std::size_t r1, r2, r3;
            do { r1 = run.stream().index_below(n); } while (r1 == i);
            do { r2 = run.stream().index_below(n); } while (r2 == i || r2 == r1);
            do { r3 = run.stream().index_below(n); } while (r3 == i || r3 == r1 || r3 == r2);
            const std::size_t forced = run.stream().index_below(d);
            Vector trial_x = population[i].position;
            for (std::size_t k = 0; k < d; ++k) {
                if (k == forced || run.stream().uniform01() < config.crossover_probability) {
                    trial_x[k] = population[r1].position[k] +
                                 config.differential_weight * (population[r2].position[k] - population[r3].position[k]);
                }
            }
            EvaluatedPoint trial = run.evaluate(trial_x);
            if (!handler.better(population[i], trial)) {
                population[i] = std::move(trial);
            }
        }
        run.record();
    }
    return run.finish("de");
}

OptimizationResult run_ga(const Problem& problem, const BaselineConfig& config, const ConstraintHandler& handler) {
    Run run(problem, config, handler);
    const std::size_t d = problem.dimension;
    const std::size_t n = config.population;
    const double mutation_rate = config.ga_mutation_rate > 0.0 ? config.ga_mutation_rate : 1.0 / static_cast<double>(d);
    std::vector<EvaluatedPoint> population = initial_population(run, n);

    auto tournament = [&]() -> const EvaluatedPoint& {
        std::size_t winner = run.stream().index_below(n);
        for (std::size_t t = 1; t < config.tournament_size; ++t) {
            const std::size_t challenger = run.stream().index_below(n);
            if (handler.better(population[challenger], population[winner])) winner = challenger;
        }
        return population[winner];
    };

    while (!run.exhausted()) {
        std::size_t elite = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (handler.better(population[i], population[elite])) elite = i;
        }
        std::vector<EvaluatedPoint> next;
        next.reserve(n);
        next.push_back(population[elite]);
        while (next.size() < n && !run.exhausted()) {
            const EvaluatedPoint& a = tournament();
            const EvaluatedPoint& b = tournament();
            Vector child = a.position;
            if (run.stream().uniform01() < config.ga_crossover_rate) {
                for (std::size_t k = 0; k < d; ++k) {
                    const double lo = std::min(a.position[k], b.position[k]);
                    const double hi = std::max(a.position[k], b.position[k]);
                    const double spread = config.blend_alpha * (hi - lo);
                    child[k] = (hi - lo) + 2.0 * spread > 0.0 ? run.stream().uniform_in(lo - spread, hi + spread) : lo;
                }
            }
            for (std::size_t k = 0; k < d; ++k) {
                if (run.stream().uniform01() < mutation_rate) {
                    child[k] += config.ga_mutation_scale * run.range(k) * run.stream().normal();
                }
            }
            next.push_back(run.evaluate(child));
        }
        // A budget cut mid-generation keeps the unreplaced tail of the old population.
        for (std::size_t i = next.size(); i < n; ++i) {
            next.push_back(population[i]);
        }
        population = std::move(next);
        run.record();
    }
    return run.finish("ga");
}

}  // namespace

OptimizationResult run_baseline(const Problem& problem, const BaselineConfig& config, const ConstraintHandler& handler) {
    problem.validate();
    config.validate();
    switch (config.algorithm) {
        case BaselineAlgorithm::pso: return run_pso(problem, config, handler);
        case BaselineAlgorithm::de: return run_de(problem, config, handler);
        case BaselineAlgorithm::ga: return run_ga(problem, config, handler);
    }
    throw std::logic_error("unhandled baseline algorithm");
}

}  // namespace batopt
