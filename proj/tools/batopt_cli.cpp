// Command-line front end: run experiments, list and describe problems.

#include <cstdio>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "batopt/benchmarks.hpp"
#include "batopt/harness.hpp"

namespace {

int run_command(batopt::ExperimentSpec spec, bool population_set, bool iterations_set, const std::string& handler,
                double penalty, const std::string& schedule, const std::string& out, const std::string& format) {
    const batopt::Budget budget = batopt::default_budget(spec.problem);
    if (!population_set) spec.population = budget.population;
    if (!iterations_set) spec.iterations = budget.iterations;

    spec.handler = handler == "penalty" ? batopt::ConstraintHandler::penalty(penalty) : batopt::ConstraintHandler{};
    spec.swarm.pulse_schedule = schedule == "iteration" ? batopt::PulseSchedule::global_iteration
                                                        : batopt::PulseSchedule::acceptance_count;

    const batopt::RunReport report = batopt::run_experiment(spec);
    const auto report_format = batopt::parse_format(format);
    if (out.empty() || out == "-") {
        std::cout << (report_format == batopt::ReportFormat::csv ? batopt::format_csv(report)
                                                                 : batopt::format_jsonl(report));
    } else {
        batopt::emit_report(report, report_format, out);
    }

    const auto& s = report.statistics;
    std::fprintf(stderr, "%s/%s: %zu runs, %zu feasible, %zu infeasible, %zu failed, %.2fs\n", report.problem.c_str(),
                 report.algorithm.c_str(), report.records.size(), s.feasible_runs, s.infeasible_runs, s.failed_runs,
                 report.wall_seconds);
    if (s.best) {
        std::fprintf(stderr, "best %.10g  mean %.10g  worst %.10g  std %.4g\n", *s.best, *s.mean, *s.worst,
                     *s.std_dev);
    }
    return s.feasible_runs == 0 ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bat Algorithm and baseline optimizers on constrained engineering benchmarks"};
    app.set_config("--config", "", "Read options from a TOML/INI file; command-line flags take precedence");
    app.require_subcommand(1);

    batopt::ExperimentSpec spec;
    std::string handler = "feasibility";
    double penalty = 1e6;
    std::string schedule = "acceptance";
    std::string out;
    std::string format = "csv";

    auto* run = app.add_subcommand("run", "Run independent replicates and emit a report");
    run->add_option("--problem", spec.problem, "Registered problem name")->required();
    run->add_option("--algorithm", spec.algorithm, "Optimizer")
        ->check(CLI::IsMember({"ba", "pso", "de", "ga"}))
        ->capture_default_str();
    auto* population = run->add_option("--bats,--pop", spec.population, "Bats (BA) or population size (baselines)");
    auto* iterations = run->add_option("--iters", spec.iterations, "Iterations (BA) or generations of budget");
    run->add_option("--runs", spec.runs, "Independent replicates")->capture_default_str();
    run->add_option("--seed", spec.master_seed, "Master seed (decimal)")->capture_default_str();
    run->add_option("--handler", handler, "Constraint handling")
        ->check(CLI::IsMember({"feasibility", "penalty"}))
        ->capture_default_str();
    run->add_option("--penalty", penalty, "Static penalty coefficient")->capture_default_str();
    run->add_option("--tolerance", spec.handler.tolerance, "Feasibility tolerance per violation entry")
        ->capture_default_str();
    run->add_option("--out", out, "Output path ('-' or empty for stdout)");
    run->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    run->add_option("--threads", spec.threads, "Worker threads (0 = all cores)")->capture_default_str();
    run->add_option("--fmin", spec.swarm.f_min, "BA minimum frequency")->capture_default_str();
    run->add_option("--fmax", spec.swarm.f_max, "BA maximum frequency")->capture_default_str();
    run->add_option("--alpha", spec.swarm.alpha, "BA loudness decay")->capture_default_str();
    run->add_option("--gamma", spec.swarm.gamma, "BA pulse-rate growth")->capture_default_str();
    run->add_option("--loudness-min", spec.swarm.loudness_init_range[0], "BA initial loudness lower end")
        ->capture_default_str();
    run->add_option("--loudness-max", spec.swarm.loudness_init_range[1], "BA initial loudness upper end")
        ->capture_default_str();
    run->add_option("--pulse-min", spec.swarm.pulse_init_range[0], "BA initial pulse rate r0 lower end")
        ->capture_default_str();
    run->add_option("--pulse-max", spec.swarm.pulse_init_range[1], "BA initial pulse rate r0 upper end")
        ->capture_default_str();
    run->add_flag("--relative-walk", spec.swarm.box_relative_walk, "Scale the BA local walk by the box width");
    run->add_option("--pulse-schedule", schedule, "Time index of the pulse-rate schedule")
        ->check(CLI::IsMember({"acceptance", "iteration"}))
        ->capture_default_str();

    auto* list = app.add_subcommand("list-problems", "List registered problems with default budgets");

    std::string describe_name;
    auto* describe = app.add_subcommand("describe", "Print a problem definition");
    describe->add_option("--problem", describe_name, "Registered problem name")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return run_command(spec, population->count() > 0, iterations->count() > 0, handler, penalty, schedule, out,
                               format);
        }
        if (*list) {
            for (const auto& entry : batopt::registry()) {
                std::printf("%-26s %4zu x %-5zu %s\n", entry.name.c_str(), entry.budget.population,
                            entry.budget.iterations, entry.summary.c_str());
            }
            return 0;
        }
        if (*describe) {
            std::cout << batopt::describe(batopt::registry_lookup(describe_name)) << '\n';
            return 0;
        }
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 1;
    }
    return 0;
}
