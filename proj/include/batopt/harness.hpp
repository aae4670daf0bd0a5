#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "batopt/baselines.hpp"
#include "batopt/bat.hpp"
#include "batopt/constraints.hpp"
#include "batopt/problem.hpp"

namespace batopt {

enum class ReportFormat { csv, jsonl };

ReportFormat parse_format(const std::string& name);

/// One experiment: `runs` independent replicates of one algorithm on one problem.
///
/// For BA the budget is `population` bats for `iterations` steps
/// (population * (iterations + 1) evaluations). Baselines get
/// population * iterations evaluations.
struct ExperimentSpec {
    std::string problem;
    std::string algorithm = "ba";  ///< ba | pso | de | ga
    std::size_t population = 25;
    std::size_t iterations = 1000;
    std::size_t runs = 50;
    std::uint64_t master_seed = 1;
    ConstraintHandler handler;
    /// Template for BA runs; n_bats, max_iterations and seed are overwritten per run.
    SwarmConfig swarm;
    /// Template for baseline runs; algorithm, population, budget and seed are overwritten.
    BaselineConfig baseline;
    /// 0 = hardware concurrency.
    std::size_t threads = 0;

    void validate() const;
};

struct RunRecord {
    std::size_t run_index = 0;
    std::uint64_t seed = 0;
    double best_objective = 0.0;
    bool feasible = false;
    double total_violation = 0.0;
    std::uint64_t evaluations = 0;
    Vector x;
    /// Non-empty when the replicate threw; the other fields are then meaningless.
    std::string error;

    bool failed() const noexcept { return !error.empty(); }
};

/// Statistics over the feasible, non-failed runs. Absent values mean no such run.
struct Statistics {
    std::size_t feasible_runs = 0;
    std::size_t infeasible_runs = 0;
    std::size_t failed_runs = 0;
    std::optional<double> best;
    std::optional<double> mean;
    std::optional<double> worst;
    /// Sample standard deviation (n - 1); 0 when a single run is included.
    std::optional<double> std_dev;
    std::optional<std::size_t> best_run;

    bool single_run() const noexcept { return feasible_runs == 1; }
    bool operator==(const Statistics&) const = default;
};

struct RunReport {
    std::string problem;
    std::string algorithm;
    std::size_t dimension = 0;
    std::size_t population = 0;
    std::size_t iterations = 0;
    std::uint64_t master_seed = 0;
    std::vector<RunRecord> records;
    Statistics statistics;
    /// False when at least one replicate failed.
    bool complete = true;
    double wall_seconds = 0.0;
};

/// Aggregate of per-run records; order-independent.
Statistics aggregate(const std::vector<RunRecord>& records);

/// Runs one replicate (used by run_experiment and for re-running a single row).
RunRecord run_replicate(const Problem& problem, const ExperimentSpec& spec, std::size_t run_index);

RunReport run_experiment(const ExperimentSpec& spec);

std::string format_csv(const RunReport& report);
std::string format_jsonl(const RunReport& report, bool include_wall_time = true);

/// Writes the report; throws std::runtime_error naming the path on IO failure.
void emit_report(const RunReport& report, ReportFormat format, const std::filesystem::path& path);

/// Reads the per-run rows back (summary row skipped).
std::vector<RunRecord> parse_csv_records(const std::string& text);
std::vector<RunRecord> parse_jsonl_records(const std::string& text);

}  // namespace batopt
