#include "batopt/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "batopt/benchmarks.hpp"
#include "batopt/rng.hpp"

namespace batopt {

ReportFormat parse_format(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "jsonl" || name == "json-lines") return ReportFormat::jsonl;
    throw std::invalid_argument("unknown report format '" + name + "' (expected csv or jsonl)");
}

void ExperimentSpec::validate() const {
    if (runs == 0) {
        throw std::invalid_argument("runs must be at least 1");
    }
    if (population == 0) {
        throw std::invalid_argument("population must be positive");
    }
    if (algorithm != "ba") {
        parse_baseline(algorithm);
        if (iterations == 0) {
            throw std::invalid_argument("baselines need at least one iteration of budget");
        }
    }
}

Statistics aggregate(const std::vector<RunRecord>& records) {
    Statistics stats;
    std::vector<std::pair<double, std::size_t>> values;
    for (const auto& record : records) {
        if (record.failed()) {
            ++stats.failed_runs;
        } else if (!record.feasible) {
            ++stats.infeasible_runs;
        } else {
            values.emplace_back(record.best_objective, record.run_index);
        }
    }
    stats.feasible_runs = values.size();
    if (values.empty()) {
        return stats;
    }
    // Sorted summation keeps the statistics independent of record order.
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (const auto& [value, index] : values) {
        sum += value;
    }
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    double squares = 0.0;
    for (const auto& [value, index] : values) {
        squares += (value - mean) * (value - mean);
    }
    stats.best = values.front().first;
    stats.best_run = values.front().second;
    stats.worst = values.back().first;
    stats.mean = std::clamp(mean, *stats.best, *stats.worst);
    stats.std_dev = values.size() > 1 ? std::sqrt(squares / (n - 1.0)) : 0.0;
    return stats;
}

RunRecord run_replicate(const Problem& problem, const ExperimentSpec& spec, std::size_t run_index) {
    RunRecord record;
    record.run_index = run_index;
    record.seed = derive_seed(spec.master_seed, run_index);
    try {
        OptimizationResult result;
        if (spec.algorithm == "ba") {
            SwarmConfig config = spec.swarm;
            config.n_bats = spec.population;
            config.max_iterations = spec.iterations;
            config.seed = record.seed;
            result = run_bat(problem, config, spec.handler);
        } else {
            BaselineConfig config = spec.baseline;
            config.algorithm = parse_baseline(spec.algorithm);
            config.population = spec.population;
            config.max_evaluations = static_cast<std::uint64_t>(spec.population) * spec.iterations;
            config.seed = record.seed;
            result = run_baseline(problem, config, spec.handler);
        }
        record.best_objective = result.best.objective;
        record.feasible = result.feasible;
        record.total_violation = result.best.total_violation;
        record.evaluations = result.evaluation_count;
        record.x = result.best.position;
    } catch (const std::exception& error) {
        record.error = error.what();
        if (record.error.empty()) {
            record.error = "unknown error";
        }
    }
    return record;
}

RunReport run_experiment(const ExperimentSpec& spec) {
    spec.validate();
    const auto start = std::chrono::steady_clock::now();
    const Problem problem = registry_lookup(spec.problem);

    RunReport report;
    report.problem = problem.name;
    report.algorithm = spec.algorithm;
    report.dimension = problem.dimension;
    report.population = spec.population;
    report.iterations = spec.iterations;
    report.master_seed = spec.master_seed;
    report.records.resize(spec.runs);

    std::size_t workers = spec.threads != 0 ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, spec.runs);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < spec.runs; i = next++) {
            report.records[i] = run_replicate(problem, spec, i);
        }
    };
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 1; w < workers; ++w) {
            pool.emplace_back(work);
        }
        work();
    }

    report.statistics = aggregate(report.records);
    report.complete = report.statistics.failed_runs == 0;
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

namespace {

std::string number(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

std::vector<std::string> split(const std::string& line, char separator) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, separator)) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == separator) {
        fields.emplace_back();
    }
    return fields;
}

nlohmann::ordered_json optional_json(const std::optional<double>& value) {
    return value ? nlohmann::ordered_json(*value) : nlohmann::ordered_json(nullptr);
}

}  // namespace

std::string format_csv(const RunReport& report) {
    std::ostringstream out;
    out << "problem,algorithm,run_index,seed,best_objective,feasible,total_violation,evaluations";
    for (std::size_t k = 1; k <= report.dimension; ++k) {
        out << ",x_" << k;
    }
    out << '\n';
    std::uint64_t total_evaluations = 0;
    for (const auto& r : report.records) {
        total_evaluations += r.evaluations;
        out << report.problem << ',' << report.algorithm << ',' << r.run_index << ',' << r.seed << ',';
        if (r.failed()) {
            out << ",failed,," << r.evaluations;
            for (std::size_t k = 0; k < report.dimension; ++k) out << ',';
        } else {
            out << number(r.best_objective) << ',' << (r.feasible ? "true" : "false") << ','
                << number(r.total_violation) << ',' << r.evaluations;
            for (double v : r.x) out << ',' << number(v);
        }
        out << '\n';
    }
    // Summary: aggregate best, feasible-run count, total evaluations and the best run's point.
    const Statistics& s = report.statistics;
    out << report.problem << ',' << report.algorithm << ",summary," << report.master_seed << ','
        << (s.best ? number(*s.best) : "") << ',' << s.feasible_runs << ",," << total_evaluations;
    if (s.best_run) {
        for (double v : report.records[*s.best_run].x) out << ',' << number(v);
    } else {
        for (std::size_t k = 0; k < report.dimension; ++k) out << ',';
    }
    out << '\n';
    return out.str();
}

std::string format_jsonl(const RunReport& report, bool include_wall_time) {
    std::ostringstream out;
    for (const auto& r : report.records) {
        nlohmann::ordered_json line{{"type", "run"},
                                    {"problem", report.problem},
                                    {"algorithm", report.algorithm},
                                    {"run_index", r.run_index},
                                    {"seed", r.seed}};
        if (r.failed()) {
            line["error"] = r.error;
        } else {
            line["best_objective"] = r.best_objective;
            line["feasible"] = r.feasible;
            line["total_violation"] = r.total_violation;
            line["evaluations"] = r.evaluations;
            line["x"] = r.x;
        }
        out << line.dump() << '\n';
    }
    const Statistics& s = report.statistics;
    nlohmann::ordered_json summary{{"type", "summary"},
                                   {"problem", report.problem},
                                   {"algorithm", report.algorithm},
                                   {"master_seed", report.master_seed},
                                   {"budget", {{"population", report.population}, {"iterations", report.iterations}}},
                                   {"runs", report.records.size()},
                                   {"complete", report.complete},
                                   {"statistics",
                                    {{"feasible_runs", s.feasible_runs},
                                     {"infeasible_runs", s.infeasible_runs},
                                     {"failed_runs", s.failed_runs},
                                     {"best", optional_json(s.best)},
                                     {"mean", optional_json(s.mean)},
                                     {"worst", optional_json(s.worst)},
                                     {"std", optional_json(s.std_dev)},
                                     {"single_run", s.single_run()}}}};
    if (s.best_run) {
        summary["best_x"] = report.records[*s.best_run].x;
    }
    if (include_wall_time) {
        summary["wall_seconds"] = report.wall_seconds;
    }
    out << summary.dump() << '\n';
    return out.str();
}

void emit_report(const RunReport& report, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open report file " + path.string() + " for writing");
    }
    out << (format == ReportFormat::csv ? format_csv(report) : format_jsonl(report));
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing report file " + path.string());
    }
}

std::vector<RunRecord> parse_csv_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("empty CSV report");
    }
    const auto header = split(line, ',');
    if (header.size() < 8 || header[0] != "problem" || header[7] != "evaluations") {
        throw std::invalid_argument("CSV report header not recognized");
    }
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw std::invalid_argument("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                                        std::to_string(header.size()));
        }
        if (fields[2] == "summary") continue;
        RunRecord r;
        r.run_index = std::stoul(fields[2]);
        r.seed = std::stoull(fields[3]);
        r.evaluations = std::stoull(fields[7]);
        if (fields[5] == "failed") {
            r.error = "failed";
        } else {
            r.best_objective = std::stod(fields[4]);
            r.feasible = fields[5] == "true";
            r.total_violation = std::stod(fields[6]);
            for (std::size_t k = 8; k < fields.size(); ++k) {
                r.x.push_back(std::stod(fields[k]));
            }
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<RunRecord> parse_jsonl_records(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<RunRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto doc = nlohmann::json::parse(line);
        if (doc.at("type") != "run") continue;
        RunRecord r;
        r.run_index = doc.at("run_index").get<std::size_t>();
        r.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("error")) {
            r.error = doc.at("error").get<std::string>();
        } else {
            r.best_objective = doc.at("best_objective").get<double>();
            r.feasible = doc.at("feasible").get<bool>();
            r.total_violation = doc.at("total_violation").get<double>();
            r.evaluations = doc.at("evaluations").get<std::uint64_t>();
            r.x = doc.at("x").get<Vector>();
        }
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace batopt
