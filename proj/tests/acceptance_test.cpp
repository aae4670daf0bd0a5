// Acceptance runs. With no argument every criterion runs; an argument 1..8 selects one.
// Prints one PASS/FAIL line per criterion and exits non-zero if any failed.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "batopt/bat.hpp"
#include "batopt/benchmarks.hpp"
#include "batopt/constraints.hpp"
#include "batopt/fem.hpp"
#include "batopt/harness.hpp"
#include "batopt/rng.hpp"

using namespace batopt;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Verdict {
    bool pass;
    std::string detail;
};

ExperimentSpec experiment(const std::string& problem, std::size_t population, std::size_t iterations) {
    ExperimentSpec spec;
    spec.problem = problem;
    spec.population = population;
    spec.iterations = iterations;
    spec.runs = 50;
    spec.master_seed = kSeed;
    return spec;
}

// Small loudness, gentle frequencies and a box-scaled walk; see README "Tuned settings".
SwarmConfig fine_swarm(double loudness) {
    SwarmConfig c;
    c.f_max = 0.5;
    c.loudness_init_range = {loudness, 2.0 * loudness};
    c.box_relative_walk = true;
    return c;
}

double max_violation(const Problem& p, const Vector& x) {
    double worst = -INFINITY;
    for (double g : normalize_constraints(p, x)) {
        worst = std::max(worst, g);
    }
    return worst;
}

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Verdict truss() {
    auto spec = experiment("three_bar_truss", 25, 2000);
    spec.swarm.f_max = 0.5;
    spec.swarm.loudness_init_range = {0.1, 0.2};
    const auto report = run_experiment(spec);
    const auto& s = report.statistics;
    if (!s.best) {
        return {false, "no feasible run"};
    }
    const Problem p = three_bar_truss();
    const Vector& x = report.records[*s.best_run].x;
    double worst_g = -INFINITY;
    for (double g : raw_constraint_values(p, x)) {
        worst_g = std::max(worst_g, g);
    }
    const bool ok = std::abs(*s.best - 263.896248) <= 1e-2 && worst_g <= 1e-6;
    return {ok, fmt("three-bar truss best %.6f (target 263.896248 +- 0.01), max g %.2e", *s.best, worst_g)};
}

Verdict heat() {
    const Problem p = heat_exchanger();
    const auto star = evaluate(p, p.known_best->x);
    const bool star_ok = std::abs(star.objective - 7049.2480) <= 1e-3 && star.total_violation <= 1e-3;

    auto spec = experiment("heat_exchanger", 25, 4000);
    spec.swarm = fine_swarm(0.003);
    const auto report = run_experiment(spec);
    const auto& s = report.statistics;
    const bool runs_ok = s.best && *s.best <= 7200.0 && s.feasible_runs >= 40;
    return {star_ok && runs_ok,
            fmt("heat exchanger f(X*) %.4f viol %.2e; BA best %.2f (<= 7200), feasible %zu/50 (>= 40)",
                star.objective, star.total_violation, s.best.value_or(NAN), s.feasible_runs)};
}

Verdict identification() {
    const auto id = fem::build_benchmark();
    const double at_truth = fem::identification_objective(id, id.true_inertias);

    auto spec = experiment("parameter_identification", 25, 1000);
    spec.swarm = fine_swarm(0.03);
    const auto report = run_experiment(spec);
    std::size_t recovered = 0;
    double median_error = 0.0;
    std::vector<double> errors;
    for (const auto& r : report.records) {
        double worst = 0.0;
        for (std::size_t k = 0; k < id.true_inertias.size(); ++k) {
            worst = std::max(worst, std::abs(r.x[k] / id.true_inertias[k] - 1.0));
        }
        errors.push_back(worst);
        recovered += worst <= 0.01 ? 1 : 0;
    }
    std::sort(errors.begin(), errors.end());
    median_error = errors[errors.size() / 2];
    const bool ok = at_truth <= 1e-12 && recovered >= 45;
    return {ok, fmt("identification f(X_true) %.1e; runs with all inertias within 1%%: %zu/50 (>= 45), "
                    "median worst error %.1f%%",
                    at_truth, recovered, 100.0 * median_error)};
}

Verdict oracle_problems() {
    struct Case {
        const char* name;
        double oracle;
        double tolerance;
        ExperimentSpec spec;
    };
    std::vector<Case> cases;
    cases.push_back({"himmelblau", -30665.538756, 0.005, experiment("himmelblau", 25, 1000)});
    for (auto [name, oracle, tol] : {std::tuple{"mathematical_12", 256.752121, 0.005},
                                     std::tuple{"mathematical_60", 30945.277994, 0.02}}) {
        auto spec = experiment(name, 25, 20000);
        spec.swarm = fine_swarm(0.003);
        cases.push_back({name, oracle, tol, spec});
    }
    bool all = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto s = run_experiment(c.spec).statistics;
        const double gap = s.best ? std::abs(*s.best - c.oracle) / std::abs(c.oracle) : INFINITY;
        const bool ok = gap <= c.tolerance;
        all = all && ok;
        detail += fmt("%s%s %.4f vs %.4f (%.2f%% <= %.1f%%)", detail.empty() ? "" : "; ", c.name,
                      s.best.value_or(NAN), c.oracle, 100.0 * gap, 100.0 * c.tolerance);
    }
    return {all, detail};
}

Verdict property_problems() {
    const auto speed = run_experiment(experiment("speed_reducer", 25, 1000));
    const Problem sp = speed_reducer();
    bool speed_ok = false;
    double speed_g = NAN;
    if (speed.statistics.best) {
        speed_g = max_violation(sp, speed.records[*speed.statistics.best_run].x);
        speed_ok = speed_g <= 1e-6;
    }

    const auto cant = run_experiment(experiment("cantilever_beam", 25, 1000));
    const Problem cp = cantilever_beam();
    bool cant_ok = false;
    double deflection = NAN;
    double tightest_stress = INFINITY;
    double cant_g = NAN;
    if (cant.statistics.best) {
        const Vector& x = cant.records[*cant.statistics.best_run].x;
        cant_g = max_violation(cp, x);
        const auto g = raw_constraint_values(cp, x);
        deflection = std::abs(g[5]) / 2.7;
        for (std::size_t k = 0; k < 5; ++k) {
            tightest_stress = std::min(tightest_stress, std::abs(g[k]) / 14000.0);
        }
        cant_ok = cant_g <= 1e-6 && deflection <= 0.05 && tightest_stress <= 0.05;
    }
    return {speed_ok && cant_ok,
            fmt("speed reducer best %.4f max violation %.2e; cantilever best %.1f max violation %.2e, "
                "|g_defl|/limit %.3f, min |g_stress|/limit %.3f (both <= 0.05)",
                speed.statistics.best.value_or(NAN), speed_g, cant.statistics.best.value_or(NAN), cant_g,
                deflection, tightest_stress)};
}

Verdict car() {
    auto ba = experiment("car_side_impact", 20, 999);  // 20 * (999 + 1) = 20000 evaluations
    ba.swarm.f_max = 0.5;
    ba.swarm.loudness_init_range = {0.08, 0.16};
    const double ba_mean = run_experiment(ba).statistics.mean.value_or(INFINITY);
    double means[3];
    const char* names[3] = {"pso", "de", "ga"};
    for (int i = 0; i < 3; ++i) {
        auto spec = experiment("car_side_impact", 20, 1000);
        spec.algorithm = names[i];
        means[i] = run_experiment(spec).statistics.mean.value_or(INFINITY);
    }
    const double better = std::min(means[0], means[1]);
    const bool ok = ba_mean < means[2] && ba_mean <= 1.02 * better;
    return {ok, fmt("car side impact means: BA %.4f, PSO %.4f, DE %.4f, GA %.4f (BA < GA and <= 1.02 * %.4f)",
                    ba_mean, means[0], means[1], means[2], better)};
}

Verdict engine_properties() {
    std::vector<std::string> failed;
    auto check = [&](bool ok, const char* what) {
        if (!ok) {
            failed.emplace_back(what);
        }
    };

    double a = 2.0;
    for (int i = 0; i < 10; ++i) {
        a = update_loudness(a, 0.9);
    }
    check(std::abs(a - 2.0 * std::pow(0.9, 10)) <= 1e-12, "loudness decay");
    check(std::abs(update_pulse_rate(1.0, 0.9, 1.0) - (1.0 - std::exp(-0.9))) <= 1e-12 &&
              std::abs(update_pulse_rate(0.7, 0.9, 1e3) - 0.7) <= 1e-12,
          "pulse saturation");

    SwarmConfig cfg;
    check(draw_frequency(cfg, 0.0) == cfg.f_min && draw_frequency(cfg, 1.0) == cfg.f_max, "frequency endpoints");

    const Problem p = himmelblau();
    cfg.n_bats = 10;
    cfg.max_iterations = 200;
    cfg.seed = 42;
    const auto r1 = run_bat(p, cfg);
    const auto r2 = run_bat(p, cfg);
    check(r1.best.position == r2.best.position && r1.best.objective == r2.best.objective, "determinism");
    check(r1.evaluation_count == 10u * 201u, "evaluation count");
    const ConstraintHandler handler;
    bool monotone = true;
    for (std::size_t t = 1; t < r1.trace.size(); ++t) {
        const auto& prev = r1.trace[t - 1];
        const auto& cur = r1.trace[t];
        if (prev.feasible) {
            monotone = monotone && cur.feasible && cur.objective <= prev.objective;
        } else if (!cur.feasible) {
            monotone = monotone && cur.total_violation <= prev.total_violation;
        }
    }
    check(monotone, "best-so-far monotonicity");

    SwarmConfig frozen = cfg;
    frozen.loudness_init_range = {0.0, 0.0};
    RandomStream stream(7);
    auto state = init_swarm(p, frozen, stream);
    const auto before = state.bats;
    for (int i = 0; i < 20; ++i) {
        step(state, p, frozen, handler, stream);
    }
    bool still = true;
    for (std::size_t i = 0; i < before.size(); ++i) {
        still = still && state.bats[i].position == before[i].position && state.bats[i].acceptances == 0;
    }
    check(still, "A=0 freeze");

    const Problem car = car_side_impact();
    RandomStream fuzz(99);
    bool idempotent = true;
    for (int i = 0; i < 1000; ++i) {
        Vector x(car.dimension);
        for (auto& v : x) {
            v = fuzz.uniform_in(-3.0, 3.0);
        }
        const Vector once = repair(car, x);
        idempotent = idempotent && repair(car, once) == once;
    }
    check(idempotent, "clamp/snap idempotence");

    bool transitive = true;
    for (const auto& h : {ConstraintHandler{}, ConstraintHandler::penalty(10.0)}) {
        std::vector<EvaluatedPoint> pts(40);
        for (auto& e : pts) {
            e.objective = std::floor(fuzz.uniform_in(0.0, 4.0));
            const double v = fuzz.uniform01() < 0.4 ? 0.0 : std::floor(fuzz.uniform_in(0.0, 3.0));
            e.violations = {v};
            e.total_violation = v;
        }
        for (const auto& x : pts) {
            for (const auto& y : pts) {
                for (const auto& z : pts) {
                    if (!h.better(x, y) && !h.better(y, z) && h.better(x, z)) {
                        transitive = false;
                    }
                    if (h.better(x, y) && h.better(y, z) && !h.better(x, z)) {
                        transitive = false;
                    }
                }
            }
        }
    }
    check(transitive, "compare transitivity");

    std::string detail = "engine properties: ";
    if (failed.empty()) {
        detail += "all 10 hold";
    } else {
        for (const auto& f : failed) {
            detail += f + "; ";
        }
    }
    return {failed.empty(), detail};
}

Verdict fem_oracles() {
    using namespace batopt::fem;
    const double e = gpa_to_n_per_cm2(200.0);
    const double length = 250.0;
    const double area = 40.0;
    const double inertia = 1500.0;
    const double load = 1000.0;

    FrameModel m;
    m.nodes = {{0.0, 0.0}, {length, 0.0}};
    m.elements = {{0, 1, area, 0}};
    m.fixed_dofs = {0, 1, 2};
    m.elastic_modulus = e;
    m.parameter_count = 1;
    m.load_cases = {{{3, load}}, {{4, -load}}};
    const Vector inertias{inertia};
    const Eigen::MatrixXd u = solve_displacements(m, inertias);
    const double axial = load * length / (e * area);
    const double tip = -load * std::pow(length, 3) / (3.0 * e * inertia);
    const double axial_err = std::abs(u(3, 0) - axial) / std::abs(axial);
    const double tip_err = std::abs(u(4, 1) - tip) / std::abs(tip);

    FrameModel frame = load_frame_model(default_geometry_path());
    const Vector trial{900, 700, 1100, 800, 950, 1400, 1250};
    const Eigen::MatrixXd k = assemble_stiffness(frame, trial);
    const bool symmetric = k == k.transpose();
    const bool ok = axial_err <= 1e-10 && tip_err <= 1e-10 && symmetric;
    return {ok, fmt("FEM axial rel err %.1e, cantilever tip rel err %.1e, stiffness %s", axial_err, tip_err,
                    symmetric ? "exactly symmetric" : "NOT symmetric")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"three-bar truss", truss},
        {"heat exchanger", heat},
        {"parameter identification", identification},
        {"oracle-referenced problems", oracle_problems},
        {"speed reducer and cantilever properties", property_problems},
        {"car side impact ranking", car},
        {"engine properties", engine_properties},
        {"FEM closed forms", fem_oracles},
    };
    std::vector<std::size_t> selected;
    if (argc > 1) {
        const int k = std::atoi(argv[1]);
        if (k < 1 || k > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
            return 2;
        }
        selected.push_back(static_cast<std::size_t>(k - 1));
    } else {
        for (std::size_t i = 0; i < criteria.size(); ++i) {
            selected.push_back(i);
        }
    }
    int failures = 0;
    for (auto i : selected) {
        Verdict v{false, ""};
        try {
            v = criteria[i].second();
        } catch (const std::exception& ex) {
            v = {false, std::string("threw: ") + ex.what()};
        }
        std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    v.detail.c_str());
        std::fflush(stdout);
        failures += v.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
