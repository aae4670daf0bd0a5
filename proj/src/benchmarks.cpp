#include "batopt/benchmarks.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "batopt/fem.hpp"

namespace batopt {

namespace {

using std::numbers::sqrt2;

Constraint upper_limit(std::string label, ScalarFunction g, double limit = 0.0) {
    return Constraint{std::move(label), std::move(g), -kUnbounded, limit};
}

Constraint ranged(std::string label, ScalarFunction g, double lower, double upper) {
    return Constraint{std::move(label), std::move(g), lower, upper};
}

}  // namespace

Problem mathematical_problem(std::size_t n) {
    if (n == 0 || n % 4 != 0) {
        throw std::invalid_argument("mathematical problem: N must be a positive multiple of 4, got " +
                                    std::to_string(n));
    }
    Problem p;
    p.name = "mathematical_" + std::to_string(n);
    p.description = "Chen-Vassiliadis test problem with N/4 two-sided linear constraints";
    p.dimension = n;
    p.objective = [](std::span<const double> x) {
        double weighted = 0.0;
        double squares = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            weighted += std::sqrt(static_cast<double>(i + 1)) * (x[i] - 1.0) * (x[i] - 1.0);
            squares += x[i] * x[i];
        }
        return weighted + (squares - 25.0) * (squares - 25.0);
    };
    for (std::size_t j = 0; j < n / 4; ++j) {
        const std::size_t base = 4 * j;
        p.constraints.push_back(ranged(
            "g" + std::to_string(j + 1),
            [base](std::span<const double> x) {
                return x[base] + 2.0 * x[base + 1] + 3.0 * x[base + 2] + 4.0 * x[base + 3] - 20.0;
            },
            0.0, 30.0));
    }
    p.lower.assign(n, 0.5);
    p.upper.assign(n, 10.0);
    if (n == 12) {
        p.known_best = KnownBest{{}, 256.752121, "oracle"};
    } else if (n == 60) {
        p.known_best = KnownBest{{}, 30945.278, "oracle"};
    }
    return p;
}

Problem himmelblau() {
    Problem p;
    p.name = "himmelblau";
    p.description = "Himmelblau's nonlinear constrained problem (standard coefficients)";
    p.dimension = 5;
    p.objective = [](std::span<const double> x) {
        return 5.3578547 * x[2] * x[2] + 0.8356891 * x[0] * x[4] + 37.293239 * x[0] - 40792.141;
    };
    p.constraints.push_back(ranged(
        "g1",
        [](std::span<const double> x) {
            return 85.334407 + 0.0056858 * x[1] * x[4] + 0.0006262 * x[0] * x[3] - 0.0022053 * x[2] * x[4];
        },
        0.0, 92.0));
    p.constraints.push_back(ranged(
        "g2",
        [](std::span<const double> x) {
            return 80.51249 + 0.0071317 * x[1] * x[4] + 0.0029955 * x[0] * x[1] + 0.0021813 * x[2] * x[2];
        },
        90.0, 110.0));
    p.constraints.push_back(ranged(
        "g3",
        [](std::span<const double> x) {
            return 9.300961 + 0.0047026 * x[2] * x[4] + 0.0012547 * x[0] * x[2] + 0.0019085 * x[2] * x[3];
        },
        20.0, 25.0));
    p.lower = {78.0, 33.0, 27.0, 27.0, 27.0};
    p.upper = {102.0, 45.0, 45.0, 45.0, 45.0};
    p.known_best = KnownBest{{78.0, 33.0, 29.995256, 45.0, 36.775813}, -30665.538756, "oracle"};
    return p;
}

Problem three_bar_truss() {
    constexpr double length = 100.0;  // cm
    constexpr double load = 2.0;      // kN/cm^2
    constexpr double stress = 2.0;    // kN/cm^2
    Problem p;
    p.name = "three_bar_truss";
    p.description = "Three-bar planar truss volume under member stress limits";
    p.dimension = 2;
    p.objective = [](std::span<const double> x) { return (2.0 * sqrt2 * x[0] + x[1]) * length; };
    p.constraints.push_back(upper_limit("g1", [](std::span<const double> x) {
        return (sqrt2 * x[0] + x[1]) / (sqrt2 * x[0] * x[0] + 2.0 * x[0] * x[1]) * load - stress;
    }));
    p.constraints.push_back(upper_limit("g2", [](std::span<const double> x) {
        return x[1] / (sqrt2 * x[0] * x[0] + 2.0 * x[0] * x[1]) * load - stress;
    }));
    p.constraints.push_back(upper_limit("g3", [](std::span<const double> x) {
        return 1.0 / (x[0] + sqrt2 * x[1]) * load - stress;
    }));
    // Zero areas make the stress terms singular.
    p.lower = {1e-6, 1e-6};
    p.upper = {1.0, 1.0};
    p.known_best = KnownBest{{0.78863, 0.40838}, 263.896248, "paper-quoted"};
    return p;
}

Problem speed_reducer(bool eleven_constraints) {
    Problem p;
    p.name = eleven_constraints ? "speed_reducer" : "speed_reducer_9";
    p.description = "Golinski speed reducer weight";
    p.dimension = 7;
    p.objective = [](std::span<const double> x) {
        return 0.7854 * x[0] * x[1] * x[1] * (3.3333 * x[2] * x[2] + 14.9334 * x[2] - 43.0934) -
               1.508 * x[0] * (x[5] * x[5] + x[6] * x[6]) + 7.477 * (std::pow(x[5], 3) + std::pow(x[6], 3)) +
               0.7854 * (x[3] * x[5] * x[5] + x[4] * x[6] * x[6]);
    };
    p.constraints = {
        upper_limit("g1 gear bending", [](std::span<const double> x) { return 27.0 / (x[0] * x[1] * x[1] * x[2]) - 1.0; }),
        upper_limit("g2 surface stress",
                    [](std::span<const double> x) { return 397.5 / (x[0] * x[1] * x[1] * x[2] * x[2]) - 1.0; }),
        upper_limit("g3 shaft 1 deflection",
                    [](std::span<const double> x) {
                        return 1.93 * std::pow(x[3], 3) / (x[1] * x[2] * std::pow(x[5], 4)) - 1.0;
                    }),
        upper_limit("g4 shaft 2 deflection",
                    [](std::span<const double> x) {
                        return 1.93 * std::pow(x[4], 3) / (x[1] * x[2] * std::pow(x[6], 4)) - 1.0;
                    }),
        upper_limit("g5 shaft 1 stress",
                    [](std::span<const double> x) {
                        const double moment = 745.0 * x[3] / (x[1] * x[2]);
                        return std::sqrt(moment * moment + 16.9e6) / (110.0 * std::pow(x[5], 3)) - 1.0;
                    }),
        upper_limit("g6 shaft 2 stress",
                    [](std::span<const double> x) {
                        const double moment = 745.0 * x[4] / (x[1] * x[2]);
                        return std::sqrt(moment * moment + 157.5e6) / (85.0 * std::pow(x[6], 3)) - 1.0;
                    }),
        upper_limit("g7", [](std::span<const double> x) { return x[1] * x[2] / 40.0 - 1.0; }),
        upper_limit("g8", [](std::span<const double> x) { return 5.0 * x[1] / x[0] - 1.0; }),
        upper_limit("g9", [](std::span<const double> x) { return x[0] / (12.0 * x[1]) - 1.0; }),
    };
    if (eleven_constraints) {
        p.constraints.push_back(
            upper_limit("g10", [](std::span<const double> x) { return (1.5 * x[5] + 1.9) / x[3] - 1.0; }));
        p.constraints.push_back(
            upper_limit("g11", [](std::span<const double> x) { return (1.1 * x[6] + 1.9) / x[4] - 1.0; }));
        p.known_best =
            KnownBest{{3.5, 0.7, 17.0, 7.3, 7.715320, 3.350215, 5.286654}, 2994.471066, "literature"};
    }
    p.lower = {2.6, 0.7, 17.0, 7.3, 7.3, 2.9, 5.0};
    p.upper = {3.6, 0.8, 28.0, 8.3, 8.3, 3.9, 5.5};
    return p;
}

Problem cantilever_beam() {
    constexpr double load = 50000.0;      // N
    constexpr double modulus = 2.0e7;     // N/cm^2
    constexpr double segment = 100.0;     // cm
    constexpr double allowable = 14000.0; // N/cm^2
    constexpr double max_deflection = 2.7;
    constexpr double max_aspect = 20.0;

    Problem p;
    p.name = "cantilever_beam";
    p.description = "Five-step rectangular cantilever; x1..x5 widths, x6..x10 heights (cm)";
    p.dimension = 10;
    p.objective = [](std::span<const double> x) {
        double volume = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            volume += x[i] * x[i + 5] * segment;
        }
        return volume;
    };
    // Step i (0 = root) carries the bending moment of the segments outboard of it.
    for (std::size_t k = 0; k < 5; ++k) {
        const std::size_t step_index = 4 - k;
        const double arm = segment * static_cast<double>(k + 1);
        p.constraints.push_back(upper_limit("g" + std::to_string(k + 1) + " bending stress",
                                            [step_index, arm](std::span<const double> x) {
                                                const double h = x[step_index + 5];
                                                return 6.0 * load * arm / (x[step_index] * h * h) - allowable;
                                            }));
    }
    p.constraints.push_back(upper_limit("g6 tip deflection", [](std::span<const double> x) {
        constexpr std::array<double, 5> weights{61.0, 37.0, 19.0, 7.0, 1.0};
        double flexibility = 0.0;
        for (std::size_t i = 0; i < 5; ++i) {
            const double inertia = x[i] * std::pow(x[i + 5], 3) / 12.0;
            flexibility += weights[i] / inertia;
        }
        return load * std::pow(segment, 3) / (3.0 * modulus) * flexibility - max_deflection;
    }));
    for (std::size_t k = 0; k < 5; ++k) {
        const std::size_t step_index = 4 - k;
        p.constraints.push_back(upper_limit("g" + std::to_string(k + 7) + " aspect ratio",
                                            [step_index](std::span<const double> x) {
                                                return x[step_index + 5] / x[step_index] - max_aspect;
                                            }));
    }
    p.lower = {1.0, 1.0, 1.0, 1.0, 1.0, 30.0, 30.0, 30.0, 30.0, 30.0};
    p.upper = {5.0, 5.0, 5.0, 5.0, 5.0, 65.0, 65.0, 65.0, 65.0, 65.0};
    return p;
}

Problem heat_exchanger() {
    Problem p;
    p.name = "heat_exchanger";
    p.description = "Heat exchanger network design, all constraints active at the optimum";
    p.dimension = 8;
    p.objective = [](std::span<const double> x) { return x[0] + x[1] + x[2]; };
    p.constraints = {
        upper_limit("g1", [](std::span<const double> x) { return 0.0025 * (x[3] + x[5]) - 1.0; }),
        upper_limit("g2", [](std::span<const double> x) { return 0.0025 * (x[4] + x[6] - x[3]) - 1.0; }),
        upper_limit("g3", [](std::span<const double> x) { return 0.01 * (x[7] - x[4]) - 1.0; }),
        upper_limit("g4",
                    [](std::span<const double> x) {
                        return 833.33252 * x[3] + 100.0 * x[0] - x[0] * x[5] - 83333.333;
                    }),
        upper_limit("g5",
                    [](std::span<const double> x) {
                        return 1250.0 * x[4] + x[1] * x[3] - x[1] * x[6] - 1250.0 * x[3];
                    }),
        upper_limit("g6",
                    [](std::span<const double> x) {
                        return x[2] * x[4] - 2500.0 * x[4] - x[2] * x[7] + 1250000.0;
                    }),
    };
    p.lower = {100.0, 1000.0, 1000.0, 10.0, 10.0, 10.0, 10.0, 10.0};
    p.upper = {10000.0, 10000.0, 10000.0, 1000.0, 1000.0, 1000.0, 1000.0, 1000.0};
    p.known_best = KnownBest{
        {579.30675, 1359.97076, 5109.97052, 182.01770, 295.60118, 217.98230, 286.41653, 395.60118},
        7049.24803,
        "paper-quoted"};
    return p;
}

Problem car_side_impact() {
    Problem p;
    p.name = "car_side_impact";
    p.description = "Car side-impact weight; response surfaces of the EEVC side-impact model";
    p.dimension = 11;
    p.objective = [](std::span<const double> x) {
        return 1.98 + 4.90 * x[0] + 6.67 * x[1] + 6.98 * x[2] + 4.01 * x[3] + 1.78 * x[4] + 2.73 * x[6];
    };
    // x[0..10] correspond to x1..x11.
    p.constraints = {
        upper_limit("g1 abdomen load (kN)",
                    [](std::span<const double> x) {
                        return 1.16 - 0.3717 * x[1] * x[3] - 0.00931 * x[1] * x[9] - 0.484 * x[2] * x[8] +
                               0.01343 * x[5] * x[9];
                    },
                    1.0),
        upper_limit("g2 upper chest V*Cu (m/s)",
                    [](std::span<const double> x) {
                        return 0.261 - 0.0159 * x[0] * x[1] - 0.188 * x[0] * x[7] - 0.019 * x[1] * x[6] +
                               0.0144 * x[2] * x[4] + 0.0008757 * x[4] * x[9] + 0.08045 * x[5] * x[8] +
                               0.00139 * x[7] * x[10] + 0.00001575 * x[9] * x[10];
                    },
                    0.32),
        upper_limit("g3 middle chest V*Cm (m/s)",
                    [](std::span<const double> x) {
                        return 0.214 + 0.00817 * x[4] - 0.131 * x[0] * x[7] - 0.0704 * x[0] * x[8] +
                               0.03099 * x[1] * x[5] - 0.018 * x[1] * x[6] + 0.0208 * x[2] * x[7] +
                               0.121 * x[2] * x[8] - 0.00364 * x[4] * x[5] + 0.0007715 * x[4] * x[9] -
                               0.0005354 * x[5] * x[9] + 0.00121 * x[7] * x[10];
                    },
                    0.32),
        upper_limit("g4 lower chest V*Cl (m/s)",
                    [](std::span<const double> x) {
                        return 0.074 - 0.061 * x[1] - 0.163 * x[2] * x[7] + 0.001232 * x[2] * x[9] -
                               0.166 * x[6] * x[8] + 0.227 * x[1] * x[1];
                    },
                    0.32),
        upper_limit("g5 upper rib deflection (mm)",
                    [](std::span<const double> x) {
                        return 28.98 + 3.818 * x[2] - 4.2 * x[0] * x[1] + 0.0207 * x[4] * x[9] +
                               6.63 * x[5] * x[8] - 7.7 * x[6] * x[7] + 0.32 * x[8] * x[9];
                    },
                    32.0),
        upper_limit("g6 middle rib deflection (mm)",
                    [](std::span<const double> x) {
                        return 33.86 + 2.95 * x[2] + 0.1792 * x[9] - 5.057 * x[0] * x[1] - 11.0 * x[1] * x[7] -
                               0.0215 * x[4] * x[9] - 9.98 * x[6] * x[7] + 22.0 * x[7] * x[8];
                    },
                    32.0),
        upper_limit("g7 lower rib deflection (mm)",
                    [](std::span<const double> x) {
                        return 46.36 - 9.9 * x[1] - 12.9 * x[0] * x[7] + 0.1107 * x[2] * x[9];
                    },
                    32.0),
        upper_limit("g8 pubic force (kN)",
                    [](std::span<const double> x) {
                        return 4.72 - 0.5 * x[3] - 0.19 * x[1] * x[2] - 0.0122 * x[3] * x[9] +
                               0.009325 * x[5] * x[9] + 0.000191 * x[10] * x[10];
                    },
                    4.0),
        upper_limit("g9 B-pillar middle velocity (mm/ms)",
                    [](std::span<const double> x) {
                        return 10.58 - 0.674 * x[0] * x[1] - 1.95 * x[1] * x[7] + 0.02054 * x[2] * x[9] -
                               0.0198 * x[3] * x[9] + 0.028 * x[5] * x[9];
                    },
                    9.9),
        upper_limit("g10 front door velocity (mm/ms)",
                    [](std::span<const double> x) {
                        return 16.45 - 0.489 * x[2] * x[6] - 0.843 * x[4] * x[5] + 0.0432 * x[8] * x[9] -
                               0.0556 * x[8] * x[10] - 0.000786 * x[10] * x[10];
                    },
                    15.7),
    };
    p.lower = {0.5, 0.45, 0.5, 0.5, 0.875, 0.4, 0.4, 0.192, 0.192, 0.5, 0.5};
    p.upper = {1.5, 1.35, 1.5, 1.5, 2.625, 1.2, 1.2, 0.345, 0.345, 1.5, 1.5};
    p.discrete_sets.assign(11, std::nullopt);
    p.discrete_sets[7] = Vector{0.192, 0.345};
    p.discrete_sets[8] = Vector{0.192, 0.345};
    return p;
}

const std::vector<RegistryEntry>& registry() {
    static const std::vector<RegistryEntry> entries = {
        {"mathematical_12", "N=12 mathematical problem", {25, 1000}},
        {"mathematical_60", "N=60 mathematical problem", {25, 1000}},
        {"himmelblau", "Himmelblau's problem", {25, 1000}},
        {"three_bar_truss", "three-bar truss volume", {25, 2000}},
        {"speed_reducer", "speed reducer, 11 standard constraints", {25, 1000}},
        {"speed_reducer_9", "speed reducer, constraints g1..g9 only", {25, 1000}},
        {"parameter_identification", "planar frame inertia identification from strains", {25, 1000}},
        {"cantilever_beam", "five-step cantilever volume", {25, 1000}},
        {"heat_exchanger", "heat exchanger network design", {25, 1000}},
        {"car_side_impact", "car side-impact weight", {20, 1000}},
    };
    return entries;
}

Problem registry_lookup(const std::string& name) {
    if (name == "himmelblau") return himmelblau();
    if (name == "three_bar_truss") return three_bar_truss();
    if (name == "speed_reducer") return speed_reducer(true);
    if (name == "speed_reducer_9") return speed_reducer(false);
    if (name == "cantilever_beam") return cantilever_beam();
    if (name == "heat_exchanger") return heat_exchanger();
    if (name == "car_side_impact") return car_side_impact();
    if (name == "parameter_identification") return fem::identification_problem(fem::build_benchmark());

    const std::string prefix = "mathematical_";
    if (name.rfind(prefix, 0) == 0 && name.size() > prefix.size()) {
        const std::string digits = name.substr(prefix.size());
        if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 7) {
            return mathematical_problem(std::stoul(digits));
        }
    }

    std::string message = "unknown problem '" + name + "'; available:";
    for (const auto& entry : registry()) {
        message += " " + entry.name;
    }
    throw UnknownProblem(message);
}

Budget default_budget(const std::string& name) {
    for (const auto& entry : registry()) {
        if (entry.name == name) {
            return entry.budget;
        }
    }
    return {};
}

std::string describe(const Problem& problem) {
    nlohmann::ordered_json doc;
    doc["name"] = problem.name;
    doc["description"] = problem.description;
    doc["dimension"] = problem.dimension;
    doc["lower"] = problem.lower;
    doc["upper"] = problem.upper;
    auto& constraints = doc["constraints"] = nlohmann::ordered_json::array();
    for (const auto& c : problem.constraints) {
        nlohmann::ordered_json entry{{"label", c.label}};
        if (c.lower > -kUnbounded) entry["lower"] = c.lower;
        if (c.upper < kUnbounded) entry["upper"] = c.upper;
        constraints.push_back(std::move(entry));
    }
    doc["one_sided_constraints"] = problem.violation_count();
    auto& discrete = doc["discrete_sets"] = nlohmann::ordered_json::object();
    for (std::size_t k = 0; k < problem.discrete_sets.size(); ++k) {
        if (problem.discrete_sets[k]) {
            discrete["x" + std::to_string(k + 1)] = *problem.discrete_sets[k];
        }
    }
    if (problem.known_best) {
        doc["known_best"] = {{"objective", problem.known_best->objective},
                             {"x", problem.known_best->x},
                             {"provenance", problem.known_best->provenance}};
    }
    return doc.dump(2);
}

}  // namespace batopt
