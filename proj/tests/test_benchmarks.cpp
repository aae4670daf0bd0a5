#include "doctest.h"

#include <cmath>
#include <numeric>

#include "batopt/benchmarks.hpp"
#include "batopt/constraints.hpp"
#include "batopt/rng.hpp"

using namespace batopt;

TEST_CASE("mathematical problem") {
    const Problem m4 = mathematical_problem(4);
    const auto at_ones = evaluate(m4, Vector(4, 1.0));
    CHECK(at_ones.objective == doctest::Approx(441.0).epsilon(1e-15));
    CHECK(raw_constraint_values(m4, Vector(4, 1.0)) == Vector{-10.0});
    CHECK(at_ones.violations[0] == 10.0);

    const double weight = 1.0 + std::sqrt(2.0) + std::sqrt(3.0) + 2.0;
    CHECK(m4.objective(Vector(4, 2.5)) == doctest::Approx(weight * 2.25).epsilon(1e-14));

    const Problem m12 = mathematical_problem(12);
    CHECK(m12.dimension == 12);
    CHECK(m12.violation_count() == 6);
    CHECK(mathematical_problem(60).violation_count() == 30);
    CHECK(m12.lower == Vector(12, 0.5));
    CHECK(m12.upper == Vector(12, 10.0));
    CHECK_THROWS_AS(mathematical_problem(6), std::invalid_argument);
    CHECK_THROWS_AS(mathematical_problem(0), std::invalid_argument);
}

TEST_CASE("himmelblau") {
    const Problem p = himmelblau();
    const Vector x{78, 33, 27, 27, 27};
    CHECK(p.objective(x) == doctest::Approx(-32217.4310371).epsilon(1e-12));
    // Standard coefficients: the 0.0056858 term multiplies x2 * x5.
    const double g1 = 85.334407 + 0.0056858 * 33 * 27 + 0.0006262 * 78 * 27 - 0.0022053 * 27 * 27;
    CHECK(raw_constraint_values(p, x)[0] == doctest::Approx(g1).epsilon(1e-14));
    CHECK(p.violation_count() == 6);
    const Vector corner{102, 45, 45, 45, 45};
    CHECK(clamp_to_bounds(corner, p.lower, p.upper) == corner);

    const Vector best{78.0, 33.0, 29.995256, 45.0, 36.775813};
    const auto e = evaluate(p, best);
    CHECK(e.objective == doctest::Approx(-30665.538756).epsilon(1e-8));
    CHECK(e.total_violation <= 1e-4);
}

TEST_CASE("three-bar truss") {
    const Problem p = three_bar_truss();
    const Vector quoted{0.78863, 0.40838};
    const auto e = evaluate(p, quoted);
    CHECK(std::abs(e.objective - 263.896) <= 0.005);
    for (double g : raw_constraint_values(p, quoted)) {
        CHECK(g <= 1e-6);
    }
    CHECK(p.objective(Vector{1.0, 1.0}) == doctest::Approx(100.0 * (2.0 * std::sqrt(2.0) + 1.0)));
    CHECK(p.violation_count() == 3);
    CHECK(p.lower == Vector{1e-6, 1e-6});
}

TEST_CASE("speed reducer") {
    const Problem p = speed_reducer();
    const Vector x{3.5, 0.7, 17, 7.3, 7.3, 3.35, 5.29};
    CHECK(p.objective(x) == doctest::Approx(2987.2847815741).epsilon(1e-12));
    // The classic design has x5 = 7.8.
    const Vector classic{3.5, 0.7, 17, 7.3, 7.8, 3.350215, 5.2866832};
    CHECK(std::abs(p.objective(classic) - 2996.3) <= 0.1);
    CHECK(raw_constraint_values(p, x)[6] == doctest::Approx(-0.7025).epsilon(1e-12));
    Vector crowded = x;
    crowded[1] = 0.8;
    crowded[2] = 51.0;
    CHECK(raw_constraint_values(p, crowded)[6] > 0.0);
    CHECK(p.violation_count() == 11);
    CHECK(speed_reducer(false).violation_count() == 9);
}

TEST_CASE("cantilever beam") {
    const Problem p = cantilever_beam();
    CHECK(p.violation_count() == 11);
    Vector x{3, 3, 3, 3, 2, 50, 50, 50, 50, 40};
    CHECK(raw_constraint_values(p, x)[0] == doctest::Approx(-4625.0).epsilon(1e-14));
    Vector y{3, 3, 3, 3, 3, 60, 50, 50, 50, 50};
    CHECK(raw_constraint_values(p, y)[10] == 0.0);
    CHECK(p.objective(Vector{3, 3, 3, 3, 3, 50, 50, 50, 50, 50}) == doctest::Approx(75000.0));
}

TEST_CASE("heat exchanger") {
    const Problem p = heat_exchanger();
    REQUIRE(p.known_best);
    const Vector& star = p.known_best->x;
    const auto e = evaluate(p, star);
    CHECK(std::abs(e.objective - 7049.2480) <= 1e-3);
    CHECK(e.total_violation <= 1e-4);
    const Vector quoted_g{0.0, 0.0, 0.0, -0.0071449, -0.0061782, -0.0020000};
    const Vector g = raw_constraint_values(p, star);
    REQUIRE(g.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(std::abs(g[k] - quoted_g[k]) <= 1e-4);
    }
    Vector x = star;
    x[3] = 200.0;
    x[5] = 200.0;
    CHECK(raw_constraint_values(p, x)[0] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("car side impact") {
    const Problem p = car_side_impact();
    CHECK(p.violation_count() == 10);
    CHECK(p.constraints[8].upper == 9.9);
    CHECK(p.constraints[9].upper == 15.7);
    CHECK(p.lower[9] == 0.5);
    CHECK(p.upper[10] == 1.5);

    // Spot values by hand at x1..x7 = 1, x8 = 0.345, x9 = 0.192, x10 = x11 = 1.
    const Vector x{1, 1, 1, 1, 1, 1, 1, 0.345, 0.192, 1, 1};
    CHECK(p.objective(x) == doctest::Approx(29.05).epsilon(1e-14));
    const Vector g = raw_constraint_values(p, x);
    CHECK(g[0] == doctest::Approx(1.16 - 0.3717 - 0.00931 - 0.484 * 0.192 + 0.01343 - 1.0).epsilon(1e-12));
    CHECK(g[6] == doctest::Approx(46.36 - 9.9 - 12.9 * 0.345 + 0.1107 - 32.0).epsilon(1e-12));

    // A published optimum on the wider x10, x11 box: active g7 and g8, weight about 22.84.
    const Vector lit{0.5, 1.11670, 0.5, 1.30208, 0.5, 1.5, 0.5, 0.345, 0.192, -19.54935, -0.00431};
    CHECK(std::abs(p.objective(lit) - 22.843) <= 0.005);
    const Vector gl = raw_constraint_values(p, lit);
    for (double v : gl) {
        CHECK(v <= 1e-3);
    }
    CHECK(std::abs(gl[7]) <= 1e-3);
    CHECK(std::abs(gl[6]) <= 1e-2);

    const Vector snapped = repair(p, Vector{1, 1, 1, 1, 1, 1, 1, 0.25, 0.30, 1, 1});
    CHECK(snapped[7] == 0.192);
    CHECK(snapped[8] == 0.345);
}

TEST_CASE("every problem is finite on its box") {
    RandomStream s(123);
    for (const auto& entry : registry()) {
        const Problem p = registry_lookup(entry.name);
        INFO(entry.name);
        for (int i = 0; i < 10000; ++i) {
            Vector x(p.dimension);
            for (std::size_t k = 0; k < p.dimension; ++k) {
                x[k] = p.lower[k] < p.upper[k] ? s.uniform_in(p.lower[k], p.upper[k]) : p.lower[k];
            }
            const auto e = evaluate(p, repair(p, x));
            REQUIRE(std::isfinite(e.objective));
            for (double v : e.violations) {
                REQUIRE(std::isfinite(v));
                REQUIRE(v >= 0.0);
            }
        }
        Vector far(p.dimension);
        for (std::size_t k = 0; k < p.dimension; ++k) {
            far[k] = p.upper[k] + 1e3;
        }
        const Vector back = repair(p, far);
        for (std::size_t k = 0; k < p.dimension; ++k) {
            CHECK(back[k] <= p.upper[k]);
            CHECK(back[k] >= p.lower[k]);
        }
    }
}

TEST_CASE("registry") {
    CHECK(registry_lookup("three_bar_truss").dimension == 2);
    CHECK(registry_lookup("mathematical_12").dimension == 12);
    CHECK(registry_lookup("mathematical_60").dimension == 60);
    CHECK(registry_lookup("mathematical_8").dimension == 8);
    CHECK(registry_lookup("parameter_identification").dimension == 7);
    try {
        registry_lookup("no_such");
        FAIL("expected UnknownProblem");
    } catch (const UnknownProblem& e) {
        const std::string what = e.what();
        CHECK(what.find("no_such") != std::string::npos);
        CHECK(what.find("three_bar_truss") != std::string::npos);
        CHECK(what.find("car_side_impact") != std::string::npos);
    }
    CHECK(default_budget("car_side_impact").population == 20);
    CHECK(default_budget("three_bar_truss").iterations == 2000);

    const std::string doc = describe(car_side_impact());
    CHECK(doc.find("\"dimension\": 11") != std::string::npos);
    CHECK(doc.find("0.345") != std::string::npos);
}
