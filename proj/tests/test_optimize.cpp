#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "naqi/advantage.hpp"
#include "naqi/optimize.hpp"
#include "naqi/scenarios.hpp"

using namespace naqi;

TEST_CASE("quadratic in one variable") {
    const std::array<Interval, 1> box{Interval{0.0, 1.0, false}};
    const auto r = maximize([](std::span<const double> x) { return -(x[0] - 0.3) * (x[0] - 0.3); }, box, {});
    CHECK(std::abs(r.argmax[0] - 0.3) < 1e-6);
    CHECK(r.value <= 0.0);
    CHECK(r.diagnostics.converged);
}

TEST_CASE("2|sin x| + |cos x| reaches sqrt5 at atan 2") {
    const std::array<Interval, 1> box{Interval{0.0, std::numbers::pi, false}};
    const auto r = maximize([](std::span<const double> x) { return 2 * std::abs(std::sin(x[0])) + std::abs(std::cos(x[0])); },
                            box, {});
    CHECK(std::abs(r.value - std::sqrt(5.0)) < 1e-12);
    CHECK(std::abs(r.argmax[0] - std::atan(2.0)) < 1e-6);
}

TEST_CASE("one Werner steering term equals p") {
    const SteeringModel model(build_state(StateFamily::werner(0.8)));
    NaqiConfig cfg;
    cfg.closed_form_l1 = false;
    const Vec3 axis{0.0, 1.0, 0.0};
    const std::array<Interval, 2> box{Interval{0.0, std::numbers::pi, false}, Interval{0.0, 2 * std::numbers::pi, true}};
    const auto r = maximize([&](std::span<const double> x) { return model.term(bloch_axis(x[0], x[1]), axis, Measure::L1); },
                            box, {});
    CHECK(std::abs(r.value - 0.8) < 1e-9);
    CHECK(std::abs(std::abs(bloch_axis(r.argmax[0], r.argmax[1]).y) - 1.0) < 1e-6);
}

TEST_CASE("periodic dimension wraps across the seam") {
    const std::array<Interval, 1> box{Interval{0.0, 2 * std::numbers::pi, true}};
    // Peak at 0.01, close to the seam.
    const auto r = maximize([](std::span<const double> x) { return std::cos(x[0] - 0.01); }, box, {});
    CHECK(std::abs(r.value - 1.0) < 1e-12);
    CHECK(std::abs(r.argmax[0] - 0.01) < 1e-6);
    std::vector<double> x{-0.5, 7.0};
    const std::array<Interval, 2> box2{Interval{0.0, 2 * std::numbers::pi, true}, Interval{0.0, 1.0, false}};
    map_into_box(x, box2);
    CHECK(x[0] == doctest::Approx(2 * std::numbers::pi - 0.5));
    CHECK(x[1] == 1.0);
}

TEST_CASE("deterministic and never below the grid") {
    const std::array<Interval, 3> box{Interval{0.0, std::numbers::pi, false}, Interval{0.0, 2 * std::numbers::pi, true},
                                      Interval{-1.0, 1.0, false}};
    const auto f = [](std::span<const double> x) {
        return std::sin(3 * x[0]) * std::cos(2 * x[1]) + 0.3 * std::sin(5 * x[2]) - 0.1 * x[2] * x[2];
    };
    for (std::uint64_t seed : {0u, 7u}) {
        OptimizerConfig c;
        c.grid_points_per_dim = 10;
        c.seed = seed;
        const auto a = maximize(f, box, c);
        c.workers = 3;
        const auto b = maximize(f, box, c);
        CHECK(a.value == b.value);
        CHECK(a.argmax == b.argmax);
        CHECK(a.value >= a.diagnostics.best_grid_value);
    }
}

TEST_CASE("tie break prefers the smaller point") {
    const std::array<Interval, 1> box{Interval{-1.0, 1.0, false}};
    // Equal maxima at -0.5 and 0.5.
    const auto r = maximize([](std::span<const double> x) { return -std::pow(x[0] * x[0] - 0.25, 2); }, box, {});
    CHECK(r.argmax[0] < 0.0);
    REQUIRE(r.diagnostics.second_best_gap.has_value());
    CHECK(*r.diagnostics.second_best_gap < 1e-12);
}

TEST_CASE("rejects bad input") {
    const std::array<Interval, 1> box{Interval{0.0, 1.0, false}};
    CHECK_THROWS_AS(maximize([](std::span<const double> x) { return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : 0.0; },
                             box, {}),
                    NonFiniteObjective);
    OptimizerConfig bad;
    bad.grid_points_per_dim = 0;
    CHECK_THROWS_AS(maximize([](std::span<const double>) { return 0.0; }, box, bad), std::invalid_argument);
    const std::vector<Interval> five(5, Interval{0.0, 1.0, false});
    CHECK_THROWS_AS(maximize([](std::span<const double>) { return 0.0; }, five, {}), std::invalid_argument);
}

TEST_CASE("bisection") {
    CHECK(std::abs(bisect_threshold([](double p) { return 3 * p - std::sqrt(5.0); }, 0.5, 1.0) - std::sqrt(5.0) / 3) < 1e-5);
    CHECK(std::abs(bisect_threshold([](double p) { return p - 0.5; }, 0.0, 1.0) - 0.5) < 1e-5);
    CHECK(std::abs(bisect_threshold([](double p) { return p - 0.123; }, 0.0, 1.0, 1e-9) - 0.123) < 1e-9);
    CHECK_THROWS_AS(bisect_threshold([](double p) { return p + 1.0; }, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("relative-entropy Werner threshold from the closed form") {
    // The optimal Werner ensemble is pure-axis conditionals with Bloch length p.
    const double bound = 2.026848980580301;
    const auto g = [&](double p) {
        const double h = [](double x) { return x <= 0 || x >= 1 ? 0.0 : -x * std::log2(x) - (1 - x) * std::log2(1 - x); }((1 + p) / 2);
        return 3 * (1 - h) - bound;
    };
    CHECK(std::abs(bisect_threshold(g, 0.5, 1.0) - 0.8816) < 2e-3);
}
