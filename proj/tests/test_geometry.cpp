#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pathbench/geometry.hpp"

using namespace pathbench;

namespace {

// Independent arc-length oracle: dense trapezoid integration of
// sqrt(1 + slope^2) with 10^4 subdivisions.
double dense_sine_arc(double x1, int x2, double W) {
    const double k = std::numbers::pi * x2 / W;
    const int n = 10000;
    double total = 0.0;
    auto speed = [&](double w) {
        const double s = x1 * k * std::cos(k * w);
        return std::sqrt(1.0 + s * s);
    };
    for (int i = 0; i < n; ++i) {
        const double a = W * i / n;
        const double b = W * (i + 1) / n;
        total += 0.5 * (speed(a) + speed(b)) * (b - a);
    }
    return total;
}

} // namespace

TEST_CASE("make_path validates and normalizes") {
    const PathParams p = make_path(PathFamily::Sine, 10, 2, 100);
    CHECK(p.family == PathFamily::Sine);
    CHECK(p.x1 == 10.0);
    CHECK(p.x2 == 2);

    const PathParams s1 = make_path(PathFamily::Sine, 0, 5, 100);
    CHECK(s1.family == PathFamily::StraightLine);
    const PathParams s2 = make_path(PathFamily::Sine, 7, 0, 100);
    CHECK(s2.family == PathFamily::StraightLine);

    CHECK_THROWS_AS(make_path(PathFamily::Sine, -1, 2, 100), ParamError);
    CHECK_THROWS_AS(make_path(PathFamily::Sine, 10, 2.5, 100), ParamError);
    CHECK_THROWS_AS(make_path(PathFamily::Sine, 10, 2, 0), ParamError);
}

TEST_CASE("evaluate_path on known abscissae") {
    const PathParams p = make_path(PathFamily::Sine, 10, 2, 100);
    CHECK(evaluate_path(p, 25).x == doctest::Approx(25));
    CHECK(evaluate_path(p, 25).y == doctest::Approx(10));
    CHECK(evaluate_path(p, 50).y == doctest::Approx(0).epsilon(1e-12));

    const PathParams line = make_path(PathFamily::StraightLine, 0, 0, 100);
    CHECK(evaluate_path(line, 37.5).x == doctest::Approx(37.5));
    CHECK(evaluate_path(line, 37.5).y == 0.0);

    CHECK_THROWS_AS(evaluate_path(p, -5), ParamError);
    CHECK_THROWS_AS(evaluate_path(p, 105), ParamError);

    // two full periods: zeros every 25 m
    const PathParams q = make_path(PathFamily::Sine, 25, 4, 100);
    for (double w : {0.0, 25.0, 50.0, 75.0, 100.0}) {
        CHECK(std::abs(evaluate_path(q, w).y) < 1e-9);
    }
}

TEST_CASE("evaluate_path is reproducible") {
    const PathParams p = make_path(PathFamily::Sine, 17.5, 7, 100);
    for (double w = 0.0; w <= 100.0; w += 3.7) {
        const Vec2 a = evaluate_path(p, w);
        const Vec2 b = evaluate_path(p, w);
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
    }
}

TEST_CASE("max_curvature closed forms and scaling") {
    const double k = max_curvature(make_path(PathFamily::Sine, 10, 2, 100));
    CHECK(k == doctest::Approx(10.0 * std::pow(2.0 * std::numbers::pi / 100.0, 2)));
    CHECK(k == doctest::Approx(0.0394784176).epsilon(1e-6));

    CHECK(max_curvature(make_path(PathFamily::StraightLine, 0, 0, 100)) == 0.0);
    CHECK(max_curvature(make_path(PathFamily::Circle, 14, 0, 100)) ==
          doctest::Approx(1.0 / 14.0));

    // linear in x1, quadratic in x2
    const double base = max_curvature(make_path(PathFamily::Sine, 5, 3, 100));
    CHECK(max_curvature(make_path(PathFamily::Sine, 10, 3, 100)) ==
          doctest::Approx(2.0 * base));
    CHECK(max_curvature(make_path(PathFamily::Sine, 5, 6, 100)) ==
          doctest::Approx(4.0 * base));
}

TEST_CASE("sample_reference straight line") {
    const PathParams line = make_path(PathFamily::StraightLine, 0, 0, 100);
    const ReferenceSeries s = sample_reference(line, 1.0);
    CHECK(s.size() == 101);
    for (const Vec2& p : s.points) CHECK(p.y == 0.0);
    CHECK(s.points.front().x == doctest::Approx(0));
    CHECK(s.points.back().x == doctest::Approx(100));

    CHECK_THROWS_AS(sample_reference(line, 150.0), ParamError);
    CHECK_THROWS_AS(sample_reference(line, 0.0), ParamError);
}

TEST_CASE("sample_reference spacing is uniform in arc length") {
    const PathParams p = make_path(PathFamily::Sine, 10, 2, 100);
    const double spacing = 0.5;
    const ReferenceSeries s = sample_reference(p, spacing);
    const double target = dense_sine_arc(10, 2, 100) / (s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double gap = (s.points[i] - s.points[i - 1]).norm();
        CHECK(gap == doctest::Approx(target).epsilon(0.05));
        CHECK(gap == doctest::Approx(spacing).epsilon(0.05));
    }
}

TEST_CASE("sample_reference point count at paper scale") {
    const PathParams p = make_path(PathFamily::Sine, 30, 4, 100);
    const ReferenceSeries s = sample_reference(p, 0.05);
    // n_R in the low thousands for a single path at 0.05 m spacing
    CHECK(s.size() > 1000);
    CHECK(s.size() < 20000);
}

TEST_CASE("path_length basics and convergence") {
    CHECK(path_length(std::vector<Vec2>{{0, 0}, {3, 4}}) == doctest::Approx(5.0));
    CHECK_THROWS_AS(path_length(std::vector<Vec2>{{0, 0}}), ParamError);

    const PathParams line = make_path(PathFamily::StraightLine, 0, 0, 100);
    CHECK(path_length(sample_reference(line, 0.7)) == doctest::Approx(100.0).epsilon(0.01));

    const PathParams p = make_path(PathFamily::Sine, 10, 2, 100);
    const double oracle = dense_sine_arc(10, 2, 100);
    const double sampled = path_length(sample_reference(p, 0.1));
    CHECK(std::abs(sampled - oracle) / oracle < 0.005);

    // chord length is below arc length and increases as spacing shrinks
    double prev = 0.0;
    for (double spacing : {2.0, 1.0, 0.5, 0.25}) {
        const double len = path_length(sample_reference(p, spacing));
        CHECK(len <= oracle + 1e-9);
        CHECK(len >= prev - 1e-9);
        prev = len;
    }
}

TEST_CASE("arc_length agrees with dense oracle") {
    const PathParams p = make_path(PathFamily::Sine, 30, 4, 100);
    CHECK(arc_length(p, 0, 100) ==
          doctest::Approx(dense_sine_arc(30, 4, 100)).epsilon(1e-6));

    const PathParams c = make_path(PathFamily::Circle, 14, 0, 100);
    CHECK(arc_length(c, 0, 100) == doctest::Approx(2.0 * std::numbers::pi * 14.0));
}

TEST_CASE("straight-line normalization yields identical series") {
    const ReferenceSeries a =
        sample_reference(make_path(PathFamily::Sine, 0, 5, 100), 0.5);
    const ReferenceSeries b =
        sample_reference(make_path(PathFamily::Sine, 12, 0, 100), 0.5);
    const ReferenceSeries c =
        sample_reference(make_path(PathFamily::StraightLine, 0, 0, 100), 0.5);
    REQUIRE(a.size() == c.size());
    REQUIRE(b.size() == c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK(a.points[i] == c.points[i]);
        CHECK(b.points[i] == c.points[i]);
    }
}

TEST_CASE("build_run_plan feasible straight line") {
    const BoxGeometry box; // W=100, R1=110, R2=110, l=25, r=14
    const PathParams line = make_path(PathFamily::StraightLine, 0, 0, 100);
    const RunPlan plan = build_run_plan(line, box, {.spacing = 0.5});

    CHECK(plan.phase(Phase::Approach).phase == Phase::Approach);
    CHECK(plan.phase(Phase::Forward).size() == 201);

    // approach is tangent: all approach points on y=0, ending at the entry
    for (const Vec2& p : plan.phase(Phase::Approach).points) {
        CHECK(p.y == doctest::Approx(0.0));
    }
    CHECK(plan.phase(Phase::Approach).points.back() ==
          plan.phase(Phase::Forward).points.front());

    // backward is the forward series reversed pointwise
    const auto& fwd = plan.phase(Phase::Forward).points;
    const auto& bwd = plan.phase(Phase::Backward).points;
    REQUIRE(fwd.size() == bwd.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
        CHECK(fwd[i] == bwd[bwd.size() - 1 - i]);
    }

    // the turn stays within the cross-track bound
    for (const Vec2& p : plan.phase(Phase::Turn).points) {
        CHECK(std::abs(p.y) <= box.R2 / 2.0 + 1e-9);
    }
}

TEST_CASE("build_run_plan geometric infeasibility") {
    const BoxGeometry box;
    CHECK_THROWS_AS(
        build_run_plan(make_path(PathFamily::Sine, 500, 1, 100), box, {}),
        InfeasibleError);

    BoxGeometry narrow = box;
    narrow.R2 = 20.0; // 2r = 28 m does not fit in 10 m half-height
    CHECK_THROWS_AS(
        build_run_plan(make_path(PathFamily::StraightLine, 0, 0, 100), narrow, {}),
        InfeasibleError);
}

TEST_CASE("build_run_plan forward series inside central box") {
    const BoxGeometry box;
    for (int x2 : {1, 4, 9}) {
        const RunPlan plan =
            build_run_plan(make_path(PathFamily::Sine, 45, x2, 100), box, {.spacing = 0.5});
        for (const Vec2& p : plan.phase(Phase::Forward).points) {
            CHECK(box.in_central_box(p));
        }
    }
}

TEST_CASE("square wave plan and sampling") {
    const PathParams sq = make_path(PathFamily::SquareWave, 10, 4, 100);
    const ReferenceSeries s = sample_reference(sq, 0.5);
    // plateaus at +-10, corners preserved
    double max_y = 0.0;
    for (const Vec2& p : s.points) max_y = std::max(max_y, std::abs(p.y));
    CHECK(max_y == doctest::Approx(10.0));
    // total arc: 100 horizontal + 3 joins of 20 m
    CHECK(path_length(s) == doctest::Approx(160.0).epsilon(1e-6));
    CHECK(arc_length(sq, 0, 100) == doctest::Approx(160.0));
}
