#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "cquant/allocation.hpp"
#include "cquant/closed_form.hpp"
#include "cquant/errors.hpp"
#include "cquant/geometry.hpp"
#include "cquant/scenarios.hpp"

using namespace cquant;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

UniformCurveMeasure unit_interval(double a = 0.0, double b = 1.0) {
    return UniformCurveMeasure({Curve::segment({a, 0.0}, {b, 0.0})});
}

void check_points(const std::vector<Point2>& got, const std::vector<Point2>& want, double tol = 1e-14) {
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(std::abs(got[i].x - want[i].x) <= tol);
        CHECK(std::abs(got[i].y - want[i].y) <= tol);
    }
}

bool rel_close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(std::abs(y), 1e-300); }

}  // namespace

TEST_CASE("interval with both subinterval endpoints") {
    auto r = interval_interior(2, {0, 1, 0, 1});
    check_points(r.points, {{0, 0}, {1, 0}});
    CHECK(r.error == Approx(1.0 / 12.0).epsilon(1e-15));
    r = interval_interior(3, {0, 1, 0, 1});
    check_points(r.points, {{0, 0}, {0.5, 0}, {1, 0}});
    CHECK(r.error == Approx(1.0 / 48.0).epsilon(1e-15));
    CHECK(interval_interior(2, {0, 1, 0, 1e-6}).error < 1e-18);
    CHECK_THROWS_AS(interval_interior(1, {0, 1, 0, 1}), DomainError);
    CHECK_THROWS_AS(interval_interior(3, {0, 1, 0.5, 2}), DomainError);
}

TEST_CASE("interval with a left endpoint") {
    auto r = interval_left_endpoint(1, 0, 1);
    check_points(r.points, {{0, 0}});
    CHECK(r.error == Approx(1.0 / 3.0).epsilon(1e-15));
    r = interval_left_endpoint(2, 0, 1);
    check_points(r.points, {{0, 0}, {2.0 / 3.0, 0}});
    CHECK(r.error == Approx(1.0 / 27.0).epsilon(1e-15));
    r = interval_left_endpoint(3, 0, 1);
    check_points(r.points, {{0, 0}, {0.4, 0}, {0.8, 0}});
    CHECK(r.error == Approx(1.0 / 75.0).epsilon(1e-15));
    CHECK_THROWS_AS(interval_left_endpoint(2, 1, 1), DomainError);
    CHECK_THROWS_AS(interval_left_endpoint(0, 0, 1), DomainError);
}

TEST_CASE("interval with a right endpoint") {
    auto r = interval_right_endpoint(1, 0, 1);
    check_points(r.points, {{1, 0}});
    CHECK(r.error == Approx(1.0 / 3.0).epsilon(1e-15));
    r = interval_right_endpoint(2, 0, 1);
    check_points(r.points, {{1.0 / 3.0, 0}, {1, 0}});
    CHECK(r.error == Approx(1.0 / 27.0).epsilon(1e-15));
    CHECK_THROWS_AS(interval_right_endpoint(2, 2, 1), DomainError);
}

TEST_CASE("line constraint y = x + 4") {
    const LineConstraintScenario s{0, 1, 1, 4, {}, {}};
    const auto r = line_constraint_optimal(3, s);
    REQUIRE(r.points.size() == 3);
    for (int i = 1; i <= 3; ++i) {
        const double x = (2.0 * i - 1.0) / 12.0 - 2.0;
        CHECK(r.points[i - 1].x == Approx(x).epsilon(1e-14));
        CHECK(r.points[i - 1].y == Approx(x + 4.0).epsilon(1e-14));
    }
    const double v3 = (192.0 * 27 + 252.0 * 9 - 271.0 * 3 - 48) / (24.0 * 27);
    CHECK(r.error == Approx(v3).epsilon(1e-14));
    REQUIRE(r.printed_error);
    CHECK(*r.printed_error == Approx(v3).epsilon(1e-14));
}

TEST_CASE("line constraint y = x/4 + 1/4") {
    const LineConstraintScenario s{0, 1, 0.25, 0.25, {}, {}};
    const int n = 3;
    const auto r = line_constraint_optimal(n, s);
    for (int i = 1; i <= n; ++i) {
        CHECK(r.points[i - 1].x == Approx(-(-16.0 * i + n + 8) / (17.0 * n)).epsilon(1e-14));
    }
    const double v3 = (3.0 * 27 + 18.0 * 9 - 10.0 * 3 - 12) / (51.0 * 27);
    CHECK(r.error == Approx(v3).epsilon(1e-14));
}

TEST_CASE("line constraint on the support's own line is plain n-means") {
    const auto r = line_constraint_optimal(2, {0, 1, 0, 0, {}, {}});
    check_points(r.points, {{0.25, 0}, {0.75, 0}});
    CHECK(r.error == Approx(1.0 / 48.0).epsilon(1e-15));
}

TEST_CASE("line constraint window precondition") {
    CHECK_NOTHROW(line_constraint_optimal(3, {0, 1, 1, 4, -5.0, 5.0}));
    CHECK_THROWS_AS(line_constraint_optimal(3, {0, 1, 1, 4, -1.0, 5.0}), PreconditionError);
    CHECK_THROWS_AS(line_constraint_optimal(0, {0, 1, 1, 4, {}, {}}), DomainError);
}

TEST_CASE("printed line formula agrees at n = 2, 3 and falls below the line distance afterwards") {
    for (int n = 2; n <= 3; ++n) {
        const auto r = line_constraint_optimal(n, {0, 1, 1, 4, {}, {}});
        CHECK(rel_close(*r.printed_error, r.error, 1e-13));
    }
    // Mean squared distance from [0, 1] to y = x + 4 is a hard floor.
    const double floor = 61.0 / 6.0;
    for (int n = 4; n <= 20; ++n) {
        const auto r = line_constraint_optimal(n, {0, 1, 1, 4, {}, {}});
        CHECK(r.error > floor);
        CHECK(*r.printed_error < floor);
    }
}

TEST_CASE("semicircle errors") {
    CHECK(std::abs(semicircle_error(3, 2) - 0.476477) < 1e-5);
    CHECK(std::abs(semicircle_error(2, 3) - 0.251478) < 1e-5);
    CHECK(std::abs(semicircle_error(3, 3) - 0.154232) < 1e-5);
    CHECK_THROWS_AS(semicircle_error(1, 3), DomainError);
    CHECK_THROWS_AS(semicircle_error(3, 1), DomainError);
}

TEST_CASE("semicircle conditional sets") {
    auto r = semicircle_conditional(3, 2);
    check_points(r.points, {{-1, 0}, {1, 0}, {0, 1}}, 1e-15);
    CHECK(r.error == Approx(2.0 / (2.0 + kPi) * (-2.0 * std::sqrt(2.0) + 1.0 / 3.0 + kPi)).epsilon(1e-13));

    r = semicircle_conditional(4, 3);
    check_points(r.points, {{-1, 0}, {0, 0}, {1, 0}, {0, 1}}, 1e-15);
    CHECK(r.error == Approx((-24.0 * std::sqrt(2.0) + 12.0 * kPi + 1.0) / (12.0 + 6.0 * kPi)).epsilon(1e-13));

    // Three base points, four arc points: the arc interior sits at 60 and 120 degrees.
    r = semicircle_conditional(5, 3);
    check_points(r.points, {{-1, 0}, {0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}, {-0.5, std::sqrt(3.0) / 2}}, 1e-15);
    CHECK(r.allocation == std::vector<int>{3, 4});

    CHECK_THROWS_AS(semicircle_conditional(5, 1), DomainError);
    CHECK_THROWS_AS(semicircle_conditional(5, 6), DomainError);
    CHECK_THROWS_AS(semicircle_conditional(2, 2), DomainError);
}

TEST_CASE("small-angle branch of the arc error is continuous") {
    // Around n2 = 8 the angle pi/(2k) crosses the series threshold.
    for (int n2 = 2; n2 <= 40; ++n2) {
        const double k = n2 - 1.0;
        const double x = kPi / (2.0 * k);
        const double direct = 2.0 / (3.0 * (2.0 + kPi)) * (0.25 + 6.0 * k * (x - std::sin(x)));
        CHECK(rel_close(semicircle_error(3, n2), direct, 1e-9));
    }
}

TEST_CASE("triangle") {
    CHECK(triangle_error(2, 2, 2) == Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(std::abs(triangle_error(3, 2, 2) - 1.0 / 16.0) <= 1e-15);
    CHECK(std::abs(triangle_error(3, 3, 2) - 1.0 / 24.0) <= 1e-15);
    CHECK_THROWS_AS(triangle_error(1, 2, 2), DomainError);

    const double h = std::sqrt(3.0) / 2.0;
    auto r = triangle_conditional(4);
    check_points(r.points, {{0, 0}, {0.5, 0}, {1, 0}, {0.5, h}}, 1e-15);
    CHECK(r.error == Approx(1.0 / 16.0).epsilon(1e-15));

    r = triangle_conditional(5);
    CHECK(r.allocation == std::vector<int>{3, 3, 2});
    check_points(r.points, {{0, 0}, {0.5, 0}, {1, 0}, {0.75, h / 2}, {0.5, h}}, 1e-15);
    CHECK(r.error == Approx(1.0 / 24.0).epsilon(1e-15));

    r = triangle_conditional(6);
    CHECK(r.allocation == std::vector<int>{3, 3, 3});
    CHECK(r.error == Approx(1.0 / 48.0).epsilon(1e-15));
    CHECK_THROWS_AS(triangle_conditional(2), DomainError);
}

TEST_CASE("conditional line example") {
    CHECK_THROWS_AS(exam1_conditional(2), DomainError);
    const auto r = exam1_conditional(5);
    REQUIRE(r.points.size() == 6);
    CHECK(r.points[0].x == 0.0);
    CHECK(r.points[0].y == 0.0);
    for (std::size_t i = 1; i < r.points.size(); ++i) {
        CHECK(r.points[i].y == Approx(r.points[i].x / 4.0 + 0.25).epsilon(1e-15));
    }
    const double limit = (29.0 * std::sqrt(17.0) + 229.0) / 3072.0;
    CHECK(std::abs(printed::exam1_error(1000000) - limit) < 1e-5);
    CHECK(std::abs(limit - 0.1134668) < 1e-7);
}

TEST_CASE("conditional line example boundary balances the two nearest points") {
    for (int n = 3; n <= 30; ++n) {
        const auto r = exam1_conditional(n);
        const double d = exam1_boundary(n);
        CHECK(d > 0.0);
        CHECK(d < 1.0);
        const Point2 p{d, 0.0};
        CHECK(sq_dist(p, r.points[0]) == Approx(sq_dist(p, r.points[1])).epsilon(1e-12));
    }
}

TEST_CASE("property: closed forms equal the geometric distortion of their points") {
    for (int n = 1; n <= 30; ++n) {
        const auto left = interval_left_endpoint(n, -0.5, 2.0);
        CHECK(rel_close(distortion(unit_interval(-0.5, 2.0), left.points), left.error, 1e-10));
        const auto right = interval_right_endpoint(n, -0.5, 2.0);
        CHECK(rel_close(distortion(unit_interval(-0.5, 2.0), right.points), right.error, 1e-10));
        for (const auto& s : {LineConstraintScenario{0, 1, 1, 4, {}, {}}, LineConstraintScenario{0, 1, 0.25, 0.25, {}, {}},
                              LineConstraintScenario{-1, 2, -0.7, 0.3, {}, {}}}) {
            const auto r = line_constraint_optimal(n, s);
            CHECK(rel_close(distortion(unit_interval(s.a, s.b), r.points), r.error, 1e-10));
        }
        if (n >= 2) {
            const auto inner = interval_interior(n, {0, 3, 1, 2});
            // Contribution of the [c, d] block to the law on [a, b].
            CHECK(rel_close(distortion(unit_interval(1, 2), inner.points) / 3.0, inner.error, 1e-10));
        }
        if (n >= 3) {
            const auto semi = semicircle_conditional(n, semicircle_allocate(n).parts[0]);
            CHECK(rel_close(distortion(semicircle_problem(n).measure, semi.points), semi.error, 1e-10));
            const auto tri = triangle_conditional(n);
            CHECK(rel_close(distortion(triangle_problem(n).measure, tri.points), tri.error, 1e-10));
            const auto ex = exam1_conditional(n);
            CHECK(rel_close(distortion(unit_interval(), ex.points), ex.error, 1e-10));
        }
    }
}

TEST_CASE("property: every semicircle split is the sum of its two blocks") {
    // Base served by base points only, arc by arc points only, weighted by length.
    const double base_w = 2.0 / (2.0 + kPi);
    const double arc_w = kPi / (2.0 + kPi);
    const UniformCurveMeasure base({Curve::segment({-1, 0}, {1, 0})});
    const UniformCurveMeasure arc({Curve::arc({0, 0}, 1.0, 0.0, kPi)});
    const auto whole = semicircle_problem(3).measure;
    for (int n = 3; n <= 14; ++n) {
        for (int n1 = 2; n1 <= n; ++n1) {
            const auto r = semicircle_conditional(n, n1);
            REQUIRE(r.points.size() == static_cast<std::size_t>(n));
            std::vector<Point2> on_base(r.points.begin(), r.points.begin() + n1);
            std::vector<Point2> on_arc{{1, 0}};
            on_arc.insert(on_arc.end(), r.points.begin() + n1, r.points.end());
            on_arc.push_back({-1, 0});
            const double blocks = base_w * distortion(base, on_base) + arc_w * distortion(arc, on_arc);
            CHECK(rel_close(blocks, r.error, 1e-10));
            // Letting points serve across components can only help.
            CHECK(distortion(whole, r.points) <= r.error * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("property: left and right endpoint forms mirror each other") {
    for (int n = 1; n <= 50; ++n) {
        const auto l = interval_left_endpoint(n, -1.0, 3.0);
        const auto r = interval_right_endpoint(n, -1.0, 3.0);
        CHECK(l.error == r.error);
        for (int j = 0; j < n; ++j) {
            CHECK(l.points[j].x + r.points[n - 1 - j].x == Approx(2.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("property: translation changes the line error by the squared offset only") {
    // Shifting the support along the x-axis with the line kept parallel.
    for (int n = 1; n <= 20; ++n) {
        const auto base = line_constraint_optimal(n, {0, 1, 0, 0.5, {}, {}});
        const auto moved = line_constraint_optimal(n, {3, 4, 0, 0.5, {}, {}});
        CHECK(base.error == Approx(moved.error).epsilon(1e-13));
        for (int i = 0; i < n; ++i) CHECK(moved.points[i].x - base.points[i].x == Approx(3.0).epsilon(1e-13));
    }
}

TEST_CASE("property: cardinality and monotonicity") {
    double prev_semi = INFINITY;
    double prev_tri = INFINITY;
    double prev_ex = INFINITY;
    for (int n = 3; n <= 100; ++n) {
        const auto semi = semicircle_conditional(n, semicircle_allocate(n).parts[0]);
        const auto tri = triangle_conditional(n);
        const auto ex = exam1_conditional(n);
        CHECK(semi.points.size() == static_cast<std::size_t>(n));
        CHECK(tri.points.size() == static_cast<std::size_t>(n));
        CHECK(ex.points.size() == static_cast<std::size_t>(n + 1));
        CHECK(semi.error <= prev_semi);
        CHECK(tri.error <= prev_tri);
        CHECK(ex.error < prev_ex);
        prev_semi = semi.error;
        prev_tri = tri.error;
        prev_ex = ex.error;
        CHECK(interval_left_endpoint(n, 0, 1).error < interval_left_endpoint(n - 1, 0, 1).error);
    }
}

TEST_CASE("property: conditional errors sit between unconstrained errors") {
    // n-means of [0, 1] has error 1/(12 n^2).
    for (int n = 2; n <= 200; ++n) {
        const double cond = interval_left_endpoint(n, 0, 1).error;
        CHECK(1.0 / (12.0 * n * n) < cond);
        CHECK(cond < 1.0 / (12.0 * (n - 1.0) * (n - 1.0)));
    }
}
