#include "cquant/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "cquant/errors.hpp"

namespace cquant {

Problem semicircle_problem(int n) {
    const Curve base = Curve::segment({-1.0, 0.0}, {1.0, 0.0});
    const Curve arc = Curve::arc({0.0, 0.0}, 1.0, 0.0, std::numbers::pi);
    return {UniformCurveMeasure({base, arc}),
            {CurveConstraint{base}, CurveConstraint{arc}},
            {{-1.0, 0.0}, {1.0, 0.0}},
            n};
}

Problem triangle_problem(int n, bool on_sides) {
    const Point2 a{0.0, 0.0};
    const Point2 b{1.0, 0.0};
    const Point2 c{0.5, std::sqrt(3.0) / 2.0};
    const std::vector<Curve> sides{Curve::segment(a, b), Curve::segment(b, c), Curve::segment(c, a)};
    std::vector<ConstraintSet> constraints{FreePlane{}};
    if (on_sides) {
        constraints.clear();
        for (const auto& side : sides) constraints.push_back(CurveConstraint{side});
    }
    return {UniformCurveMeasure(sides), constraints, {a, b, c}, n};
}

Problem interval_problem(double a, double b, std::vector<double> beta_x, int n) {
    std::vector<Point2> beta;
    for (double x : beta_x) beta.push_back({x, 0.0});
    return {UniformCurveMeasure({Curve::segment({a, 0.0}, {b, 0.0})}), {FreePlane{}}, beta, n};
}

Problem line_problem(int n, const LineConstraintScenario& scen) {
    if (!(scen.a < scen.b)) throw DomainError("line problem needs a < b");
    const double m = scen.slope;
    const double c = scen.intercept;
    double lo = 0.0;
    double hi = 0.0;
    if (scen.window_lo && scen.window_hi) {
        lo = *scen.window_lo;
        hi = *scen.window_hi;
    } else {
        const double norm = 1.0 + m * m;
        lo = (scen.a - m * c) / norm - (scen.b - scen.a);
        hi = (scen.b - m * c) / norm + (scen.b - scen.a);
    }
    const Curve line = Curve::segment({lo, m * lo + c}, {hi, m * hi + c});
    return {UniformCurveMeasure({Curve::segment({scen.a, 0.0}, {scen.b, 0.0})}),
            {CurveConstraint{line}},
            {},
            n};
}

namespace {

Problem unit_with_line(int n, double m, double c) {
    Problem p = line_problem(n, {0.0, 1.0, m, c, std::nullopt, std::nullopt});
    p.beta = {{0.0, 0.0}};
    return p;
}

}  // namespace

Problem exam1_problem(int n) { return unit_with_line(n, 0.25, 0.25); }

Problem exam2_problem(int n) { return unit_with_line(n, 1.0, 4.0); }

Problem remark54_problem(int n) {
    Problem p = interval_problem(0.0, 1.0, {}, n);
    p.beta = {{0.0, 0.01}};
    return p;
}

}  // namespace cquant
